#include "mmtc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmtc/phy.hpp"
#include "mmtc/traffic.hpp"

namespace mmtc::sim {

std::vector<bool> resolve_preamble_contention(std::span<const int> choices, int preambles) {
    if (preambles < 1) throw std::domain_error("resolve_preamble_contention: preambles must be >= 1");
    std::vector<int> occupancy(static_cast<std::size_t>(preambles), 0);
    for (int c : choices) {
        if (c < 0 || c >= preambles)
            throw std::domain_error("resolve_preamble_contention: choice out of range");
        ++occupancy[static_cast<std::size_t>(c)];
    }
    std::vector<bool> winners(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i)
        winners[i] = occupancy[static_cast<std::size_t>(choices[i])] == 1;
    return winners;
}

SuccessProbEstimator::SuccessProbEstimator(double weight) : weight_(weight) {
    if (!(weight > 0.0 && weight <= 1.0))
        throw std::domain_error("SuccessProbEstimator: weight outside (0, 1]");
}

void SuccessProbEstimator::observe(bool success) {
    double ind = success ? 1.0 : 0.0;
    value_ = count_ == 0 ? ind : (1.0 - weight_) * value_ + weight_ * ind;
    ++count_;
}

std::optional<double> SuccessProbEstimator::estimate() const {
    if (count_ == 0) return std::nullopt;
    return value_;
}

Histogram::Histogram(double width, int bins) : bin_width(width) {
    if (!(width > 0.0) || bins < 1) throw std::domain_error("Histogram: bad shape");
    counts.assign(static_cast<std::size_t>(bins), 0);
}

void Histogram::add(double value) {
    if (counts.empty()) return;
    auto bin = static_cast<std::size_t>(std::max(0.0, value) / bin_width);
    if (bin >= counts.size()) bin = counts.size() - 1;
    ++counts[bin];
    ++total;
}

void Histogram::merge(const Histogram& other) {
    if (counts.empty()) {
        *this = other;
        return;
    }
    if (other.counts.empty()) return;
    if (other.counts.size() != counts.size() || other.bin_width != bin_width)
        throw std::invalid_argument("Histogram::merge: shape mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
}

double Histogram::tail_above(std::size_t i) const {
    if (total == 0) return 0.0;
    std::uint64_t above = 0;
    for (std::size_t j = i + 1; j < counts.size(); ++j) above += counts[j];
    return static_cast<double>(above) / static_cast<double>(total);
}

void SimStats::merge(const SimStats& other) {
    if (queue.empty()) {
        *this = other;
        return;
    }
    if (other.queue.size() != queue.size())
        throw std::invalid_argument("SimStats::merge: queue layout mismatch");
    for (std::size_t i = 0; i < queue.size(); ++i) {
        QueueStats& a = queue[i];
        const QueueStats& b = other.queue[i];
        a.gated += b.gated;
        a.attempts += b.attempts;
        a.collisions += b.collisions;
        a.access_successes += b.access_successes;
        a.ack_successes += b.ack_successes;
        a.idle_frames += b.idle_frames;
        a.arrived_bits += b.arrived_bits;
        a.served_bits += b.served_bits;
        a.packets_arrived += b.packets_arrived;
        a.packets_completed += b.packets_completed;
        a.delay_sum_s += b.delay_sum_s;
        a.queue_sum_bits += b.queue_sum_bits;
        a.queue_hist.merge(b.queue_hist);
        a.delay_hist.merge(b.delay_hist);
        if (b.success_estimate) {
            if (!a.success_estimate) {
                a.success_estimate = b.success_estimate;
            } else {
                // replication-weighted mean; replications share a horizon
                double wa = static_cast<double>(superframes);
                double wb = static_cast<double>(other.superframes);
                a.success_estimate =
                    (*a.success_estimate * wa + *b.success_estimate * wb) / (wa + wb);
            }
        }
    }
    superframes += other.superframes;
}

SimState::SimState(const Scenario& sc, const qos::BarringPolicy& policy, std::uint64_t seed)
    : sc_(&sc),
      policy_(policy),
      forced_backlog_(sc.config().sim.forced_backlog),
      arrival_rng_(derive_seed(seed, stream::arrivals)),
      barring_rng_(derive_seed(seed, stream::barring)),
      preamble_rng_(derive_seed(seed, stream::preamble)),
      decode_rng_(derive_seed(seed, stream::decoding)),
      fading_rng_(derive_seed(seed, stream::fading)) {
    if (static_cast<int>(policy_.x.size()) != sc.total_queues())
        throw std::invalid_argument("SimState: policy size must match scenario");
    const auto queues = static_cast<std::size_t>(sc.total_queues());
    packets_.resize(queues);
    backlog_.assign(queues, 0.0);
    estimator_.assign(queues, SuccessProbEstimator(sc.config().sim.ema_weight));
    stats_.queue.resize(queues);
    for (auto& q : stats_.queue) {
        q.queue_hist = Histogram(sc.config().sim.queue_hist_bin_bits,
                                 sc.config().sim.queue_hist_bins);
        q.delay_hist = Histogram(sc.config().sim.delay_hist_bin_s,
                                 sc.config().sim.delay_hist_bins);
    }
}

double SimState::backlog_bits(int queue_index) const {
    return backlog_[static_cast<std::size_t>(queue_index)];
}

SuperframeEvents SimState::step_superframe() {
    const Scenario& sc = *sc_;
    const int n_dev = sc.devices(), n_cls = sc.classes(), m = sc.preambles();
    SuperframeEvents frame;

    if (counting_) {
        ++stats_.superframes;
        for (std::size_t i = 0; i < backlog_.size(); ++i) {
            QueueStats& q = stats_.queue[i];
            if (!forced_backlog_ && packets_[i].empty()) ++q.idle_frames;
            q.queue_sum_bits += backlog_[i];
            q.queue_hist.add(backlog_[i]);
        }
    }

    // access decisions on the state at the frame start
    std::vector<int> contender_queue; // queue index per attempt
    std::vector<int> choices;
    for (int n = 0; n < n_dev; ++n) {
        int gating = -1;
        for (int k = 0; k < n_cls; ++k) {
            if (forced_backlog_ || !packets_[static_cast<std::size_t>(sc.idx(n, k))].empty()) {
                gating = k;
                break;
            }
        }
        if (gating < 0) continue;
        std::size_t i = static_cast<std::size_t>(sc.idx(n, gating));
        if (counting_) ++stats_.queue[i].gated;
        if (!barring_rng_.bernoulli(policy_.barring(static_cast<int>(i)))) continue;
        contender_queue.push_back(static_cast<int>(i));
        choices.push_back(preamble_rng_.uniform_int(m));
    }

    std::vector<bool> winners = resolve_preamble_contention(choices, m);

    std::vector<bool> acked(backlog_.size(), false);
    for (std::size_t a = 0; a < contender_queue.size(); ++a) {
        std::size_t i = static_cast<std::size_t>(contender_queue[a]);
        int n = static_cast<int>(i) / n_cls;
        int k = static_cast<int>(i) % n_cls;

        AccessEvent ev;
        ev.device = n;
        ev.cls = k;
        ev.preamble = choices[a];
        ev.won = winners[a];

        if (counting_) {
            ++stats_.queue[i].attempts;
            if (!ev.won) ++stats_.queue[i].collisions;
        }

        if (ev.won) {
            if (counting_) ++stats_.queue[i].access_successes;
            ev.gain = phy::ChannelModel::sample_power_gain(fading_rng_);
            double rate = phy::finite_blocklength_rate(sc.snr_mean(n) * ev.gain, sc.symbols(),
                                                       sc.error_prob(k));
            ev.capacity_bits = rate * sc.symbols();
            ev.decoded = decode_rng_.bernoulli(1.0 - sc.error_prob(k));
            if (ev.decoded) {
                acked[i] = true;
                if (counting_) ++stats_.queue[i].ack_successes;
                if (!forced_backlog_) {
                    double drain = std::min(backlog_[i], ev.capacity_bits);
                    ev.drained_bits = drain;
                    backlog_[i] -= drain;
                    if (counting_) stats_.queue[i].served_bits += drain;
                    double now = static_cast<double>(frame_ + 1) * sc.config().system.superframe_s;
                    double left = drain;
                    auto& fifo = packets_[i];
                    while (left > 0.0 && !fifo.empty()) {
                        Packet& head = fifo.front();
                        if (head.remaining_bits <= left) {
                            left -= head.remaining_bits;
                            if (counting_) {
                                ++stats_.queue[i].packets_completed;
                                stats_.queue[i].delay_sum_s += now - head.arrival_s;
                                stats_.queue[i].delay_hist.add(now - head.arrival_s);
                            }
                            fifo.pop_front();
                        } else {
                            head.remaining_bits -= left;
                            left = 0.0;
                        }
                    }
                }
            }
        }
        frame.events.push_back(ev);
    }

    if (counting_) {
        for (std::size_t i = 0; i < backlog_.size(); ++i) {
            estimator_[i].observe(acked[i]);
            stats_.queue[i].success_estimate = estimator_[i].estimate();
        }
    }

    // this frame's arrivals, visible from the next decision instant
    if (!forced_backlog_) {
        const double t0 = static_cast<double>(frame_) * sc.config().system.superframe_s;
        const double slot = sc.config().system.slot_s;
        for (int n = 0; n < n_dev; ++n)
            for (int k = 0; k < n_cls; ++k) {
                std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
                for (int s = 0; s < sc.slots_per_superframe(); ++s) {
                    double bits = traffic::sample_arrival(arrival_rng_, sc.arrival_prob(),
                                                          sc.mean_packet_bits(k));
                    if (bits <= 0.0) continue;
                    packets_[i].push_back({t0 + (s + 1) * slot, bits});
                    backlog_[i] += bits;
                    frame.arrived_bits += bits;
                    if (counting_) {
                        stats_.queue[i].arrived_bits += bits;
                        ++stats_.queue[i].packets_arrived;
                    }
                }
            }
    }

    ++frame_;
    return frame;
}

SimStats run_simulation(const Scenario& sc, const qos::BarringPolicy& policy,
                        std::int64_t horizon, std::uint64_t seed) {
    if (horizon < 1) throw std::invalid_argument("run_simulation: horizon must be >= 1");
    SimState state(sc, policy, seed);
    const auto warmup =
        static_cast<std::int64_t>(std::floor(sc.config().sim.warmup_fraction *
                                             static_cast<double>(horizon)));
    for (std::int64_t t = 0; t < warmup; ++t) state.step_superframe();
    state.set_counting(true);
    for (std::int64_t t = warmup; t < horizon; ++t) state.step_superframe();
    return state.stats();
}

} // namespace mmtc::sim
