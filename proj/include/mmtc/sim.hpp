#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "mmtc/qos.hpp"
#include "mmtc/rng.hpp"
#include "mmtc/scenario.hpp"

namespace mmtc::sim {

// Winners are the choices nobody duplicated. choices[i] in [0, preambles).
std::vector<bool> resolve_preamble_contention(std::span<const int> choices, int preambles);

// Exponentially weighted estimate of the per-superframe transmission success
// probability; one observation per superframe (1 = delivered an ACK).
class SuccessProbEstimator {
public:
    explicit SuccessProbEstimator(double weight = 0.01);
    void observe(bool success);
    std::optional<double> estimate() const; // empty before the first observation
    std::int64_t observations() const { return count_; }

private:
    double weight_;
    double value_ = 0.0;
    std::int64_t count_ = 0;
};

struct Histogram {
    double bin_width = 1.0;
    std::vector<std::uint64_t> counts; // last bin absorbs overflow
    std::uint64_t total = 0;

    Histogram() = default;
    Histogram(double width, int bins);
    void add(double value);
    void merge(const Histogram& other);
    double bin_lower(std::size_t i) const { return bin_width * static_cast<double>(i); }
    // P(value > bin upper edge), from the counted samples
    double tail_above(std::size_t i) const;
};

struct QueueStats {
    std::uint64_t gated = 0;            // queue made the access decision for its device
    std::uint64_t attempts = 0;         // passed the barring coin, sent a preamble
    std::uint64_t collisions = 0;
    std::uint64_t access_successes = 0; // sole occupant of its preamble
    std::uint64_t ack_successes = 0;    // won the preamble and decoded
    std::uint64_t idle_frames = 0;      // empty at the decision instant
    double arrived_bits = 0.0;
    double served_bits = 0.0;
    std::uint64_t packets_arrived = 0;
    std::uint64_t packets_completed = 0;
    double delay_sum_s = 0.0;
    double queue_sum_bits = 0.0;
    Histogram queue_hist;
    Histogram delay_hist;
    std::optional<double> success_estimate;
};

struct SimStats {
    std::int64_t superframes = 0; // counted frames
    std::vector<QueueStats> queue;
    void merge(const SimStats& other); // pools counters, averages estimates
};

struct AccessEvent {
    int device = 0;
    int cls = 0;
    int preamble = -1;
    bool won = false;
    bool decoded = false;
    double gain = 0.0;
    double capacity_bits = 0.0;
    double drained_bits = 0.0;
};

struct SuperframeEvents {
    std::vector<AccessEvent> events; // one per attempt, device order
    double arrived_bits = 0.0;
};

// Superframe loop: access decisions and service use the queue state at the
// frame start; the frame's own arrivals are appended afterwards and become
// visible at the next decision instant. Collided or barred devices simply
// retry at the next frame, head-of-line packets are never dropped.
class SimState {
public:
    SimState(const Scenario& sc, const qos::BarringPolicy& policy, std::uint64_t seed);

    SuperframeEvents step_superframe();
    void set_counting(bool on) { counting_ = on; }

    const SimStats& stats() const { return stats_; }
    std::int64_t frame_index() const { return frame_; }
    double backlog_bits(int queue_index) const;
    const Scenario& scenario() const { return *sc_; }

private:
    struct Packet {
        double arrival_s;
        double remaining_bits;
    };

    const Scenario* sc_;
    qos::BarringPolicy policy_;
    bool forced_backlog_;
    bool counting_ = false;
    std::int64_t frame_ = 0;

    Rng arrival_rng_, barring_rng_, preamble_rng_, decode_rng_, fading_rng_;

    std::vector<std::deque<Packet>> packets_; // per queue
    std::vector<double> backlog_;             // per queue, bits
    std::vector<SuccessProbEstimator> estimator_;
    SimStats stats_;
};

// One replication with the scenario's warmup fraction applied.
SimStats run_simulation(const Scenario& sc, const qos::BarringPolicy& policy,
                        std::int64_t horizon, std::uint64_t seed);

} // namespace mmtc::sim
