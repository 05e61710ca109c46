#include "mmtc/qos.hpp"

#include <algorithm>
#include <stdexcept>

#include "mmtc/errors.hpp"
#include "mmtc/phy.hpp"
#include "mmtc/quadrature.hpp"
#include "mmtc/traffic.hpp"

namespace mmtc::qos {

BarringPolicy BarringPolicy::from_class_barring(const Scenario& sc,
                                                std::span<const double> d_per_class) {
    if (static_cast<int>(d_per_class.size()) != sc.classes())
        throw std::invalid_argument("from_class_barring: one barring factor per class expected");
    BarringPolicy p;
    p.bounds = {sc.config().policy.d_min, sc.config().policy.d_max};
    p.x.reserve(static_cast<std::size_t>(sc.total_queues()));
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k)
            p.x.push_back(barring_to_x(d_per_class[static_cast<std::size_t>(k)]));
    return p;
}

BarringPolicy BarringPolicy::from_scenario(const Scenario& sc) {
    return from_class_barring(sc, sc.config().policy.fixed_d);
}

BarringPolicy BarringPolicy::constant_x(const Scenario& sc, double x_value) {
    BarringPolicy p;
    p.bounds = {sc.config().policy.d_min, sc.config().policy.d_max};
    p.x.assign(static_cast<std::size_t>(sc.total_queues()), x_value);
    return p;
}

BarringPolicy BarringPolicy::random_interior(const Scenario& sc, Rng& rng) {
    BarringPolicy p;
    p.bounds = {sc.config().policy.d_min, sc.config().policy.d_max};
    p.x.reserve(static_cast<std::size_t>(sc.total_queues()));
    const double lo = p.bounds.x_min(), hi = p.bounds.x_max();
    for (int i = 0; i < sc.total_queues(); ++i)
        p.x.push_back(lo + (hi - lo) * rng.uniform());
    return p;
}

double idle_prob_approx(double theta, double mean_packet_bits) {
    if (!(theta >= 0.0) || !(mean_packet_bits > 0.0))
        throw std::domain_error("idle_prob_approx: theta >= 0 and mean packet size > 0 required");
    return std::clamp(theta * mean_packet_bits, 0.0, 1.0);
}

double attempt_prob(double d, std::span<const double> idle_higher, double idle_self) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::domain_error("attempt_prob: d outside [0, 1]");
    if (!(idle_self >= 0.0 && idle_self <= 1.0))
        throw std::domain_error("attempt_prob: idle probability outside [0, 1]");
    double p = d * (1.0 - idle_self);
    for (double q : idle_higher) {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::domain_error("attempt_prob: idle probability outside [0, 1]");
        p *= q;
    }
    return p;
}

double success_prob(double attempt, std::span<const double> activation_others, int preambles) {
    if (preambles < 1) throw std::domain_error("success_prob: at least one preamble required");
    if (!(attempt >= 0.0 && attempt <= 1.0))
        throw std::domain_error("success_prob: attempt probability outside [0, 1]");
    double s = attempt;
    for (double d : activation_others) {
        double frac = d / preambles;
        if (!(frac >= 0.0 && frac <= 1.0))
            throw std::domain_error("success_prob: activation / preambles outside [0, 1]");
        s *= 1.0 - frac;
    }
    return s;
}

double fading_expectation(double theta, double symbols, double error_prob, double snr_mean) {
    if (!(theta >= 0.0)) throw std::domain_error("fading_expectation: theta must be >= 0");
    if (!(snr_mean >= 0.0)) throw std::domain_error("fading_expectation: snr must be >= 0");
    if (theta == 0.0 || snr_mean == 0.0) return 1.0;

    auto raw = [&](double h) {
        return phy::finite_blocklength_rate_raw(snr_mean * h, symbols, error_prob);
    };

    // The clamped rate is zero on [0, h0] and positive beyond; splitting the
    // integral there keeps the quadrature on the smooth branch. The raw rate
    // is unimodal with raw(0) = 0, so h0 is the unique positive root.
    double h0 = 0.0;
    if (phy::q_inv(error_prob) > 0.0) {
        double hi = 1.0;
        while (raw(hi) <= 0.0 && hi < 1e12) hi *= 2.0;
        if (raw(hi) <= 0.0) return 1.0; // rate never positive at reachable gains
        double lo = 0.0;
        for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            (raw(mid) > 0.0 ? hi : lo) = mid;
        }
        h0 = hi;
    }

    const auto& rule = quad::gauss_laguerre_64();
    double tail = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double h = h0 + rule.nodes[i];
        double r = phy::finite_blocklength_rate(snr_mean * h, symbols, error_prob);
        tail += rule.weights[i] * std::exp(-theta * r * symbols);
    }
    double value = -std::expm1(-h0) + std::exp(-h0) * tail;
    return std::min(value, 1.0);
}

double phi_from_parts(double fading_exp, double error_prob, std::span<const double> idle_higher,
                      double idle_self, double contention_others) {
    if (!(fading_exp > 0.0 && fading_exp <= 1.0))
        throw std::domain_error("phi_from_parts: fading expectation outside (0, 1]");
    if (!(error_prob > 0.0 && error_prob < 1.0))
        throw std::domain_error("phi_from_parts: error probability outside (0, 1)");
    if (!(idle_self >= 0.0 && idle_self <= 1.0) ||
        !(contention_others >= 0.0 && contention_others <= 1.0))
        throw std::domain_error("phi_from_parts: probabilities outside [0, 1]");
    double prefix = 1.0;
    for (double q : idle_higher) {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::domain_error("phi_from_parts: idle probability outside [0, 1]");
        prefix *= q;
    }
    return (1.0 - fading_exp) * (1.0 - error_prob) * prefix * (1.0 - idle_self) *
           contention_others;
}

double effective_capacity_from_phi(double d, double phi, double theta, double ec_time_s) {
    if (!(theta > 0.0 && ec_time_s > 0.0))
        throw std::domain_error("effective_capacity: theta and normalization time must be > 0");
    if (!(d >= 0.0 && d <= 1.0)) throw std::domain_error("effective_capacity: d outside [0, 1]");
    if (!(phi >= 0.0 && phi < 1.0))
        throw std::domain_error("effective_capacity: phi outside [0, 1)");
    return -std::log1p(-d * phi) / (theta * ec_time_s);
}

double queue_violation_prob(double theta_star, double queue_threshold_bits, double idle_prob) {
    if (!(theta_star > 0.0) || !(queue_threshold_bits >= 0.0))
        throw std::domain_error("queue_violation_prob: bad arguments");
    return (1.0 - idle_prob) * std::exp(-theta_star * queue_threshold_bits);
}

double delay_violation_prob(double theta_star, double eff_bandwidth, double delay_bound_s,
                            double idle_prob) {
    if (!(theta_star > 0.0) || !(eff_bandwidth >= 0.0) || !(delay_bound_s >= 0.0))
        throw std::domain_error("delay_violation_prob: bad arguments");
    return (1.0 - idle_prob) * std::exp(-theta_star * eff_bandwidth * delay_bound_s);
}

Analysis::Analysis(const Scenario& sc) : sc_(&sc) {
    const int n_dev = sc.devices(), n_cls = sc.classes();
    idle_.resize(static_cast<std::size_t>(n_dev * n_cls));
    fading_.resize(idle_.size());
    for (int n = 0; n < n_dev; ++n) {
        for (int k = 0; k < n_cls; ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            idle_[i] = idle_prob_approx(sc.theta(k), sc.mean_packet_bits(k));
            fading_[i] =
                fading_expectation(sc.theta(k), sc.symbols(), sc.error_prob(k), sc.snr_mean(n));
        }
    }
    rebuild_prefixes();
}

void Analysis::rebuild_prefixes() {
    idle_prefix_.assign(idle_.size(), 1.0);
    for (int n = 0; n < sc_->devices(); ++n) {
        double prod = 1.0;
        for (int k = 0; k < sc_->classes(); ++k) {
            idle_prefix_[static_cast<std::size_t>(sc_->idx(n, k))] = prod;
            prod *= idle_[static_cast<std::size_t>(sc_->idx(n, k))];
        }
    }
}

void Analysis::set_idle_probs(std::vector<double> idle) {
    if (idle.size() != idle_.size())
        throw std::invalid_argument("set_idle_probs: size must match device*class layout");
    for (double v : idle)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("set_idle_probs: probabilities must lie in [0, 1]");
    idle_ = std::move(idle);
    rebuild_prefixes();
}

double Analysis::idle_prob(int device, int cls) const {
    return idle_[static_cast<std::size_t>(sc_->idx(device, cls))];
}
double Analysis::idle_prefix(int device, int cls) const {
    return idle_prefix_[static_cast<std::size_t>(sc_->idx(device, cls))];
}
double Analysis::fading_exp(int device, int cls) const {
    return fading_[static_cast<std::size_t>(sc_->idx(device, cls))];
}

AccessState Analysis::access_state(const BarringPolicy& policy) const {
    const int n_dev = sc_->devices(), n_cls = sc_->classes();
    if (policy.x.size() != idle_.size())
        throw std::invalid_argument("access_state: policy size must match scenario");

    AccessState st;
    st.attempt.resize(idle_.size());
    st.activation.assign(static_cast<std::size_t>(n_dev), 0.0);
    for (int n = 0; n < n_dev; ++n) {
        for (int k = 0; k < n_cls; ++k) {
            std::size_t i = static_cast<std::size_t>(sc_->idx(n, k));
            st.attempt[i] = policy.barring(static_cast<int>(i)) * idle_prefix_[i] * (1.0 - idle_[i]);
            st.activation[static_cast<std::size_t>(n)] += st.attempt[i];
        }
    }

    // contention[n] = prod_{l != n} (1 - D_l / M), via prefix/suffix products
    const double m = sc_->preambles();
    std::vector<double> term(static_cast<std::size_t>(n_dev));
    for (int n = 0; n < n_dev; ++n)
        term[static_cast<std::size_t>(n)] = 1.0 - st.activation[static_cast<std::size_t>(n)] / m;
    st.contention.assign(static_cast<std::size_t>(n_dev), 1.0);
    double acc = 1.0;
    for (int n = 0; n < n_dev; ++n) {
        st.contention[static_cast<std::size_t>(n)] = acc;
        acc *= term[static_cast<std::size_t>(n)];
    }
    acc = 1.0;
    for (int n = n_dev - 1; n >= 0; --n) {
        st.contention[static_cast<std::size_t>(n)] *= acc;
        acc *= term[static_cast<std::size_t>(n)];
    }

    st.success.resize(idle_.size());
    for (int n = 0; n < n_dev; ++n)
        for (int k = 0; k < n_cls; ++k) {
            std::size_t i = static_cast<std::size_t>(sc_->idx(n, k));
            st.success[i] = st.attempt[i] * st.contention[static_cast<std::size_t>(n)];
        }
    return st;
}

void Analysis::phi_all(const BarringPolicy& policy, std::vector<double>& out) const {
    AccessState st = access_state(policy);
    out.resize(idle_.size());
    for (int n = 0; n < sc_->devices(); ++n)
        for (int k = 0; k < sc_->classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc_->idx(n, k));
            out[i] = (1.0 - fading_[i]) * (1.0 - sc_->error_prob(k)) * idle_prefix_[i] *
                     (1.0 - idle_[i]) * st.contention[static_cast<std::size_t>(n)];
        }
}

double Analysis::phi(int device, int cls, const BarringPolicy& policy) const {
    AccessState st = access_state(policy);
    std::size_t i = static_cast<std::size_t>(sc_->idx(device, cls));
    return (1.0 - fading_[i]) * (1.0 - sc_->error_prob(cls)) * idle_prefix_[i] *
           (1.0 - idle_[i]) * st.contention[static_cast<std::size_t>(device)];
}

double Analysis::effective_capacity(int device, int cls, const BarringPolicy& policy) const {
    std::size_t i = static_cast<std::size_t>(sc_->idx(device, cls));
    return effective_capacity_from_phi(policy.barring(static_cast<int>(i)),
                                       phi(device, cls, policy), sc_->theta(cls),
                                       sc_->ec_time_s());
}

double Analysis::total_effective_capacity(const BarringPolicy& policy) const {
    std::vector<double> phis;
    phi_all(policy, phis);
    double total = 0.0;
    for (int n = 0; n < sc_->devices(); ++n)
        for (int k = 0; k < sc_->classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc_->idx(n, k));
            total += effective_capacity_from_phi(policy.barring(static_cast<int>(i)), phis[i],
                                                 sc_->theta(k), sc_->ec_time_s());
        }
    return total;
}

double Analysis::effective_capacity_at(int device, int cls, const BarringPolicy& policy,
                                       double theta, double tx_power_w) const {
    AccessState st = access_state(policy);
    std::size_t i = static_cast<std::size_t>(sc_->idx(device, cls));
    double fading = fading_expectation(theta, sc_->symbols(), sc_->error_prob(cls),
                                       sc_->snr_mean_at(device, tx_power_w));
    double phi_v = (1.0 - fading) * (1.0 - sc_->error_prob(cls)) * idle_prefix_[i] *
                   (1.0 - idle_[i]) * st.contention[static_cast<std::size_t>(device)];
    return effective_capacity_from_phi(policy.barring(static_cast<int>(i)), phi_v, theta,
                                       sc_->ec_time_s());
}

double Analysis::effective_bandwidth_at(int cls, double theta) const {
    return traffic::effective_bandwidth(theta, sc_->arrival_prob(), sc_->mean_packet_bits(cls),
                                        sc_->config().system.slot_s);
}

PowerSolution solve_power(const Analysis& analysis, int device, int cls,
                          const BarringPolicy& policy, double power_lo_w, double power_hi_w,
                          double rel_tol, int max_iter) {
    if (!(power_lo_w > 0.0 && power_lo_w < power_hi_w))
        throw std::invalid_argument("solve_power: need 0 < power_lo < power_hi");
    const Scenario& sc = analysis.scenario();
    const double theta = sc.theta(cls);
    const double demand = analysis.effective_bandwidth_at(cls, theta);

    auto gap = [&](double p_w) {
        return analysis.effective_capacity_at(device, cls, policy, theta, p_w) - demand;
    };

    if (gap(power_lo_w) >= 0.0) return {power_lo_w, true};
    if (gap(power_hi_w) < 0.0)
        throw InfeasibleQosError(
            "solve_power: capacity below effective bandwidth across the whole power range");

    // demand > 0 here; demand == 0 already returned through the floor branch.
    double lo = power_lo_w, hi = power_hi_w;
    for (int it = 0; it < max_iter && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double g = gap(mid);
        if (std::abs(g) <= rel_tol * demand) return {mid, false};
        (g >= 0.0 ? hi : lo) = mid;
    }
    return {hi, false};
}

double solve_qos_exponent(const Analysis& analysis, int device, int cls,
                          const BarringPolicy& policy, double theta_lo, double theta_hi,
                          double rel_tol, int max_iter) {
    const Scenario& sc = analysis.scenario();
    if (theta_hi <= 0.0) theta_hi = 0.99 / sc.mean_packet_bits(cls);
    if (!(theta_lo > 0.0 && theta_lo < theta_hi))
        throw std::invalid_argument("solve_qos_exponent: need 0 < theta_lo < theta_hi");

    // A - C is increasing in theta: arrivals stiffen, service slackens. The
    // idle probabilities stay pinned at the configured exponents so the
    // contention environment does not move underneath the root search.
    auto demand_at = [&](double th) { return analysis.effective_bandwidth_at(cls, th); };
    auto capacity_at = [&](double th) {
        return analysis.effective_capacity_at(device, cls, policy, th, sc.tx_power_w());
    };

    if (demand_at(theta_lo) - capacity_at(theta_lo) > 0.0)
        throw NoCrossingError(
            "solve_qos_exponent: arrivals exceed capacity already at the smallest exponent "
            "(queue unstable)");
    if (demand_at(theta_hi) - capacity_at(theta_hi) < 0.0)
        throw NoCrossingError(
            "solve_qos_exponent: capacity exceeds arrivals across the whole exponent range "
            "(no tail crossing below the MGF domain edge)");

    double lo = theta_lo, hi = theta_hi;
    for (int it = 0; it < max_iter && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double a = demand_at(mid);
        double g = a - capacity_at(mid);
        if (std::abs(g) <= rel_tol * a) return mid;
        (g >= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace mmtc::qos
