#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "mmtc/rng.hpp"
#include "mmtc/scenario.hpp"

namespace mmtc::qos {

// Barring probabilities d are optimized through x = -ln(1 - d), which maps the
// box [d_min, d_max] to [x_min, x_max] and makes the utility concave in x.
inline double barring_to_x(double d) { return -std::log1p(-d); }
inline double x_to_barring(double x) { return -std::expm1(-x); }

struct PolicyBounds {
    double d_min = 0.1;
    double d_max = 0.9;
    double x_min() const { return barring_to_x(d_min); }
    double x_max() const { return barring_to_x(d_max); }
};

struct BarringPolicy {
    PolicyBounds bounds;
    std::vector<double> x; // one entry per (device, class), device-major

    double barring(int i) const { return x_to_barring(x[static_cast<std::size_t>(i)]); }

    static BarringPolicy from_class_barring(const Scenario& sc, std::span<const double> d_per_class);
    static BarringPolicy from_scenario(const Scenario& sc); // policy.fixed_d
    static BarringPolicy constant_x(const Scenario& sc, double x_value);
    static BarringPolicy random_interior(const Scenario& sc, Rng& rng);
};

// ---- pointwise building blocks ----

// Stationary idle probability of a queue under its QoS exponent,
// theta * mean packet size clamped into [0, 1].
double idle_prob_approx(double theta, double mean_packet_bits);

// Probability the queue transmits in a superframe: barred coin d, all higher
// priority queues of the device idle, itself backlogged.
double attempt_prob(double d, std::span<const double> idle_higher, double idle_self);

// Probability the attempt picks a preamble nobody else picks. activation_others
// holds D_l for every other device; preambles is M.
double success_prob(double attempt, std::span<const double> activation_others, int preambles);

// E[e^{-theta * r(snr) * S}] over unit-mean exponential channel power.
// theta = 0 gives 1; result always lies in (0, 1].
double fading_expectation(double theta, double symbols, double error_prob, double snr_mean);

// Per-superframe service MGF deficit for one queue, composed from its parts.
double phi_from_parts(double fading_exp, double error_prob, std::span<const double> idle_higher,
                      double idle_self, double contention_others);

// C = -log(1 - d * phi) / (theta * T); requires d * phi < 1.
double effective_capacity_from_phi(double d, double phi, double theta, double ec_time_s);

// Tail bounds at the operating exponent theta_star.
double queue_violation_prob(double theta_star, double queue_threshold_bits, double idle_prob);
double delay_violation_prob(double theta_star, double eff_bandwidth, double delay_bound_s,
                            double idle_prob);

// ---- scenario-level analysis ----

struct AccessState {
    std::vector<double> attempt;    // per queue: P_a
    std::vector<double> success;    // per queue: F_s (access success, no decoding factor)
    std::vector<double> activation; // per device: D_n = sum_k P_a
    std::vector<double> contention; // per device: prod_{l != n} (1 - D_l / M)
};

// Caches everything that does not depend on the barring policy: idle
// probabilities at the configured exponents, priority prefix products, and the
// fading expectation per queue. Policy-dependent quantities are evaluated in
// O(N K) per call.
class Analysis {
public:
    explicit Analysis(const Scenario& sc);

    const Scenario& scenario() const { return *sc_; }

    // Replace analytic idle probabilities with measured ones (same layout).
    void set_idle_probs(std::vector<double> idle);

    double idle_prob(int device, int cls) const;
    double idle_prefix(int device, int cls) const; // prod over higher-priority classes
    double fading_exp(int device, int cls) const;

    AccessState access_state(const BarringPolicy& policy) const;
    void phi_all(const BarringPolicy& policy, std::vector<double>& out) const;
    double phi(int device, int cls, const BarringPolicy& policy) const;

    double effective_capacity(int device, int cls, const BarringPolicy& policy) const;
    double total_effective_capacity(const BarringPolicy& policy) const;

    // Single queue with an overridden exponent or transmit power; the idle
    // probabilities stay pinned at the configured exponents so that the
    // contention environment is fixed while solving.
    double effective_capacity_at(int device, int cls, const BarringPolicy& policy, double theta,
                                 double tx_power_w) const;
    double effective_bandwidth_at(int cls, double theta) const;

private:
    const Scenario* sc_;
    std::vector<double> idle_;        // N*K
    std::vector<double> idle_prefix_; // N*K
    std::vector<double> fading_;      // N*K
    void rebuild_prefixes();
};

// Minimum transmit power (bisection on [power_lo_w, power_hi_w]) for which the
// queue's effective capacity reaches its effective bandwidth. at_floor is set
// when the constraint already holds at power_lo_w.
struct PowerSolution {
    double power_w;
    bool at_floor;
};
PowerSolution solve_power(const Analysis& analysis, int device, int cls,
                          const BarringPolicy& policy, double power_lo_w = 1e-6,
                          double power_hi_w = 10.0, double rel_tol = 1e-6, int max_iter = 200);

// Operating exponent theta* solving A(theta) = C(theta) for one queue.
// theta_hi = 0 selects 0.99 / mean packet size.
double solve_qos_exponent(const Analysis& analysis, int device, int cls,
                          const BarringPolicy& policy, double theta_lo = 1e-8,
                          double theta_hi = 0.0, double rel_tol = 1e-6, int max_iter = 200);

} // namespace mmtc::qos
