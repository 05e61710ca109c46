#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mmtc/qos.hpp"

namespace mmtc::game {

struct GameConfig {
    std::vector<double> price;     // per queue
    double tolerance = 1e-6;       // sup-norm stop threshold
    double safeguard_delta = 1e-3; // second-round monotonicity nudge
    int max_iterations = 500;
    InfoMode info_mode = InfoMode::full;

    static GameConfig from_scenario(const Scenario& sc);
};

struct GameOutcome {
    qos::BarringPolicy policy;
    std::vector<std::vector<double>> trajectory; // x after each round, index 0 = initial
    std::vector<double> utilities;               // per device, at the final policy
    double br_residual = 0.0;                    // sup-norm of x - BR(x) at the end
    bool converged = false;
    int iterations = 0;
};

// Player utility: sum over the device's queues of capacity minus price * x.
double utility(const qos::Analysis& analysis, int device, const qos::BarringPolicy& policy,
               std::span<const double> price);

// d utility / d x at x, given the queue's phi. Positive at x_min and negative
// at x_max bracket an interior best response.
double utility_gradient(double x, double phi, double price, double theta, double ec_time_s);

// Unique maximizer of the concave per-queue utility over [x_min, x_max].
double best_response(double phi, double price, double theta, double ec_time_s,
                     const qos::PolicyBounds& bounds);

// phi recovered from quantities a device can observe on its own: its barring
// transform, an estimate of its transmission success probability, and its
// fading expectation. Requires x_self > 0.
double phi_distributed(double x_self, double success_prob_estimate, double fading_exp);

// Supplies per-queue transmission success probabilities ((1 - eps) * F_s or a
// measured stand-in) for the distributed information mode.
using SuccessEstimator =
    std::function<std::vector<double>(const qos::BarringPolicy&)>;

// One synchronous round of best responses for every queue.
std::vector<double> best_response_round(const qos::Analysis& analysis, const GameConfig& cfg,
                                        const qos::BarringPolicy& policy,
                                        const SuccessEstimator& estimator = {});

// Synchronous best-response iteration with a second-round safeguard that keeps
// the per-coordinate trajectories monotone, preserving the convergence
// argument for the supermodular structure.
GameOutcome run_algorithm1(const qos::Analysis& analysis, const GameConfig& cfg,
                           const qos::BarringPolicy& initial,
                           const SuccessEstimator& estimator = {});

} // namespace mmtc::game
