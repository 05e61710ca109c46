#pragma once

#include <optional>

#include "mmtc/game.hpp"

namespace mmtc::pricing {

struct PricingConfig {
    double rho0 = 0.5; // step rho_t = rho0 / (1 + t), t = 0, 1, ...
    double tolerance = 1e-6;
    int max_iterations = 500;
    std::optional<std::vector<double>> initial_price; // default: gradient at the initial policy

    static PricingConfig from_scenario(const Scenario& sc);
};

struct PriceState {
    std::vector<double> price;
    int step = 0;
};

// Marginal externality of queue (n, k): the total capacity every other device
// loses per unit of additional x_{n,k}. Setting price = gradient makes the
// game's equilibrium condition match the social optimum's first-order one.
std::vector<double> price_gradient(const qos::Analysis& analysis,
                                   const qos::BarringPolicy& policy);
double price_gradient(const qos::Analysis& analysis, const qos::BarringPolicy& policy,
                      int device, int cls);

// One damped update: price <- (1 - rho) * price + rho * gradient.
PriceState price_step(PriceState state, double rho, std::span<const double> gradient);

struct PriceOutcome {
    game::GameOutcome game;
    PriceState price;
    // Trajectories are thinned on long runs: entry j belongs to iteration
    // recorded_iterations[j]. Iteration 0 and the final one are always kept.
    std::vector<int> recorded_iterations;
    std::vector<std::vector<double>> price_trajectory; // aligned with game.trajectory
    std::vector<double> total_capacity_trajectory;
    std::vector<double> kkt_residual_trajectory;
    double kkt_residual = 0.0;            // sup |price - gradient| at the final point
    double kkt_residual_normalized = 0.0; // relative to the gradient scale
};

// Alternates one damped price update with one synchronous best-response round
// until the policy stops moving.
PriceOutcome run_algorithm2(const qos::Analysis& analysis, const game::GameConfig& game_cfg,
                            const PricingConfig& pricing_cfg, const qos::BarringPolicy& initial);

} // namespace mmtc::pricing
