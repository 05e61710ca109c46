#pragma once

#include <cstdint>
#include <functional>

#include "mmtc/qos.hpp"

namespace mmtc::baseline {

using Objective = std::function<double(std::span<const double>)>;

struct PsoConfig {
    int swarm_size = 40;
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    int iterations = 300;
    std::uint64_t seed = 1;
};

struct OptimResult {
    std::vector<double> x;
    double objective = 0.0;
    std::vector<double> best_trajectory; // global best after each iteration
};

// Global-best particle swarm over the box [x_min, x_max]^dim, maximizing.
OptimResult pso_optimize(const Objective& objective, std::size_t dim,
                         const qos::PolicyBounds& bounds, const PsoConfig& cfg);

// Exhaustive tensor grid, resolution points per axis. Guarded to dim <= 4;
// this is the oracle the heuristics are benchmarked against.
OptimResult grid_search(const Objective& objective, std::size_t dim,
                        const qos::PolicyBounds& bounds, int resolution);

// Convenience wrappers with the summed effective capacity as the objective.
OptimResult pso_optimize(const qos::Analysis& analysis, const PsoConfig& cfg);
OptimResult grid_search(const qos::Analysis& analysis, int resolution);

} // namespace mmtc::baseline
