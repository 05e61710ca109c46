#include "mmtc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmtc/errors.hpp"
#include "mmtc/rng.hpp"

namespace mmtc::baseline {

OptimResult pso_optimize(const Objective& objective, std::size_t dim,
                         const qos::PolicyBounds& bounds, const PsoConfig& cfg) {
    if (dim == 0) throw std::invalid_argument("pso_optimize: dimension must be >= 1");
    if (cfg.swarm_size < 1 || cfg.iterations < 0)
        throw std::invalid_argument("pso_optimize: bad swarm configuration");

    const double lo = bounds.x_min(), hi = bounds.x_max();
    const double range = hi - lo;
    Rng rng(cfg.seed);

    const std::size_t swarm = static_cast<std::size_t>(cfg.swarm_size);
    std::vector<std::vector<double>> pos(swarm, std::vector<double>(dim));
    std::vector<std::vector<double>> vel(swarm, std::vector<double>(dim));
    std::vector<std::vector<double>> pbest_x(swarm);
    std::vector<double> pbest(swarm);

    OptimResult out;
    out.objective = -std::numeric_limits<double>::infinity();

    for (std::size_t p = 0; p < swarm; ++p) {
        for (std::size_t j = 0; j < dim; ++j) {
            pos[p][j] = lo + range * rng.uniform();
            vel[p][j] = range * (2.0 * rng.uniform() - 1.0);
        }
        pbest[p] = objective(pos[p]);
        pbest_x[p] = pos[p];
        if (pbest[p] > out.objective) {
            out.objective = pbest[p];
            out.x = pos[p];
        }
    }
    out.best_trajectory.push_back(out.objective);

    for (int it = 0; it < cfg.iterations; ++it) {
        for (std::size_t p = 0; p < swarm; ++p) {
            for (std::size_t j = 0; j < dim; ++j) {
                double r1 = rng.uniform(), r2 = rng.uniform();
                vel[p][j] = cfg.inertia * vel[p][j] +
                            cfg.cognitive * r1 * (pbest_x[p][j] - pos[p][j]) +
                            cfg.social * r2 * (out.x[j] - pos[p][j]);
                pos[p][j] += vel[p][j];
                if (pos[p][j] < lo) { pos[p][j] = lo; vel[p][j] = 0.0; }
                if (pos[p][j] > hi) { pos[p][j] = hi; vel[p][j] = 0.0; }
            }
            double value = objective(pos[p]);
            if (value > pbest[p]) {
                pbest[p] = value;
                pbest_x[p] = pos[p];
                if (value > out.objective) {
                    out.objective = value;
                    out.x = pos[p];
                }
            }
        }
        out.best_trajectory.push_back(out.objective);
    }
    return out;
}

OptimResult grid_search(const Objective& objective, std::size_t dim,
                        const qos::PolicyBounds& bounds, int resolution) {
    if (dim == 0 || dim > 4)
        throw ConfigError("grid_search: exhaustive search is limited to 1..4 dimensions");
    if (resolution < 2) throw std::invalid_argument("grid_search: resolution must be >= 2");

    const double lo = bounds.x_min(), hi = bounds.x_max();
    std::vector<double> levels(static_cast<std::size_t>(resolution));
    for (int j = 0; j < resolution; ++j)
        levels[static_cast<std::size_t>(j)] =
            lo + (hi - lo) * static_cast<double>(j) / (resolution - 1);

    OptimResult out;
    out.objective = -std::numeric_limits<double>::infinity();

    std::vector<int> index(dim, 0);
    std::vector<double> x(dim, levels[0]);
    for (;;) {
        double value = objective(x);
        if (value > out.objective) {
            out.objective = value;
            out.x = x;
        }
        std::size_t axis = 0;
        while (axis < dim) {
            if (++index[axis] < resolution) {
                x[axis] = levels[static_cast<std::size_t>(index[axis])];
                break;
            }
            index[axis] = 0;
            x[axis] = levels[0];
            ++axis;
        }
        if (axis == dim) break;
    }
    out.best_trajectory.push_back(out.objective);
    return out;
}

namespace {

Objective capacity_objective(const qos::Analysis& analysis) {
    const Scenario& sc = analysis.scenario();
    qos::BarringPolicy policy;
    policy.bounds = {sc.config().policy.d_min, sc.config().policy.d_max};
    policy.x.resize(static_cast<std::size_t>(sc.total_queues()));
    return [&analysis, policy](std::span<const double> x) mutable {
        std::copy(x.begin(), x.end(), policy.x.begin());
        return analysis.total_effective_capacity(policy);
    };
}

} // namespace

OptimResult pso_optimize(const qos::Analysis& analysis, const PsoConfig& cfg) {
    return pso_optimize(capacity_objective(analysis),
                        static_cast<std::size_t>(analysis.scenario().total_queues()),
                        {analysis.scenario().config().policy.d_min,
                         analysis.scenario().config().policy.d_max},
                        cfg);
}

OptimResult grid_search(const qos::Analysis& analysis, int resolution) {
    return grid_search(capacity_objective(analysis),
                       static_cast<std::size_t>(analysis.scenario().total_queues()),
                       {analysis.scenario().config().policy.d_min,
                        analysis.scenario().config().policy.d_max},
                       resolution);
}

} // namespace mmtc::baseline
