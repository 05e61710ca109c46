#include "mmtc/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace mmtc::pricing {

PricingConfig PricingConfig::from_scenario(const Scenario& sc) {
    PricingConfig cfg;
    cfg.rho0 = sc.config().pricing.rho0;
    cfg.tolerance = sc.config().pricing.tolerance;
    cfg.max_iterations = sc.config().pricing.max_iterations;
    return cfg;
}

std::vector<double> price_gradient(const qos::Analysis& analysis,
                                   const qos::BarringPolicy& policy) {
    const Scenario& sc = analysis.scenario();
    qos::AccessState st = analysis.access_state(policy);
    std::vector<double> phis;
    analysis.phi_all(policy, phis);

    const double t_ec = sc.ec_time_s();
    const double m = sc.preambles();

    // weight of queue (m, b) in everyone else's loss: (1/theta) dPhi / (1 - dPhi)
    std::vector<double> device_weight(static_cast<std::size_t>(sc.devices()), 0.0);
    double total_weight = 0.0;
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            double d_phi = policy.barring(static_cast<int>(i)) * phis[i];
            double w = d_phi / ((1.0 - d_phi) * sc.theta(k));
            device_weight[static_cast<std::size_t>(n)] += w;
            total_weight += w;
        }

    std::vector<double> grad(phis.size());
    for (int n = 0; n < sc.devices(); ++n) {
        double own_term = 1.0 - st.activation[static_cast<std::size_t>(n)] / m;
        for (int k = 0; k < sc.classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            double slope = std::exp(-policy.x[i]) * analysis.idle_prefix(n, k) *
                           (1.0 - analysis.idle_prob(n, k));
            grad[i] = slope / (m * own_term * t_ec) *
                      (total_weight - device_weight[static_cast<std::size_t>(n)]);
        }
    }
    return grad;
}

double price_gradient(const qos::Analysis& analysis, const qos::BarringPolicy& policy,
                      int device, int cls) {
    std::vector<double> g = price_gradient(analysis, policy);
    return g[static_cast<std::size_t>(analysis.scenario().idx(device, cls))];
}

PriceState price_step(PriceState state, double rho, std::span<const double> gradient) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::domain_error("price_step: rho outside [0, 1]");
    if (gradient.size() != state.price.size())
        throw std::invalid_argument("price_step: gradient size mismatch");
    for (std::size_t i = 0; i < state.price.size(); ++i)
        state.price[i] = (1.0 - rho) * state.price[i] + rho * gradient[i];
    state.step += 1;
    return state;
}

PriceOutcome run_algorithm2(const qos::Analysis& analysis, const game::GameConfig& game_cfg,
                            const PricingConfig& pricing_cfg, const qos::BarringPolicy& initial) {
    const Scenario& sc = analysis.scenario();
    if (static_cast<int>(initial.x.size()) != sc.total_queues())
        throw std::invalid_argument("run_algorithm2: policy size must match scenario");

    PriceOutcome out;
    qos::BarringPolicy policy = initial;
    const double x_lo = policy.bounds.x_min(), x_hi = policy.bounds.x_max();
    for (double& v : policy.x) v = std::clamp(v, x_lo, x_hi);

    out.price.price = pricing_cfg.initial_price ? *pricing_cfg.initial_price
                                                : price_gradient(analysis, policy);
    if (out.price.price.size() != policy.x.size())
        throw std::invalid_argument("run_algorithm2: initial price size mismatch");

    auto sup_diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        double mx = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
        return mx;
    };
    auto kkt = [&](const std::vector<double>& price, const std::vector<double>& grad) {
        double mx = 0.0;
        for (std::size_t i = 0; i < price.size(); ++i)
            mx = std::max(mx, std::abs(price[i] - grad[i]));
        return mx;
    };

    game::GameConfig round_cfg = game_cfg;
    round_cfg.price = out.price.price;

    // Long runs (the 1/t damping needs many iterations) would otherwise hoard
    // a full per-iteration history; keep every early iteration, then a sparse
    // grid of later ones, plus always the final one.
    auto should_record = [](int t) {
        if (t <= 100) return true;
        int stride = 10;
        for (int limit = 1000; t >= limit && stride < (1 << 28); limit *= 10) stride *= 10;
        return t % stride == 0;
    };
    auto record = [&](int t) {
        out.recorded_iterations.push_back(t);
        out.game.trajectory.push_back(policy.x);
        out.price_trajectory.push_back(out.price.price);
        out.total_capacity_trajectory.push_back(analysis.total_effective_capacity(policy));
        out.kkt_residual_trajectory.push_back(
            kkt(out.price.price, price_gradient(analysis, policy)));
    };
    record(0);

    for (int t = 1; t <= pricing_cfg.max_iterations; ++t) {
        double rho = pricing_cfg.rho0 / (1.0 + out.price.step);
        std::vector<double> grad = price_gradient(analysis, policy);
        out.price = price_step(std::move(out.price), rho, grad);
        round_cfg.price = out.price.price;

        std::vector<double> next = game::best_response_round(analysis, round_cfg, policy);
        double delta = sup_diff(next, policy.x);
        policy.x = std::move(next);
        out.game.iterations = t;

        bool stop = delta <= pricing_cfg.tolerance || t == pricing_cfg.max_iterations;
        if (stop || should_record(t)) record(t);
        if (delta <= pricing_cfg.tolerance) {
            out.game.converged = true;
            break;
        }
    }

    out.game.policy = policy;
    std::vector<double> probe = game::best_response_round(analysis, round_cfg, policy);
    double residual = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i)
        residual = std::max(residual, std::abs(probe[i] - policy.x[i]));
    out.game.br_residual = residual;

    out.game.utilities.resize(static_cast<std::size_t>(sc.devices()));
    for (int n = 0; n < sc.devices(); ++n)
        out.game.utilities[static_cast<std::size_t>(n)] =
            game::utility(analysis, n, policy, out.price.price);

    std::vector<double> final_grad = price_gradient(analysis, policy);
    out.kkt_residual = kkt(out.price.price, final_grad);
    double scale = 1.0;
    for (double g : final_grad) scale = std::max(scale, std::abs(g));
    out.kkt_residual_normalized = out.kkt_residual / scale;

    return out;
}

} // namespace mmtc::pricing
