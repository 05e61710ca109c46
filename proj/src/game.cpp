#include "mmtc/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmtc::game {

GameConfig GameConfig::from_scenario(const Scenario& sc) {
    GameConfig cfg;
    cfg.price.assign(static_cast<std::size_t>(sc.total_queues()), sc.config().game.price);
    cfg.tolerance = sc.config().game.tolerance;
    cfg.safeguard_delta = sc.config().game.safeguard_delta;
    cfg.max_iterations = sc.config().game.max_iterations;
    cfg.info_mode = sc.config().game.info_mode;
    return cfg;
}

double utility(const qos::Analysis& analysis, int device, const qos::BarringPolicy& policy,
               std::span<const double> price) {
    const Scenario& sc = analysis.scenario();
    std::vector<double> phis;
    analysis.phi_all(policy, phis);
    double u = 0.0;
    for (int k = 0; k < sc.classes(); ++k) {
        std::size_t i = static_cast<std::size_t>(sc.idx(device, k));
        u += qos::effective_capacity_from_phi(policy.barring(static_cast<int>(i)), phis[i],
                                              sc.theta(k), sc.ec_time_s());
        u -= price[i] * policy.x[i];
    }
    return u;
}

double utility_gradient(double x, double phi, double price, double theta, double ec_time_s) {
    if (!(theta > 0.0 && ec_time_s > 0.0))
        throw std::domain_error("utility_gradient: theta and normalization time must be > 0");
    if (!(phi >= 0.0 && phi < 1.0)) throw std::domain_error("utility_gradient: phi outside [0, 1)");
    double ex = std::exp(-x);
    double d_phi = (1.0 - ex) * phi;
    return ex * phi / (theta * ec_time_s * (1.0 - d_phi)) - price;
}

double best_response(double phi, double price, double theta, double ec_time_s,
                     const qos::PolicyBounds& bounds) {
    if (!(theta > 0.0 && ec_time_s > 0.0))
        throw std::domain_error("best_response: theta and normalization time must be > 0");
    if (!(phi >= 0.0 && phi < 1.0)) throw std::domain_error("best_response: phi outside [0, 1)");
    if (!(price >= 0.0)) throw std::domain_error("best_response: price must be >= 0");

    if (phi == 0.0) return bounds.x_min(); // no service benefit, pay nothing
    double ltt = price * theta * ec_time_s;
    if (ltt >= 1.0) return bounds.x_min(); // marginal price dominates everywhere
    if (ltt <= 0.0) return bounds.x_max(); // free access, open fully

    // Stationary point of the concave utility: e^-x phi / (thetaT (1 - d phi)) = lambda.
    double x = std::log(1.0 / ltt - 1.0) - std::log(1.0 / phi - 1.0);
    return std::clamp(x, bounds.x_min(), bounds.x_max());
}

double phi_distributed(double x_self, double success_prob_estimate, double fading_exp) {
    if (!(x_self > 0.0)) throw std::domain_error("phi_distributed: x must be > 0");
    if (!(success_prob_estimate >= 0.0 && success_prob_estimate <= 1.0))
        throw std::domain_error("phi_distributed: success probability outside [0, 1]");
    if (!(fading_exp > 0.0 && fading_exp <= 1.0))
        throw std::domain_error("phi_distributed: fading expectation outside (0, 1]");
    double phi = (1.0 - fading_exp) * success_prob_estimate / -std::expm1(-x_self);
    // measured estimates can be noisy; keep the result inside the valid domain
    return std::clamp(phi, 0.0, 1.0 - 1e-12);
}

namespace {

std::vector<double> success_estimates(const qos::Analysis& analysis,
                                      const qos::BarringPolicy& policy) {
    const Scenario& sc = analysis.scenario();
    qos::AccessState st = analysis.access_state(policy);
    std::vector<double> f(st.success.size());
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            f[i] = (1.0 - sc.error_prob(k)) * st.success[i];
        }
    return f;
}

std::vector<double> phis_for_mode(const qos::Analysis& analysis, const GameConfig& cfg,
                                  const qos::BarringPolicy& policy,
                                  const SuccessEstimator& estimator) {
    const Scenario& sc = analysis.scenario();
    std::vector<double> phis;
    if (cfg.info_mode == InfoMode::full) {
        analysis.phi_all(policy, phis);
        return phis;
    }
    std::vector<double> f =
        estimator ? estimator(policy) : success_estimates(analysis, policy);
    if (f.size() != policy.x.size())
        throw std::invalid_argument("success estimator returned wrong number of queues");
    phis.resize(f.size());
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            phis[i] = phi_distributed(policy.x[i], f[i], analysis.fading_exp(n, k));
        }
    return phis;
}

} // namespace

std::vector<double> best_response_round(const qos::Analysis& analysis, const GameConfig& cfg,
                                        const qos::BarringPolicy& policy,
                                        const SuccessEstimator& estimator) {
    const Scenario& sc = analysis.scenario();
    std::vector<double> phis = phis_for_mode(analysis, cfg, policy, estimator);
    std::vector<double> next(policy.x.size());
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            next[i] = best_response(phis[i], cfg.price[i], sc.theta(k), sc.ec_time_s(),
                                    policy.bounds);
        }
    return next;
}

GameOutcome run_algorithm1(const qos::Analysis& analysis, const GameConfig& cfg,
                           const qos::BarringPolicy& initial, const SuccessEstimator& estimator) {
    const Scenario& sc = analysis.scenario();
    if (cfg.price.size() != initial.x.size() ||
        static_cast<int>(initial.x.size()) != sc.total_queues())
        throw std::invalid_argument("run_algorithm1: price/policy size must match scenario");

    GameOutcome out;
    out.policy = initial;
    const double x_lo = initial.bounds.x_min(), x_hi = initial.bounds.x_max();
    for (double& v : out.policy.x) v = std::clamp(v, x_lo, x_hi);

    const std::vector<double> x0 = out.policy.x;
    out.trajectory.push_back(x0);

    auto sup_diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    };

    for (int round = 1; round <= cfg.max_iterations; ++round) {
        std::vector<double> next = best_response_round(analysis, cfg, out.policy, estimator);

        if (round == 2) {
            // Nudge coordinates whose best response fell back to (or past) the
            // starting point, so each coordinate trajectory stays strictly
            // monotone in the direction of its first move.
            const std::vector<double>& x1 = out.trajectory[1];
            for (std::size_t i = 0; i < next.size(); ++i) {
                if (next[i] == x0[i]) continue; // already settled
                if (x1[i] >= x0[i]) {
                    if (next[i] < x0[i]) next[i] = std::min(x0[i] + cfg.safeguard_delta, x_hi);
                } else {
                    if (next[i] > x0[i]) next[i] = std::max(x0[i] - cfg.safeguard_delta, x_lo);
                }
            }
        }

        double delta = sup_diff(next, out.policy.x);
        out.policy.x = std::move(next);
        out.trajectory.push_back(out.policy.x);
        out.iterations = round;
        if (delta <= cfg.tolerance) {
            out.converged = true;
            break;
        }
    }

    std::vector<double> probe = best_response_round(analysis, cfg, out.policy, estimator);
    out.br_residual = sup_diff(probe, out.policy.x);

    out.utilities.resize(static_cast<std::size_t>(sc.devices()));
    for (int n = 0; n < sc.devices(); ++n)
        out.utilities[static_cast<std::size_t>(n)] = utility(analysis, n, out.policy, cfg.price);

    return out;
}

} // namespace mmtc::game
