#include "mmtc/commands.hpp"

#include <cmath>

#include "mmtc/baseline.hpp"
#include "mmtc/csv.hpp"
#include "mmtc/errors.hpp"
#include "mmtc/game.hpp"
#include "mmtc/parallel.hpp"
#include "mmtc/pricing.hpp"
#include "mmtc/qos.hpp"
#include "mmtc/sim.hpp"

namespace mmtc::commands {

namespace {

void stamp(csv::Writer& w, const Scenario& sc) {
    w.comment("seed=" + std::to_string(sc.seed()) + " config=" + sc.config_hash());
}

qos::BarringPolicy initial_policy(const Scenario& sc) {
    if (sc.config().game.initial == InitialPolicy::random) {
        Rng rng(derive_seed(sc.seed(), stream::game_init));
        return qos::BarringPolicy::random_interior(sc, rng);
    }
    qos::PolicyBounds bounds{sc.config().policy.d_min, sc.config().policy.d_max};
    double x0 = sc.config().game.initial == InitialPolicy::x_max ? bounds.x_max() : bounds.x_min();
    return qos::BarringPolicy::constant_x(sc, x0);
}

std::vector<double> utilities_from_phis(const Scenario& sc, const std::vector<double>& phis,
                                        const qos::BarringPolicy& policy,
                                        std::span<const double> price) {
    std::vector<double> u(static_cast<std::size_t>(sc.devices()), 0.0);
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k) {
            std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
            u[static_cast<std::size_t>(n)] +=
                qos::effective_capacity_from_phi(policy.barring(static_cast<int>(i)), phis[i],
                                                 sc.theta(k), sc.ec_time_s()) -
                price[i] * policy.x[i];
        }
    return u;
}

} // namespace

int capacity_sweep(const Scenario& sc, const CapacitySweepSpec& spec, std::ostream& out) {
    if (spec.preambles.empty() || spec.bandwidths_hz.empty())
        throw ConfigError("capacity_sweep: preamble and bandwidth lists must be non-empty");
    for (int m : spec.preambles)
        if (m < 1) throw ConfigError("capacity_sweep: preamble counts must be >= 1");
    for (double b : spec.bandwidths_hz)
        if (!(b > 0)) throw ConfigError("capacity_sweep: bandwidths must be > 0");

    struct Point {
        int m;
        double b;
        std::vector<double> mean_ec; // per class
    };
    std::vector<Point> grid;
    for (int m : spec.preambles)
        for (double b : spec.bandwidths_hz) grid.push_back({m, b, {}});

    parallel_for(grid.size(), [&](std::size_t g) {
        ScenarioConfig cfg = sc.config();
        cfg.system.preambles = grid[g].m;
        cfg.system.bandwidth_hz = grid[g].b;
        Scenario local(cfg);
        qos::Analysis analysis(local);
        qos::BarringPolicy policy = qos::BarringPolicy::from_scenario(local);
        std::vector<double> phis;
        analysis.phi_all(policy, phis);
        grid[g].mean_ec.assign(static_cast<std::size_t>(local.classes()), 0.0);
        for (int n = 0; n < local.devices(); ++n)
            for (int k = 0; k < local.classes(); ++k) {
                std::size_t i = static_cast<std::size_t>(local.idx(n, k));
                grid[g].mean_ec[static_cast<std::size_t>(k)] +=
                    qos::effective_capacity_from_phi(policy.barring(static_cast<int>(i)),
                                                     phis[i], local.theta(k),
                                                     local.ec_time_s());
            }
        for (double& v : grid[g].mean_ec) v /= local.devices();
    });

    csv::Writer w(out);
    stamp(w, sc);
    w.row({"preambles", "bandwidth_hz", "class", "mean_effective_capacity_bps"});
    for (const Point& p : grid)
        for (int k = 0; k < sc.classes(); ++k)
            w.row({p.m, p.b, k + 1, p.mean_ec[static_cast<std::size_t>(k)]});
    return exit_code::ok;
}

int qos_sweep(const Scenario& sc, const QosSweepSpec& spec, std::ostream& out) {
    if (spec.exponents.empty()) throw ConfigError("qos_sweep: exponent list must be non-empty");
    if (spec.class_index < 0 || spec.class_index >= sc.classes())
        throw ConfigError("qos_sweep: class index out of range");
    const double packet = sc.mean_packet_bits(spec.class_index);
    for (double th : spec.exponents) {
        if (!(th > 0)) throw ConfigError("qos_sweep: exponents must be > 0");
        if (!(th * packet < 1.0))
            throw ConfigError("qos_sweep: exponent * mean packet size must stay < 1");
    }

    std::vector<std::vector<double>> means(spec.exponents.size());
    parallel_for(spec.exponents.size(), [&](std::size_t g) {
        ScenarioConfig cfg = sc.config();
        cfg.traffic.qos_exponent[static_cast<std::size_t>(spec.class_index)] = spec.exponents[g];
        Scenario local(cfg);
        qos::Analysis analysis(local);
        qos::BarringPolicy policy = qos::BarringPolicy::from_scenario(local);
        std::vector<double> phis;
        analysis.phi_all(policy, phis);
        means[g].assign(static_cast<std::size_t>(local.classes()), 0.0);
        for (int n = 0; n < local.devices(); ++n)
            for (int k = 0; k < local.classes(); ++k) {
                std::size_t i = static_cast<std::size_t>(local.idx(n, k));
                means[g][static_cast<std::size_t>(k)] +=
                    qos::effective_capacity_from_phi(policy.barring(static_cast<int>(i)),
                                                     phis[i], local.theta(k),
                                                     local.ec_time_s());
            }
        for (double& v : means[g]) v /= local.devices();
    });

    csv::Writer w(out);
    stamp(w, sc);
    w.row({"qos_exponent", "class", "mean_effective_capacity_bps"});
    for (std::size_t g = 0; g < spec.exponents.size(); ++g)
        for (int k = 0; k < sc.classes(); ++k)
            w.row({spec.exponents[g], k + 1, means[g][static_cast<std::size_t>(k)]});
    return exit_code::ok;
}

int game(const Scenario& sc, std::ostream& out) {
    qos::Analysis analysis(sc);
    game::GameConfig cfg = game::GameConfig::from_scenario(sc);
    game::GameOutcome outcome = game::run_algorithm1(analysis, cfg, initial_policy(sc));

    csv::Writer w(out);
    stamp(w, sc);
    w.row({"iteration", "device", "class", "x", "barring", "utility"});
    qos::BarringPolicy policy = outcome.policy;
    std::vector<double> phis;
    for (std::size_t it = 0; it < outcome.trajectory.size(); ++it) {
        policy.x = outcome.trajectory[it];
        analysis.phi_all(policy, phis);
        std::vector<double> util = utilities_from_phis(sc, phis, policy, cfg.price);
        for (int n = 0; n < sc.devices(); ++n)
            for (int k = 0; k < sc.classes(); ++k) {
                std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
                w.row({static_cast<std::int64_t>(it), n, k + 1, policy.x[i],
                       policy.barring(static_cast<int>(i)), util[static_cast<std::size_t>(n)]});
            }
    }
    return outcome.converged ? exit_code::ok : exit_code::no_convergence;
}

int price(const Scenario& sc, std::ostream& out) {
    qos::Analysis analysis(sc);
    game::GameConfig gcfg = game::GameConfig::from_scenario(sc);
    pricing::PricingConfig pcfg = pricing::PricingConfig::from_scenario(sc);
    pricing::PriceOutcome outcome =
        pricing::run_algorithm2(analysis, gcfg, pcfg, initial_policy(sc));

    csv::Writer w(out);
    stamp(w, sc);
    w.row({"iteration", "device", "class", "x", "price", "total_effective_capacity_bps",
           "kkt_residual"});
    for (std::size_t it = 0; it < outcome.game.trajectory.size(); ++it) {
        const std::vector<double>& x = outcome.game.trajectory[it];
        const std::vector<double>& price = outcome.price_trajectory[it];
        for (int n = 0; n < sc.devices(); ++n)
            for (int k = 0; k < sc.classes(); ++k) {
                std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
                w.row({outcome.recorded_iterations[it], n, k + 1, x[i], price[i],
                       outcome.total_capacity_trajectory[it],
                       outcome.kkt_residual_trajectory[it]});
            }
    }
    return outcome.game.converged ? exit_code::ok : exit_code::no_convergence;
}

int compare(const Scenario& sc, std::ostream& out) {
    qos::Analysis analysis(sc);

    csv::Writer w(out);
    stamp(w, sc);
    w.row({"method", "total_effective_capacity_bps", "converged", "iterations"});

    qos::BarringPolicy fixed = qos::BarringPolicy::from_scenario(sc);
    w.row({"fixed", analysis.total_effective_capacity(fixed), 1, 0});

    bool all_converged = true;

    game::GameConfig gcfg = game::GameConfig::from_scenario(sc);
    game::GameOutcome alg1 = game::run_algorithm1(analysis, gcfg, initial_policy(sc));
    all_converged = all_converged && alg1.converged;
    w.row({"best_response", analysis.total_effective_capacity(alg1.policy),
           alg1.converged ? 1 : 0, alg1.iterations});

    pricing::PricingConfig pcfg = pricing::PricingConfig::from_scenario(sc);
    pricing::PriceOutcome alg2 = pricing::run_algorithm2(analysis, gcfg, pcfg, initial_policy(sc));
    all_converged = all_converged && alg2.game.converged;
    w.row({"pricing", analysis.total_effective_capacity(alg2.game.policy),
           alg2.game.converged ? 1 : 0, alg2.game.iterations});

    baseline::PsoConfig pso_cfg;
    pso_cfg.seed = derive_seed(sc.seed(), stream::swarm);
    baseline::OptimResult pso = baseline::pso_optimize(analysis, pso_cfg);
    w.row({"pso", pso.objective, 1, pso_cfg.iterations});

    if (sc.total_queues() <= 4) {
        int resolution = sc.total_queues() <= 2 ? 1001 : (sc.total_queues() == 3 ? 101 : 41);
        baseline::OptimResult grid = baseline::grid_search(analysis, resolution);
        w.row({"grid", grid.objective, 1, resolution});
    }

    return all_converged ? exit_code::ok : exit_code::no_convergence;
}

int simulate(const Scenario& sc, std::ostream& out, std::ostream* histograms) {
    qos::BarringPolicy policy = qos::BarringPolicy::from_scenario(sc);
    if (sc.config().policy.mode == PolicyMode::game) {
        qos::Analysis analysis(sc);
        game::GameConfig gcfg = game::GameConfig::from_scenario(sc);
        game::GameOutcome outcome = game::run_algorithm1(analysis, gcfg, initial_policy(sc));
        policy = outcome.policy;
    }

    const int reps = sc.config().sim.replications;
    std::vector<sim::SimStats> results(static_cast<std::size_t>(reps));
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t r) {
        std::uint64_t rep_seed = derive_seed(sc.seed(), stream::replication + r);
        results[r] = sim::run_simulation(sc, policy, sc.config().sim.horizon, rep_seed);
    });
    sim::SimStats total;
    for (const sim::SimStats& s : results) total.merge(s);

    csv::Writer w(out);
    stamp(w, sc);
    w.row({"device", "class", "superframes", "gated", "attempts", "collisions", "access_wins",
           "acks", "idle_hat", "attempt_hat", "access_hat", "ack_hat", "ema_success",
           "arrived_bits", "served_bits", "packets_arrived", "packets_completed",
           "mean_queue_bits", "mean_delay_s"});
    const double frames = static_cast<double>(total.superframes);
    for (int n = 0; n < sc.devices(); ++n)
        for (int k = 0; k < sc.classes(); ++k) {
            const sim::QueueStats& q = total.queue[static_cast<std::size_t>(sc.idx(n, k))];
            w.row({n, k + 1, total.superframes, static_cast<std::int64_t>(q.gated),
                   static_cast<std::int64_t>(q.attempts), static_cast<std::int64_t>(q.collisions),
                   static_cast<std::int64_t>(q.access_successes),
                   static_cast<std::int64_t>(q.ack_successes),
                   static_cast<double>(q.idle_frames) / frames,
                   static_cast<double>(q.attempts) / frames,
                   static_cast<double>(q.access_successes) / frames,
                   static_cast<double>(q.ack_successes) / frames,
                   q.success_estimate ? *q.success_estimate : -1.0, q.arrived_bits,
                   q.served_bits, static_cast<std::int64_t>(q.packets_arrived),
                   static_cast<std::int64_t>(q.packets_completed), q.queue_sum_bits / frames,
                   q.packets_completed > 0
                       ? q.delay_sum_s / static_cast<double>(q.packets_completed)
                       : -1.0});
        }

    if (histograms != nullptr) {
        csv::Writer h(*histograms);
        stamp(h, sc);
        h.row({"kind", "device", "class", "bin_lower", "count"});
        for (int n = 0; n < sc.devices(); ++n)
            for (int k = 0; k < sc.classes(); ++k) {
                const sim::QueueStats& q = total.queue[static_cast<std::size_t>(sc.idx(n, k))];
                for (std::size_t b = 0; b < q.queue_hist.counts.size(); ++b)
                    if (q.queue_hist.counts[b] > 0)
                        h.row({"queue_bits", n, k + 1, q.queue_hist.bin_lower(b),
                               static_cast<std::int64_t>(q.queue_hist.counts[b])});
                for (std::size_t b = 0; b < q.delay_hist.counts.size(); ++b)
                    if (q.delay_hist.counts[b] > 0)
                        h.row({"delay_s", n, k + 1, q.delay_hist.bin_lower(b),
                               static_cast<std::int64_t>(q.delay_hist.counts[b])});
            }
    }
    return exit_code::ok;
}

} // namespace mmtc::commands
