// End-to-end acceptance gate. Each numbered check prints one PASS/FAIL line;
// the process exits nonzero if any check fails. argv[1] must point at the CLI
// binary (used by the byte-determinism check).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mmtc/baseline.hpp"
#include "mmtc/game.hpp"
#include "mmtc/phy.hpp"
#include "mmtc/pricing.hpp"
#include "mmtc/qos.hpp"
#include "mmtc/rng.hpp"
#include "mmtc/scenario.hpp"
#include "mmtc/sim.hpp"
#include "mmtc/traffic.hpp"

using namespace mmtc;

namespace {

Scenario make_scenario(const char* json) { return Scenario(ScenarioConfig::from_json_text(json)); }

struct Check {
    std::string detail; // filled on failure

    bool expect(bool ok, const std::string& what) {
        if (!ok && detail.empty()) detail = what;
        return ok;
    }
    bool near(double actual, double expected, double rel, const std::string& what) {
        double scale = std::max(std::abs(expected), 1e-300);
        bool ok = std::abs(actual - expected) <= rel * scale;
        if (!ok && detail.empty()) {
            std::ostringstream os;
            os << what << ": " << actual << " vs " << expected;
            detail = os.str();
        }
        return ok;
    }
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---- 1: finite-blocklength rate limits ------------------------------------

bool rate_limits(Check& c) {
    for (double snr : {0.1, 1.0, 10.0, 100.0}) {
        // at error probability 1/2 the dispersion penalty vanishes entirely
        c.expect(phy::finite_blocklength_rate(snr, 500.0, 0.5) == std::log2(1.0 + snr),
                 "half-error rate is not exactly the Shannon rate");
        c.expect(std::abs(phy::finite_blocklength_rate(snr, 1e8, 1e-5) - std::log2(1.0 + snr)) <=
                     1e-3,
                 "long-blocklength limit misses the Shannon rate");
    }
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        double snr = std::pow(10.0, -2.0 + 5.0 * i / 200.0);
        double r = phy::finite_blocklength_rate(snr, 1000.0, 1e-5);
        c.expect(r >= prev, "rate decreased while snr grew");
        prev = r;
    }
    return c.detail.empty();
}

// ---- 2: arrival effective bandwidth vs Monte Carlo -------------------------

bool bandwidth_oracle(Check& c) {
    const double slot = 0.5e-3;
    struct Combo {
        double theta, p, bits;
    };
    const Combo combos[] = {{5e-4, 0.5, 400.0},
                            {1e-3, 0.4, 200.0},
                            {2e-4, 0.5, 1000.0},
                            {1e-3, 0.5, 300.0},
                            {5e-4, 0.4, 600.0}};
    for (std::size_t i = 0; i < 5; ++i) {
        const Combo& co = combos[i];
        double analytic = traffic::effective_bandwidth(co.theta, co.p, co.bits, slot);
        Rng rng(derive_seed(4242, i));
        double acc = 0.0;
        const int slots = 1000000;
        for (int t = 0; t < slots; ++t)
            acc += std::exp(co.theta * traffic::sample_arrival(rng, co.p, co.bits));
        double mc = std::log(acc / slots) / (co.theta * slot);
        if (!c.near(mc, analytic, 0.01, "per-slot arrival MGF estimate off")) return false;
    }
    return true;
}

// ---- 3: access-success chain vs event simulation ---------------------------

bool access_chain_vs_sim(Check& c) {
    const std::int64_t horizon = 100000;
    for (int devices : {2, 10, 100})
        for (int preambles : {2, 50}) {
            ScenarioConfig cfg;
            cfg.system.devices = devices;
            cfg.system.preambles = preambles;
            cfg.sim.forced_backlog = true;
            cfg.sim.warmup_fraction = 0.0;
            cfg.seed = static_cast<std::uint64_t>(1234 + devices + preambles);
            Scenario sc(cfg);
            qos::BarringPolicy pol = qos::BarringPolicy::from_scenario(sc);

            qos::Analysis an(sc);
            an.set_idle_probs(std::vector<double>(static_cast<std::size_t>(sc.total_queues()), 0.0));
            qos::AccessState st = an.access_state(pol);
            double predicted = st.success[static_cast<std::size_t>(sc.idx(0, 0))];

            sim::SimStats stats = sim::run_simulation(sc, pol, horizon, sc.seed());
            double empirical =
                static_cast<double>(stats.queue[static_cast<std::size_t>(sc.idx(0, 0))]
                                        .access_successes) /
                static_cast<double>(stats.superframes);
            double sigma = std::sqrt(std::max(predicted * (1.0 - predicted), 1e-300) /
                                     static_cast<double>(horizon));
            std::ostringstream what;
            what << "N=" << devices << " M=" << preambles << ": empirical " << empirical
                 << " vs predicted " << predicted;
            if (!c.expect(std::abs(empirical - predicted) <= 3.0 * sigma, what.str()))
                return false;
        }
    return true;
}

// ---- 4: utility curvature signs --------------------------------------------

bool curvature_signs(Check& c) {
    const double h = 1e-3, lambda = 1000.0;
    for (int s = 0; s < 3; ++s) {
        Rng srng(static_cast<std::uint64_t>(7401 + s));
        ScenarioConfig cfg;
        cfg.system.devices = 3 + srng.uniform_int(4);
        cfg.system.preambles = 2 + srng.uniform_int(19);
        cfg.system.distances_m.clear();
        for (int n = 0; n < cfg.system.devices; ++n)
            cfg.system.distances_m.push_back(30.0 + 220.0 * srng.uniform());
        Scenario sc(cfg);
        qos::Analysis an(sc);

        auto utility = [&](const qos::BarringPolicy& pol, int n) {
            double u = 0.0;
            for (int k = 0; k < sc.classes(); ++k) {
                std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
                u += an.effective_capacity(n, k, pol) - lambda * pol.x[i];
            }
            return u;
        };

        Rng prng(derive_seed(8801, static_cast<std::uint64_t>(s)));
        for (int trial = 0; trial < 100; ++trial) {
            qos::BarringPolicy pol = qos::BarringPolicy::random_interior(sc, prng);
            for (double& x : pol.x)
                x = std::clamp(x, pol.bounds.x_min() + 2 * h, pol.bounds.x_max() - 2 * h);
            int n = prng.uniform_int(sc.devices());
            int other = prng.uniform_int(sc.devices() - 1);
            if (other >= n) ++other;
            int k_other = prng.uniform_int(sc.classes());

            double u0 = utility(pol, n);
            for (int k = 0; k < sc.classes(); ++k) {
                std::size_t i = static_cast<std::size_t>(sc.idx(n, k));
                qos::BarringPolicy up = pol, dn = pol;
                up.x[i] += h;
                dn.x[i] -= h;
                double second = (utility(up, n) - 2.0 * u0 + utility(dn, n)) / (h * h);
                if (!c.expect(second <= 1e-9, "own-coordinate curvature not concave"))
                    return false;

                // raising someone else's openness weakly lowers my marginal gain
                std::size_t j = static_cast<std::size_t>(sc.idx(other, k_other));
                qos::BarringPolicy pp = up, pm = up, mp = dn, mm = dn;
                pp.x[j] += h;
                pm.x[j] -= h;
                mp.x[j] += h;
                mm.x[j] -= h;
                double mixed = (utility(pp, n) - utility(pm, n) - utility(mp, n) +
                                utility(mm, n)) /
                               (4.0 * h * h);
                if (!c.expect(mixed <= 1e-9, "cross-device coupling not submodular"))
                    return false;
            }
        }
    }
    return true;
}

// ---- 5: closed-form best response vs dense grid -----------------------------

bool best_response_oracle(Check& c) {
    Scenario sc = make_scenario(
        R"({"system": {"devices": 4, "distances_m": [50.0, 100.0, 150.0, 200.0]}})");
    qos::Analysis an(sc);
    Rng rng(6001);
    const int grid_points = 100000;

    for (int trial = 0; trial < 50; ++trial) {
        qos::BarringPolicy pol = qos::BarringPolicy::random_interior(sc, rng);
        int n = rng.uniform_int(sc.devices());
        int k = rng.uniform_int(sc.classes());
        double price = 100.0 * std::pow(100.0, rng.uniform());
        double phi = an.phi(n, k, pol);
        double theta = sc.theta(k), horizon = sc.ec_time_s();

        double br = game::best_response(phi, price, theta, horizon, pol.bounds);

        double lo = pol.bounds.x_min(), hi = pol.bounds.x_max();
        double step = (hi - lo) / grid_points;
        double best_x = lo, best_u = -1e300;
        for (int g = 0; g <= grid_points; ++g) {
            double x = lo + step * g;
            double u = -std::log1p(-(-std::expm1(-x)) * phi) / (theta * horizon) - price * x;
            if (u > best_u) {
                best_u = u;
                best_x = x;
            }
        }
        std::ostringstream what;
        what << "closed form " << br << " vs grid argmax " << best_x;
        if (!c.expect(std::abs(br - best_x) <= step * 1.0000001, what.str())) return false;
    }
    return true;
}

// ---- reference deployment shared by 6/7/8 ----------------------------------

const char* kReferenceGame = R"({"system": {"symbols_override": 1000},
    "traffic": {"qos_exponent": [1e-3, 1e-5]},
    "policy": {"mode": "game"},
    "game": {"price": 1000.0, "tolerance": 1e-8, "max_iterations": 300, "initial": "random"},
    "seed": 7})";

// ---- 6: best-response play lands on one fixed point -------------------------

bool game_fixed_point(Check& c) {
    Scenario sc = make_scenario(kReferenceGame);
    qos::Analysis an(sc);
    game::GameConfig gcfg = game::GameConfig::from_scenario(sc);

    std::vector<std::vector<double>> ends;
    for (std::uint64_t s : {11ull, 22ull, 33ull}) {
        Rng rng(derive_seed(s, stream::game_init));
        game::GameOutcome out =
            game::run_algorithm1(an, gcfg, qos::BarringPolicy::random_interior(sc, rng));
        if (!c.expect(out.converged, "best-response play did not converge")) return false;
        if (!c.expect(out.iterations <= 100, "needed more than 100 rounds")) return false;
        if (!c.expect(out.br_residual <= 1e-6, "fixed-point residual above 1e-6")) return false;
        ends.push_back(out.policy.x);
    }
    double spread = 0.0;
    for (std::size_t i = 0; i < ends[0].size(); ++i) {
        double lo = ends[0][i], hi = ends[0][i];
        for (const auto& e : ends) {
            lo = std::min(lo, e[i]);
            hi = std::max(hi, e[i]);
        }
        spread = std::max(spread, hi - lo);
    }
    std::ostringstream what;
    what << "per-coordinate spread " << spread;
    return c.expect(spread <= 1e-4, what.str());
}

// ---- 7: price sweep has an interior optimum that beats fixed policies -------

bool price_sweep_trend(Check& c) {
    Scenario sc = make_scenario(kReferenceGame);
    qos::Analysis an(sc);
    game::GameConfig gcfg = game::GameConfig::from_scenario(sc);
    qos::BarringPolicy start = qos::BarringPolicy::constant_x(sc, qos::PolicyBounds{}.x_min());

    const double lambdas[] = {1e2, 1e3, 1e4, 1e5};
    std::vector<double> totals;
    for (double lambda : lambdas) {
        game::GameConfig cfg = gcfg;
        cfg.price.assign(cfg.price.size(), lambda);
        game::GameOutcome out = game::run_algorithm1(an, cfg, start);
        if (!c.expect(out.converged, "sweep point did not converge")) return false;
        totals.push_back(an.total_effective_capacity(out.policy));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < totals.size(); ++i)
        if (totals[i] > totals[best]) best = i;
    if (!c.expect(best != 0 && best != totals.size() - 1,
                  "total capacity peaked at a sweep endpoint"))
        return false;

    for (double d : {0.1, 0.5, 0.9}) {
        qos::BarringPolicy fixed = qos::BarringPolicy::from_class_barring(
            sc, std::vector<double>(static_cast<std::size_t>(sc.classes()), d));
        double fixed_total = an.total_effective_capacity(fixed);
        std::ostringstream what;
        what << "fixed barring " << d << " (total " << fixed_total
             << ") beats the tuned game (" << totals[best] << ")";
        if (!c.expect(totals[best] > fixed_total, what.str())) return false;
    }
    return true;
}

// ---- 8: price adjustment converges and tracks the centralized references ----

bool pricing_ordering(Check& c) {
    {
        Scenario sc = make_scenario(kReferenceGame);
        qos::Analysis an(sc);
        game::GameConfig gcfg = game::GameConfig::from_scenario(sc);
        pricing::PricingConfig pcfg = pricing::PricingConfig::from_scenario(sc);
        pcfg.tolerance = 1e-6;
        pcfg.max_iterations = 150000;
        pricing::PriceOutcome out = pricing::run_algorithm2(
            an, gcfg, pcfg, qos::BarringPolicy::constant_x(sc, qos::PolicyBounds{}.x_min()));
        if (!c.expect(out.game.converged, "price adjustment stalled on the reference deployment"))
            return false;
    }

    struct Instance {
        const char* json;
        bool from_top;
        bool check_kkt;
    };
    const Instance instances[] = {
        {R"({"system": {"devices": 2, "classes": 1, "preambles": 2,
                        "symbols_override": 1000, "distances_m": [60.0, 90.0]},
             "traffic": {"qos_exponent": 1e-3, "mean_packet_bits": 500, "error_prob": 1e-5},
             "policy": {"mode": "game"},
             "game": {"tolerance": 1e-8, "max_iterations": 2000},
             "pricing": {"tolerance": 1e-8, "max_iterations": 2000}, "seed": 5})",
         true, true},
        {R"({"system": {"devices": 2, "classes": 1, "preambles": 2,
                        "symbols_override": 1000, "distances_m": [40.0, 120.0]},
             "traffic": {"qos_exponent": 1e-3, "mean_packet_bits": 500, "error_prob": 1e-5},
             "policy": {"mode": "game"},
             "game": {"tolerance": 1e-8, "max_iterations": 2000},
             "pricing": {"tolerance": 1e-8, "max_iterations": 2000}, "seed": 5})",
         false, false}};

    for (const Instance& inst : instances) {
        Scenario sc = make_scenario(inst.json);
        qos::Analysis an(sc);
        game::GameConfig gcfg = game::GameConfig::from_scenario(sc);
        pricing::PricingConfig pcfg = pricing::PricingConfig::from_scenario(sc);
        const qos::PolicyBounds box;
        qos::BarringPolicy start =
            qos::BarringPolicy::constant_x(sc, inst.from_top ? box.x_max() : box.x_min());

        pricing::PriceOutcome a2 = pricing::run_algorithm2(an, gcfg, pcfg, start);
        if (!c.expect(a2.game.converged, "two-device price adjustment did not converge"))
            return false;
        if (inst.check_kkt &&
            !c.expect(a2.kkt_residual_normalized <= 1e-3, "stationarity residual above 1e-3"))
            return false;

        game::GameConfig fixed_price = gcfg;
        fixed_price.price.assign(fixed_price.price.size(), 1000.0);
        game::GameOutcome a1 = game::run_algorithm1(
            an, fixed_price, qos::BarringPolicy::constant_x(sc, box.x_min()));
        if (!c.expect(a1.converged, "fixed-price game did not converge")) return false;

        baseline::PsoConfig pso_cfg;
        pso_cfg.seed = derive_seed(sc.seed(), stream::swarm);
        baseline::OptimResult pso = baseline::pso_optimize(an, pso_cfg);
        baseline::OptimResult grid = baseline::grid_search(an, 1001);

        double a2_total = an.total_effective_capacity(a2.game.policy);
        double a1_total = an.total_effective_capacity(a1.policy);
        double slack = 1e-9 * grid.objective;
        if (!c.expect(grid.objective >= pso.objective - slack, "swarm beat the exhaustive grid"))
            return false;
        if (!c.expect(pso.objective >= a2_total - slack, "price adjustment beat the swarm"))
            return false;
        if (!c.expect(a2_total >= a1_total - slack, "fixed-price play beat price adjustment"))
            return false;
        std::ostringstream what;
        what << "grid " << grid.objective << " vs price adjustment " << a2_total;
        if (!c.expect(grid.objective - a2_total <= 0.05 * grid.objective, what.str()))
            return false;
    }
    return true;
}

// ---- 9: solver composition against the simulated queue tail -----------------

bool composition_validation(Check& c) {
    Scenario sc = make_scenario(
        R"({"system": {"devices": 1, "classes": 1, "distances_m": [60.0]},
            "traffic": {"arrival_prob": 0.15, "qos_exponent": 1e-5},
            "policy": {"fixed_d": 0.9},
            "sim": {"horizon": 200000, "replications": 4,
                    "queue_hist_bin_bits": 250, "queue_hist_bins": 1024},
            "seed": 9})");
    qos::Analysis an(sc);
    qos::BarringPolicy pol = qos::BarringPolicy::from_scenario(sc);

    double theta_star = qos::solve_qos_exponent(an, 0, 0, pol);

    sim::SimStats total;
    for (int r = 0; r < sc.config().sim.replications; ++r) {
        std::uint64_t seed = derive_seed(sc.seed(), stream::replication + static_cast<std::uint64_t>(r));
        total.merge(sim::run_simulation(sc, pol, sc.config().sim.horizon, seed));
    }
    const sim::Histogram& hist = total.queue[0].queue_hist;

    // least-squares slope of log P(Q > q) over the requested tail window
    std::vector<double> xs, ys;
    for (std::size_t b = 0; b + 1 < hist.counts.size(); ++b) {
        double tail = hist.tail_above(b);
        if (tail >= 1e-3 && tail <= 1e-1) {
            xs.push_back(hist.bin_width * static_cast<double>(b + 1));
            ys.push_back(std::log(tail));
        }
    }
    if (!c.expect(xs.size() >= 5, "tail window has too few histogram points")) return false;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = num / den;
    std::ostringstream what;
    what << "tail log-slope " << slope << " vs -theta* " << -theta_star;
    if (!c.expect(std::abs(slope / (-theta_star) - 1.0) <= 0.2, what.str())) return false;

    // minimum-power solution must replug into capacity == demand
    qos::PowerSolution ps = qos::solve_power(an, 0, 0, pol);
    if (!c.expect(!ps.at_floor, "power solution unexpectedly at the floor")) return false;
    double demand = an.effective_bandwidth_at(0, sc.theta(0));
    double served = an.effective_capacity_at(0, 0, pol, sc.theta(0), ps.power_w);
    return c.near(served, demand, 1e-6, "replugged capacity misses the demand");
}

// ---- 10: capacity never falls when preambles or bandwidth grow --------------

bool resource_monotonicity(Check& c) {
    auto class_means = [](const ScenarioConfig& cfg) {
        Scenario local(cfg);
        qos::Analysis an(local);
        qos::BarringPolicy pol = qos::BarringPolicy::from_scenario(local);
        std::vector<double> means(static_cast<std::size_t>(local.classes()), 0.0);
        for (int n = 0; n < local.devices(); ++n)
            for (int k = 0; k < local.classes(); ++k)
                means[static_cast<std::size_t>(k)] += an.effective_capacity(n, k, pol);
        for (double& v : means) v /= local.devices();
        return means;
    };

    ScenarioConfig base;
    std::vector<double> prev;
    for (int m : {10, 20, 30, 40, 50, 60}) {
        ScenarioConfig cfg = base;
        cfg.system.preambles = m;
        std::vector<double> means = class_means(cfg);
        if (!prev.empty())
            for (std::size_t k = 0; k < means.size(); ++k)
                if (!c.expect(means[k] >= prev[k], "capacity fell as preambles grew"))
                    return false;
        prev = means;
    }
    prev.clear();
    for (double khz : {180.0, 360.0, 720.0, 1440.0}) {
        ScenarioConfig cfg = base;
        cfg.system.bandwidth_hz = khz * 1e3;
        std::vector<double> means = class_means(cfg);
        if (!prev.empty())
            for (std::size_t k = 0; k < means.size(); ++k)
                if (!c.expect(means[k] >= prev[k], "capacity fell as bandwidth grew"))
                    return false;
        prev = means;
    }
    return true;
}

// ---- 11: command outputs are byte-identical across re-runs ------------------

bool byte_determinism(Check& c, const std::string& cli) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "access_qos_accept";
    fs::create_directories(dir);

    fs::path cmp_cfg = dir / "cmp.json";
    {
        std::ofstream out(cmp_cfg);
        out << R"({"system": {"devices": 2, "classes": 1, "preambles": 2,
                "symbols_override": 1000, "distances_m": [60.0, 90.0]},
            "traffic": {"qos_exponent": 1e-3, "mean_packet_bits": 500, "error_prob": 1e-5},
            "policy": {"mode": "game"},
            "game": {"tolerance": 1e-8, "max_iterations": 2000, "initial": "x_max"},
            "pricing": {"tolerance": 1e-8, "max_iterations": 2000}, "seed": 5})";
    }
    fs::path sim_cfg = dir / "sim.json";
    {
        std::ofstream out(sim_cfg);
        out << R"({"system": {"devices": 2, "classes": 1, "distances_m": [60.0, 90.0]},
            "policy": {"fixed_d": 0.5},
            "sim": {"horizon": 2000, "replications": 2}, "seed": 44})";
    }

    auto run = [&](const std::string& args) {
        int rc = std::system((cli + " " + args).c_str());
        return rc != -1 && WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };

    std::string c1 = (dir / "cmp1.csv").string(), c2 = (dir / "cmp2.csv").string();
    if (!c.expect(run("compare --config " + cmp_cfg.string() + " --out " + c1) == 0,
                  "compare run 1 failed"))
        return false;
    if (!c.expect(run("compare --config " + cmp_cfg.string() + " --out " + c2) == 0,
                  "compare run 2 failed"))
        return false;
    std::string body1 = slurp(c1), body2 = slurp(c2);
    if (!c.expect(!body1.empty(), "compare output is empty")) return false;
    if (!c.expect(body1 == body2, "compare outputs differ between identical runs")) return false;

    std::string s1 = (dir / "sim1.csv").string(), s2 = (dir / "sim2.csv").string();
    std::string h1 = (dir / "hist1.csv").string(), h2 = (dir / "hist2.csv").string();
    if (!c.expect(run("simulate --config " + sim_cfg.string() + " --out " + s1 +
                      " --hist-out " + h1) == 0,
                  "simulate run 1 failed"))
        return false;
    if (!c.expect(run("simulate --config " + sim_cfg.string() + " --out " + s2 +
                      " --hist-out " + h2) == 0,
                  "simulate run 2 failed"))
        return false;
    if (!c.expect(!slurp(s1).empty(), "simulate output is empty")) return false;
    if (!c.expect(slurp(s1) == slurp(s2), "simulate outputs differ between identical runs"))
        return false;
    return c.expect(slurp(h1) == slurp(h2), "histogram outputs differ between identical runs");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance_tests <path-to-cli-binary>\n";
        return 2;
    }
    const std::string cli = argv[1];

    struct Item {
        int number;
        const char* name;
        double budget_s;
        std::function<bool(Check&)> fn;
    };
    const Item items[] = {
        {1, "finite-blocklength rate limits", 1.0, rate_limits},
        {2, "arrival effective bandwidth vs Monte Carlo", 30.0, bandwidth_oracle},
        {3, "access-success chain vs event simulation", 60.0, access_chain_vs_sim},
        {4, "utility curvature signs", 30.0, curvature_signs},
        {5, "closed-form best response vs dense grid", 30.0, best_response_oracle},
        {6, "best-response play lands on one fixed point", 60.0, game_fixed_point},
        {7, "price sweep peaks inside and beats fixed barring", 120.0, price_sweep_trend},
        {8, "price adjustment tracks centralized references", 120.0, pricing_ordering},
        {9, "solver composition against the simulated queue tail", 120.0,
         composition_validation},
        {10, "capacity monotone in preambles and bandwidth", 60.0, resource_monotonicity},
        {11, "command outputs byte-identical across re-runs", 60.0,
         [&cli](Check& c) { return byte_determinism(c, cli); }},
    };

    int failures = 0;
    for (const Item& item : items) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = item.fn(check);
        } catch (const std::exception& e) {
            check.detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > item.budget_s) {
            ok = false;
            if (check.detail.empty()) check.detail = "over time budget";
        }
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << "  [" << item.number << "] " << item.name << "  ("
             << elapsed << " s)";
        if (!ok && !check.detail.empty()) line << "  -- " << check.detail;
        std::cout << line.str() << '\n';
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "all acceptance checks passed"
                                : std::to_string(failures) + " acceptance check(s) failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}
