#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmtc/commands.hpp"
#include "mmtc/errors.hpp"
#include "mmtc/scenario.hpp"

namespace {

struct OutputFile {
    std::ofstream file;
    std::ostream* stream = nullptr;

    explicit OutputFile(const std::string& path) {
        if (path == "-") {
            stream = &std::cout;
            return;
        }
        file.open(path, std::ios::binary);
        if (!file) throw mmtc::ConfigError("cannot open output file: " + path);
        stream = &file;
    }
};

std::vector<double> log_spaced(double lo, double hi, int points) {
    if (points < 1) throw mmtc::ConfigError("qos-sweep: points must be >= 1");
    if (!(lo > 0 && hi >= lo)) throw mmtc::ConfigError("qos-sweep: need 0 < theta-min <= theta-max");
    std::vector<double> v;
    if (points == 1) {
        v.push_back(lo);
        return v;
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        v.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) / (points - 1)));
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Priority random access and short-packet transmission analyzer"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path = "-";
    std::uint64_t seed = 0;
    int replications = 0;
    bool quiet = false;

    app.add_option("--config", config_path, "scenario JSON file (defaults apply when omitted)");
    CLI::Option* seed_opt = app.add_option("--seed", seed, "override the scenario seed");
    app.add_option("--out", out_path, "output CSV path, '-' for stdout");
    CLI::Option* rep_opt =
        app.add_option("--replications", replications, "override sim.replications");
    app.add_flag("--quiet", quiet, "suppress progress notes");

    CLI::App* sweep = app.add_subcommand("capacity-sweep",
                                         "mean per-class effective capacity over a preamble "
                                         "count x bandwidth grid, fixed barring policy");
    mmtc::commands::CapacitySweepSpec sweep_spec;
    std::vector<double> bandwidths_khz{180, 360, 720, 1440};
    sweep->add_option("--preambles", sweep_spec.preambles, "preamble counts")
        ->delimiter(',');
    sweep->add_option("--bandwidths-khz", bandwidths_khz, "per-device bandwidths in kHz")
        ->delimiter(',');

    CLI::App* qos_cmd = app.add_subcommand("qos-sweep",
                                           "per-class effective capacity while one class's "
                                           "QoS exponent sweeps a log-spaced range");
    double theta_min = 1e-6, theta_max = 1e-3;
    int points = 25, swept_class = 1;
    qos_cmd->add_option("--theta-min", theta_min, "smallest exponent");
    qos_cmd->add_option("--theta-max", theta_max, "largest exponent");
    qos_cmd->add_option("--points", points, "number of sweep points");
    qos_cmd->add_option("--class", swept_class, "swept class, 1-based");

    CLI::App* game_cmd =
        app.add_subcommand("game", "best-response barring game, per-iteration trajectory");
    CLI::App* price_cmd =
        app.add_subcommand("price", "price-update loop around the barring game");
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "total effective capacity of fixed, game, pricing, swarm and grid policies");

    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "superframe-level event simulation of the full stack");
    std::string hist_path;
    sim_cmd->add_option("--hist-out", hist_path, "also write queue/delay histograms to this CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? mmtc::exit_code::ok : mmtc::exit_code::config;
    }

    try {
        mmtc::ScenarioConfig cfg;
        if (!config_path.empty()) cfg = mmtc::ScenarioConfig::from_json_file(config_path);
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (rep_opt->count() > 0) {
            if (replications < 1) throw mmtc::ConfigError("--replications must be >= 1");
            cfg.sim.replications = replications;
        }
        cfg.validate();
        mmtc::Scenario sc(cfg);

        OutputFile out(out_path);

        if (sweep->parsed()) {
            sweep_spec.bandwidths_hz.clear();
            for (double khz : bandwidths_khz) sweep_spec.bandwidths_hz.push_back(khz * 1e3);
            return mmtc::commands::capacity_sweep(sc, sweep_spec, *out.stream);
        }
        if (qos_cmd->parsed()) {
            mmtc::commands::QosSweepSpec spec;
            spec.exponents = log_spaced(theta_min, theta_max, points);
            spec.class_index = swept_class - 1;
            return mmtc::commands::qos_sweep(sc, spec, *out.stream);
        }
        if (game_cmd->parsed()) return mmtc::commands::game(sc, *out.stream);
        if (price_cmd->parsed()) return mmtc::commands::price(sc, *out.stream);
        if (compare_cmd->parsed()) return mmtc::commands::compare(sc, *out.stream);
        if (sim_cmd->parsed()) {
            std::unique_ptr<OutputFile> hist;
            if (!hist_path.empty()) hist = std::make_unique<OutputFile>(hist_path);
            return mmtc::commands::simulate(sc, *out.stream,
                                            hist ? hist->stream : nullptr);
        }
        return mmtc::exit_code::config;
    } catch (const mmtc::InfeasibleQosError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return mmtc::exit_code::infeasible;
    } catch (const mmtc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return mmtc::exit_code::config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
