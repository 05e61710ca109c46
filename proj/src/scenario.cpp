#include "mmtc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mmtc/errors.hpp"
#include "mmtc/phy.hpp"
#include "mmtc/rng.hpp"

namespace mmtc {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const char* section,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) fail(std::string("unknown key '") + it.key() + "' in section '" + section + "'");
    }
}

template <typename T>
void read(const json& obj, const char* section, const char* key, T& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        it->get_to(out);
    } catch (const json::exception&) {
        fail(std::string("bad value for '") + section + "." + key + "'");
    }
}

// Per-class fields accept either a scalar (broadcast) or an array of size K.
void read_per_class(const json& obj, const char* section, const char* key, int classes,
                    std::vector<double>& out) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (static_cast<int>(out.size()) != classes)
            out.assign(static_cast<std::size_t>(classes), out.empty() ? 0.0 : out.front());
        return;
    }
    if (it->is_number()) {
        out.assign(static_cast<std::size_t>(classes), it->get<double>());
        return;
    }
    if (it->is_array()) {
        std::vector<double> v;
        try {
            it->get_to(v);
        } catch (const json::exception&) {
            fail(std::string("bad array for '") + section + "." + key + "'");
        }
        if (static_cast<int>(v.size()) != classes)
            fail(std::string("'") + section + "." + key + "' must have one entry per class");
        out = std::move(v);
        return;
    }
    fail(std::string("'") + section + "." + key + "' must be a number or an array");
}

std::string mode_name(PolicyMode m) { return m == PolicyMode::fixed ? "fixed" : "game"; }
std::string info_name(InfoMode m) { return m == InfoMode::full ? "full" : "distributed"; }
std::string init_name(InitialPolicy p) {
    switch (p) {
    case InitialPolicy::x_min: return "x_min";
    case InitialPolicy::x_max: return "x_max";
    default: return "random";
    }
}

PolicyMode mode_from(const std::string& s) {
    if (s == "fixed") return PolicyMode::fixed;
    if (s == "game") return PolicyMode::game;
    fail("policy.mode must be 'fixed' or 'game'");
}
InfoMode info_from(const std::string& s) {
    if (s == "full") return InfoMode::full;
    if (s == "distributed") return InfoMode::distributed;
    fail("game.info_mode must be 'full' or 'distributed'");
}
InitialPolicy init_from(const std::string& s) {
    if (s == "x_min") return InitialPolicy::x_min;
    if (s == "x_max") return InitialPolicy::x_max;
    if (s == "random") return InitialPolicy::random;
    fail("game.initial must be 'x_min', 'x_max', or 'random'");
}

} // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("config root must be a JSON object");
    check_keys(root, "(root)", {"system", "traffic", "policy", "game", "pricing", "sim", "seed"});

    ScenarioConfig cfg;

    if (auto it = root.find("system"); it != root.end()) {
        const json& s = *it;
        check_keys(s, "system",
                   {"devices", "classes", "preambles", "slot_s", "ra_phase_s", "data_phase_s",
                    "superframe_s", "ec_time_s", "area_side_m", "symbol_duration_s",
                    "symbol_bandwidth_hz", "bandwidth_hz", "tx_power_dbm",
                    "noise_density_dbm_hz", "symbols_override", "distances_m"});
        read(s, "system", "devices", cfg.system.devices);
        read(s, "system", "classes", cfg.system.classes);
        read(s, "system", "preambles", cfg.system.preambles);
        read(s, "system", "slot_s", cfg.system.slot_s);
        read(s, "system", "ra_phase_s", cfg.system.ra_phase_s);
        read(s, "system", "data_phase_s", cfg.system.data_phase_s);
        read(s, "system", "superframe_s", cfg.system.superframe_s);
        read(s, "system", "ec_time_s", cfg.system.ec_time_s);
        read(s, "system", "area_side_m", cfg.system.area_side_m);
        read(s, "system", "symbol_duration_s", cfg.system.symbol_duration_s);
        read(s, "system", "symbol_bandwidth_hz", cfg.system.symbol_bandwidth_hz);
        read(s, "system", "bandwidth_hz", cfg.system.bandwidth_hz);
        read(s, "system", "tx_power_dbm", cfg.system.tx_power_dbm);
        read(s, "system", "noise_density_dbm_hz", cfg.system.noise_density_dbm_hz);
        read(s, "system", "symbols_override", cfg.system.symbols_override);
        read(s, "system", "distances_m", cfg.system.distances_m);
    }
    const int k = cfg.system.classes;

    // defaults sized for two classes; resize for other class counts
    if (auto it = root.find("traffic"); it != root.end()) {
        const json& t = *it;
        check_keys(t, "traffic",
                   {"arrival_prob", "mean_packet_bits", "qos_exponent", "error_prob",
                    "delay_bound_s", "queue_threshold_bits"});
        read(t, "traffic", "arrival_prob", cfg.traffic.arrival_prob);
        read_per_class(t, "traffic", "mean_packet_bits", k, cfg.traffic.mean_packet_bits);
        read_per_class(t, "traffic", "qos_exponent", k, cfg.traffic.qos_exponent);
        read_per_class(t, "traffic", "error_prob", k, cfg.traffic.error_prob);
        read_per_class(t, "traffic", "delay_bound_s", k, cfg.traffic.delay_bound_s);
        read_per_class(t, "traffic", "queue_threshold_bits", k, cfg.traffic.queue_threshold_bits);
    } else {
        const json empty = json::object();
        read_per_class(empty, "traffic", "mean_packet_bits", k, cfg.traffic.mean_packet_bits);
        read_per_class(empty, "traffic", "qos_exponent", k, cfg.traffic.qos_exponent);
        read_per_class(empty, "traffic", "error_prob", k, cfg.traffic.error_prob);
        read_per_class(empty, "traffic", "delay_bound_s", k, cfg.traffic.delay_bound_s);
        read_per_class(empty, "traffic", "queue_threshold_bits", k, cfg.traffic.queue_threshold_bits);
    }

    if (auto it = root.find("policy"); it != root.end()) {
        const json& p = *it;
        check_keys(p, "policy", {"d_min", "d_max", "mode", "fixed_d"});
        read(p, "policy", "d_min", cfg.policy.d_min);
        read(p, "policy", "d_max", cfg.policy.d_max);
        if (auto m = p.find("mode"); m != p.end()) cfg.policy.mode = mode_from(m->get<std::string>());
        read_per_class(p, "policy", "fixed_d", k, cfg.policy.fixed_d);
    } else {
        const json empty = json::object();
        read_per_class(empty, "policy", "fixed_d", k, cfg.policy.fixed_d);
    }

    if (auto it = root.find("game"); it != root.end()) {
        const json& g = *it;
        check_keys(g, "game",
                   {"price", "tolerance", "safeguard_delta", "max_iterations", "info_mode",
                    "initial"});
        read(g, "game", "price", cfg.game.price);
        read(g, "game", "tolerance", cfg.game.tolerance);
        read(g, "game", "safeguard_delta", cfg.game.safeguard_delta);
        read(g, "game", "max_iterations", cfg.game.max_iterations);
        if (auto m = g.find("info_mode"); m != g.end()) cfg.game.info_mode = info_from(m->get<std::string>());
        if (auto m = g.find("initial"); m != g.end()) cfg.game.initial = init_from(m->get<std::string>());
    }

    if (auto it = root.find("pricing"); it != root.end()) {
        const json& p = *it;
        check_keys(p, "pricing", {"rho0", "tolerance", "max_iterations"});
        read(p, "pricing", "rho0", cfg.pricing.rho0);
        read(p, "pricing", "tolerance", cfg.pricing.tolerance);
        read(p, "pricing", "max_iterations", cfg.pricing.max_iterations);
    }

    if (auto it = root.find("sim"); it != root.end()) {
        const json& s = *it;
        check_keys(s, "sim",
                   {"horizon", "warmup_fraction", "replications", "forced_backlog",
                    "queue_hist_bin_bits", "queue_hist_bins", "delay_hist_bin_s",
                    "delay_hist_bins", "ema_weight"});
        read(s, "sim", "horizon", cfg.sim.horizon);
        read(s, "sim", "warmup_fraction", cfg.sim.warmup_fraction);
        read(s, "sim", "replications", cfg.sim.replications);
        read(s, "sim", "forced_backlog", cfg.sim.forced_backlog);
        read(s, "sim", "queue_hist_bin_bits", cfg.sim.queue_hist_bin_bits);
        read(s, "sim", "queue_hist_bins", cfg.sim.queue_hist_bins);
        read(s, "sim", "delay_hist_bin_s", cfg.sim.delay_hist_bin_s);
        read(s, "sim", "delay_hist_bins", cfg.sim.delay_hist_bins);
        read(s, "sim", "ema_weight", cfg.sim.ema_weight);
    }

    read(root, "(root)", "seed", cfg.seed);

    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string ScenarioConfig::to_json_text() const {
    ordered_json root;
    ordered_json& s = root["system"];
    s["devices"] = system.devices;
    s["classes"] = system.classes;
    s["preambles"] = system.preambles;
    s["slot_s"] = system.slot_s;
    s["ra_phase_s"] = system.ra_phase_s;
    s["data_phase_s"] = system.data_phase_s;
    s["superframe_s"] = system.superframe_s;
    s["ec_time_s"] = system.ec_time_s;
    s["area_side_m"] = system.area_side_m;
    s["symbol_duration_s"] = system.symbol_duration_s;
    s["symbol_bandwidth_hz"] = system.symbol_bandwidth_hz;
    s["bandwidth_hz"] = system.bandwidth_hz;
    s["tx_power_dbm"] = system.tx_power_dbm;
    s["noise_density_dbm_hz"] = system.noise_density_dbm_hz;
    s["symbols_override"] = system.symbols_override;
    s["distances_m"] = system.distances_m;

    ordered_json& t = root["traffic"];
    t["arrival_prob"] = traffic.arrival_prob;
    t["mean_packet_bits"] = traffic.mean_packet_bits;
    t["qos_exponent"] = traffic.qos_exponent;
    t["error_prob"] = traffic.error_prob;
    t["delay_bound_s"] = traffic.delay_bound_s;
    t["queue_threshold_bits"] = traffic.queue_threshold_bits;

    ordered_json& p = root["policy"];
    p["d_min"] = policy.d_min;
    p["d_max"] = policy.d_max;
    p["mode"] = mode_name(policy.mode);
    p["fixed_d"] = policy.fixed_d;

    ordered_json& g = root["game"];
    g["price"] = game.price;
    g["tolerance"] = game.tolerance;
    g["safeguard_delta"] = game.safeguard_delta;
    g["max_iterations"] = game.max_iterations;
    g["info_mode"] = info_name(game.info_mode);
    g["initial"] = init_name(game.initial);

    ordered_json& pr = root["pricing"];
    pr["rho0"] = pricing.rho0;
    pr["tolerance"] = pricing.tolerance;
    pr["max_iterations"] = pricing.max_iterations;

    ordered_json& sm = root["sim"];
    sm["horizon"] = sim.horizon;
    sm["warmup_fraction"] = sim.warmup_fraction;
    sm["replications"] = sim.replications;
    sm["forced_backlog"] = sim.forced_backlog;
    sm["queue_hist_bin_bits"] = sim.queue_hist_bin_bits;
    sm["queue_hist_bins"] = sim.queue_hist_bins;
    sm["delay_hist_bin_s"] = sim.delay_hist_bin_s;
    sm["delay_hist_bins"] = sim.delay_hist_bins;
    sm["ema_weight"] = sim.ema_weight;

    root["seed"] = seed;
    return root.dump();
}

void ScenarioConfig::validate() const {
    const auto& s = system;
    if (s.devices < 1) fail("system.devices must be >= 1");
    if (s.classes < 1) fail("system.classes must be >= 1");
    if (s.preambles < 1) fail("system.preambles must be >= 1");
    if (!(s.slot_s > 0 && s.ra_phase_s > 0 && s.data_phase_s > 0 && s.superframe_s > 0))
        fail("system timings must be > 0");
    if (std::abs(s.ra_phase_s + s.data_phase_s - s.superframe_s) > 1e-12)
        fail("system.superframe_s must equal ra_phase_s + data_phase_s");
    double slots = s.superframe_s / s.slot_s;
    if (std::abs(slots - std::round(slots)) > 1e-9 || slots < 0.5)
        fail("system.superframe_s must be an integer multiple of slot_s");
    if (s.ec_time_s < 0) fail("system.ec_time_s must be >= 0");
    if (!(s.area_side_m > 0)) fail("system.area_side_m must be > 0");
    if (!(s.symbol_duration_s > 0 && s.symbol_bandwidth_hz > 0 && s.bandwidth_hz > 0))
        fail("system symbol parameters must be > 0");
    if (s.symbols_override < 0) fail("system.symbols_override must be >= 0");
    if (!s.distances_m.empty()) {
        if (static_cast<int>(s.distances_m.size()) != s.devices)
            fail("system.distances_m must have one entry per device");
        for (double d : s.distances_m)
            if (!(d >= 1.0)) fail("system.distances_m entries must be >= 1 m");
    }

    const auto& t = traffic;
    const auto k = static_cast<std::size_t>(s.classes);
    if (!(t.arrival_prob >= 0 && t.arrival_prob <= 1))
        fail("traffic.arrival_prob must lie in [0, 1]");
    if (t.mean_packet_bits.size() != k || t.qos_exponent.size() != k ||
        t.error_prob.size() != k || t.delay_bound_s.size() != k ||
        t.queue_threshold_bits.size() != k)
        fail("traffic per-class arrays must have one entry per class");
    for (std::size_t i = 0; i < k; ++i) {
        if (!(t.mean_packet_bits[i] > 0)) fail("traffic.mean_packet_bits must be > 0");
        if (!(t.qos_exponent[i] > 0)) fail("traffic.qos_exponent must be > 0");
        if (!(t.qos_exponent[i] * t.mean_packet_bits[i] < 1.0))
            fail("traffic.qos_exponent * mean_packet_bits must be < 1 per class");
        if (!(t.error_prob[i] > 0 && t.error_prob[i] < 1))
            fail("traffic.error_prob must lie in (0, 1)");
        if (!(t.delay_bound_s[i] > 0)) fail("traffic.delay_bound_s must be > 0");
        if (!(t.queue_threshold_bits[i] > 0)) fail("traffic.queue_threshold_bits must be > 0");
    }

    const auto& p = policy;
    if (!(p.d_min > 0 && p.d_min <= p.d_max && p.d_max < 1))
        fail("policy bounds must satisfy 0 < d_min <= d_max < 1");
    if (p.fixed_d.size() != k) fail("policy.fixed_d must have one entry per class");
    for (double d : p.fixed_d)
        if (!(d >= p.d_min && d <= p.d_max)) fail("policy.fixed_d entries must lie in [d_min, d_max]");

    if (!(game.price >= 0)) fail("game.price must be >= 0");
    if (!(game.tolerance > 0)) fail("game.tolerance must be > 0");
    if (!(game.safeguard_delta > 0)) fail("game.safeguard_delta must be > 0");
    if (game.max_iterations < 1) fail("game.max_iterations must be >= 1");

    if (!(pricing.rho0 > 0 && pricing.rho0 <= 1)) fail("pricing.rho0 must lie in (0, 1]");
    if (!(pricing.tolerance > 0)) fail("pricing.tolerance must be > 0");
    if (pricing.max_iterations < 1) fail("pricing.max_iterations must be >= 1");

    if (sim.horizon < 1) fail("sim.horizon must be >= 1");
    if (!(sim.warmup_fraction >= 0 && sim.warmup_fraction < 1))
        fail("sim.warmup_fraction must lie in [0, 1)");
    if (sim.replications < 1) fail("sim.replications must be >= 1");
    if (!(sim.queue_hist_bin_bits > 0 && sim.delay_hist_bin_s > 0))
        fail("sim histogram bin widths must be > 0");
    if (sim.queue_hist_bins < 1 || sim.delay_hist_bins < 1)
        fail("sim histogram bin counts must be >= 1");
    if (!(sim.ema_weight > 0 && sim.ema_weight <= 1))
        fail("sim.ema_weight must lie in (0, 1]");
}

std::string config_hash_hex(const ScenarioConfig& cfg) {
    const std::string text = cfg.to_json_text();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Scenario::Scenario(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();

    tx_power_w_ = phy::dbm_to_watts(cfg_.system.tx_power_dbm);
    noise_power_w_ = phy::dbm_to_watts(cfg_.system.noise_density_dbm_hz) * cfg_.system.bandwidth_hz;
    slots_per_superframe_ = static_cast<int>(std::round(cfg_.system.superframe_s / cfg_.system.slot_s));

    if (cfg_.system.distances_m.empty()) {
        Rng rng(derive_seed(cfg_.seed, stream::placement));
        distances_.reserve(static_cast<std::size_t>(cfg_.system.devices));
        const double side = cfg_.system.area_side_m;
        for (int n = 0; n < cfg_.system.devices; ++n) {
            double x = (rng.uniform() - 0.5) * side;
            double y = (rng.uniform() - 0.5) * side;
            distances_.push_back(std::max(1.0, std::hypot(x, y)));
        }
    } else {
        distances_ = cfg_.system.distances_m;
    }

    gains_.reserve(distances_.size());
    for (double d : distances_) gains_.push_back(phy::path_gain(d));

    if (cfg_.system.symbols_override > 0) {
        symbols_ = cfg_.system.symbols_override;
    } else {
        symbols_ = phy::symbols_per_frame({cfg_.system.data_phase_s, cfg_.system.symbol_duration_s,
                                           cfg_.system.bandwidth_hz, cfg_.system.symbol_bandwidth_hz});
    }
}

double Scenario::ec_time_s() const {
    return cfg_.system.ec_time_s > 0 ? cfg_.system.ec_time_s : cfg_.system.superframe_s;
}

double Scenario::snr_mean(int device) const { return snr_mean_at(device, tx_power_w_); }

double Scenario::snr_mean_at(int device, double tx_power_w) const {
    return tx_power_w * gains_.at(static_cast<std::size_t>(device)) / noise_power_w_;
}

} // namespace mmtc
