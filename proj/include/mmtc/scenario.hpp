#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmtc {

// All defaults reproduce the reference deployment: 100 devices with two
// delay-class queues each, 50 preambles, a 4 ms superframe split into a 1 ms
// access phase and a 3 ms data phase over eight 0.5 ms arrival slots.

struct SystemParams {
    int devices = 100;               // N
    int classes = 2;                 // K queues per device, priority = lower index
    int preambles = 50;              // M
    double slot_s = 0.5e-3;          // arrival slot
    double ra_phase_s = 1.0e-3;      // random-access phase
    double data_phase_s = 3.0e-3;    // data phase (blocklength window)
    double superframe_s = 4.0e-3;    // ra + data
    double ec_time_s = 0.0;          // capacity normalization time; 0 = superframe_s
    double area_side_m = 500.0;      // square cell, base station at the center
    double symbol_duration_s = 66.7e-6;
    double symbol_bandwidth_hz = 15e3;
    double bandwidth_hz = 360e3;     // per-device allocation
    double tx_power_dbm = 10.0;
    double noise_density_dbm_hz = -174.0;
    int symbols_override = 0;        // 0 = derive from the timing above
    std::vector<double> distances_m; // optional fixed placement (size N, each >= 1)
};

struct TrafficParams {
    double arrival_prob = 0.1;       // per slot, per queue
    // one entry per class
    std::vector<double> mean_packet_bits{500.0, 500.0};
    std::vector<double> qos_exponent{1e-3, 1e-5};
    std::vector<double> error_prob{1e-5, 1e-5};
    std::vector<double> delay_bound_s{0.05, 0.05};
    std::vector<double> queue_threshold_bits{5000.0, 5000.0};
};

enum class PolicyMode { fixed, game };

struct PolicyParams {
    double d_min = 0.1;
    double d_max = 0.9;
    PolicyMode mode = PolicyMode::fixed;
    std::vector<double> fixed_d{0.9, 0.5}; // per class
};

enum class InfoMode { full, distributed };
enum class InitialPolicy { x_min, x_max, random };

struct GameParams {
    double price = 1000.0;           // lambda, uniform across queues
    double tolerance = 1e-6;         // xi, sup-norm stop threshold
    double safeguard_delta = 1e-3;   // second-round nudge
    int max_iterations = 500;
    InfoMode info_mode = InfoMode::full;
    InitialPolicy initial = InitialPolicy::x_min;
};

struct PricingParams {
    double rho0 = 0.5;               // step size rho_t = rho0 / (1 + t)
    double tolerance = 1e-6;
    int max_iterations = 500;
};

struct SimParams {
    std::int64_t horizon = 100000;   // superframes per replication
    double warmup_fraction = 0.1;
    int replications = 1;
    bool forced_backlog = false;     // every queue always has a head packet (access stress mode)
    double queue_hist_bin_bits = 100.0;
    int queue_hist_bins = 2048;
    double delay_hist_bin_s = 4e-3;
    int delay_hist_bins = 2048;
    double ema_weight = 0.01;        // success-probability estimator
};

struct ScenarioConfig {
    SystemParams system;
    TrafficParams traffic;
    PolicyParams policy;
    GameParams game;
    PricingParams pricing;
    SimParams sim;
    std::uint64_t seed = 1;

    static ScenarioConfig from_json_text(const std::string& text);
    static ScenarioConfig from_json_file(const std::string& path);

    // Canonical form: every field present, per-class arrays expanded.
    std::string to_json_text() const;

    void validate() const; // throws ConfigError
};

// FNV-1a over the canonical JSON text; printed in output comments so a result
// file identifies the exact configuration that produced it.
std::string config_hash_hex(const ScenarioConfig& cfg);

// A validated configuration with placement and link budget resolved.
class Scenario {
public:
    explicit Scenario(ScenarioConfig cfg);

    const ScenarioConfig& config() const { return cfg_; }

    int devices() const { return cfg_.system.devices; }
    int classes() const { return cfg_.system.classes; }
    int preambles() const { return cfg_.system.preambles; }
    int total_queues() const { return devices() * classes(); }
    int idx(int device, int cls) const { return device * classes() + cls; }

    double ec_time_s() const;
    int symbols() const { return symbols_; }
    double tx_power_w() const { return tx_power_w_; }
    double noise_power_w() const { return noise_power_w_; }

    const std::vector<double>& distances() const { return distances_; }
    const std::vector<double>& gains() const { return gains_; }
    double snr_mean(int device) const;
    double snr_mean_at(int device, double tx_power_w) const;

    double theta(int cls) const { return cfg_.traffic.qos_exponent.at(static_cast<std::size_t>(cls)); }
    double error_prob(int cls) const { return cfg_.traffic.error_prob.at(static_cast<std::size_t>(cls)); }
    double mean_packet_bits(int cls) const { return cfg_.traffic.mean_packet_bits.at(static_cast<std::size_t>(cls)); }
    double arrival_prob() const { return cfg_.traffic.arrival_prob; }
    int slots_per_superframe() const { return slots_per_superframe_; }

    std::uint64_t seed() const { return cfg_.seed; }
    std::string config_hash() const { return config_hash_hex(cfg_); }

private:
    ScenarioConfig cfg_;
    std::vector<double> distances_;
    std::vector<double> gains_;
    double tx_power_w_ = 0.0;
    double noise_power_w_ = 0.0;
    int symbols_ = 1;
    int slots_per_superframe_ = 1;
};

} // namespace mmtc
