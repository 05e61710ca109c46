#pragma once

#include <vector>

#include "mmtc/rng.hpp"

namespace mmtc::phy {

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Gaussian tail probability P(Z > x).
double q_func(double x) noexcept;

// Inverse of q_func on (0, 1). Throws std::domain_error outside that range.
double q_inv(double p);

// Urban path loss, distance in meters (>= 1 m enforced by the caller's model).
double path_loss_db(double distance_m);
double path_gain(double distance_m); // linear mean channel gain

// Normal-approximation achievable rate at blocklength `symbols` and decoding
// error probability `error_prob`, in bits per symbol. The raw variant may be
// negative at low SNR; the public rate clamps at zero.
double finite_blocklength_rate_raw(double snr, double symbols, double error_prob);
double finite_blocklength_rate(double snr, double symbols, double error_prob);

// Symbols available to one device in a data phase of frame_s seconds when its
// bandwidth_hz is split into subcarriers of symbol_bandwidth_hz, each carrying
// one symbol per symbol_duration_s. Rounded to nearest; a frame too short for
// a single symbol is a configuration error.
struct BlocklengthSpec {
    double frame_s;
    double symbol_duration_s;
    double bandwidth_hz;
    double symbol_bandwidth_hz;
};
int symbols_per_frame(const BlocklengthSpec& spec);

// Rayleigh block fading around a distance-based mean gain.
struct ChannelModel {
    std::vector<double> distance_m;
    std::vector<double> gain;     // mean linear gain per device
    double noise_power_w = 0.0;

    static ChannelModel from_distances(std::vector<double> distances, double noise_w);

    double snr_mean(int device, double tx_power_w) const;

    // |H|^2 draw, unit mean
    static double sample_power_gain(Rng& rng) { return rng.exponential(1.0); }
};

} // namespace mmtc::phy
