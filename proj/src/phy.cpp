#include "mmtc/phy.hpp"

#include <cmath>
#include <stdexcept>

#include "mmtc/errors.hpp"

namespace mmtc::phy {

namespace {
constexpr double sqrt2 = 1.4142135623730951;
constexpr double inv_sqrt_2pi = 0.3989422804014327;
constexpr double log2_e = 1.4426950408889634;

double gauss_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }
} // namespace

double q_func(double x) noexcept { return 0.5 * std::erfc(x / sqrt2); }

double q_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("q_inv: probability must lie strictly in (0, 1)");

    // Newton with a bisection safeguard on the bracket [lo, hi].
    // q_func is strictly decreasing, so the root stays bracketed.
    double lo = -45.0, hi = 45.0;
    double x = 0.0;
    for (int it = 0; it < 200; ++it) {
        double f = q_func(x) - p;
        if (f > 0.0) lo = x; else hi = x;
        if (std::abs(f) <= 1e-14 * p) break;

        double step = f / gauss_pdf(x); // f' = -pdf, so x_next = x + f/pdf
        double next = x + step;
        if (!(next > lo && next < hi) || !std::isfinite(next))
            next = 0.5 * (lo + hi);
        if (next == x) break;
        x = next;
    }
    return x;
}

double path_loss_db(double distance_m) {
    if (!(distance_m >= 1.0))
        throw std::domain_error("path_loss_db: distance must be >= 1 m");
    return 60.0 + 37.6 * std::log10(distance_m);
}

double path_gain(double distance_m) { return db_to_linear(-path_loss_db(distance_m)); }

double finite_blocklength_rate_raw(double snr, double symbols, double error_prob) {
    if (!(snr >= 0.0)) throw std::domain_error("rate: snr must be >= 0");
    if (!(symbols >= 1.0)) throw std::domain_error("rate: blocklength must be >= 1");
    if (!(error_prob > 0.0 && error_prob < 1.0))
        throw std::domain_error("rate: error probability must lie in (0, 1)");

    double one_plus = 1.0 + snr;
    double dispersion = (1.0 - 1.0 / (one_plus * one_plus)) / symbols;
    return std::log2(one_plus) - std::sqrt(dispersion) * q_inv(error_prob) * log2_e;
}

double finite_blocklength_rate(double snr, double symbols, double error_prob) {
    double r = finite_blocklength_rate_raw(snr, symbols, error_prob);
    return r > 0.0 ? r : 0.0;
}

int symbols_per_frame(const BlocklengthSpec& spec) {
    if (!(spec.frame_s > 0.0 && spec.symbol_duration_s > 0.0 &&
          spec.bandwidth_hz > 0.0 && spec.symbol_bandwidth_hz > 0.0))
        throw ConfigError("symbols_per_frame: all durations and bandwidths must be > 0");
    double s = (spec.frame_s / spec.symbol_duration_s) *
               (spec.bandwidth_hz / spec.symbol_bandwidth_hz);
    long rounded = std::lround(s);
    if (rounded < 1)
        throw ConfigError("symbols_per_frame: frame too short for one symbol");
    return static_cast<int>(rounded);
}

ChannelModel ChannelModel::from_distances(std::vector<double> distances, double noise_w) {
    if (!(noise_w > 0.0))
        throw std::domain_error("ChannelModel: noise power must be > 0");
    ChannelModel model;
    model.gain.reserve(distances.size());
    for (double d : distances) model.gain.push_back(path_gain(d));
    model.distance_m = std::move(distances);
    model.noise_power_w = noise_w;
    return model;
}

double ChannelModel::snr_mean(int device, double tx_power_w) const {
    return tx_power_w * gain.at(static_cast<std::size_t>(device)) / noise_power_w;
}

} // namespace mmtc::phy
