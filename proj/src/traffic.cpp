#include "mmtc/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace mmtc::traffic {

double effective_bandwidth(double theta, double arrival_prob, double mean_packet_bits,
                           double slot_s) {
    if (!(theta > 0.0)) throw std::domain_error("effective_bandwidth: theta must be > 0");
    if (!(arrival_prob >= 0.0 && arrival_prob <= 1.0))
        throw std::domain_error("effective_bandwidth: arrival probability outside [0, 1]");
    if (!(mean_packet_bits > 0.0 && slot_s > 0.0))
        throw std::domain_error("effective_bandwidth: packet size and slot must be > 0");
    double tl = theta * mean_packet_bits;
    if (!(tl < 1.0))
        throw std::domain_error(
            "effective_bandwidth: theta * mean packet size must be < 1 (MGF diverges)");

    // log E[e^{theta a}] for a = B * Exp(mean); the exponential MGF is 1/(1 - tl)
    double mgf = arrival_prob / (1.0 - tl) + (1.0 - arrival_prob);
    return std::log(mgf) / (theta * slot_s);
}

double sample_arrival(Rng& rng, double arrival_prob, double mean_packet_bits) {
    bool active = rng.bernoulli(arrival_prob);
    double size = rng.exponential(mean_packet_bits);
    return active ? size : 0.0;
}

} // namespace mmtc::traffic
