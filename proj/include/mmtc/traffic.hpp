#pragma once

#include "mmtc/rng.hpp"

namespace mmtc::traffic {

// Effective bandwidth (bits/s) of a Bernoulli(p) per-slot source whose packet
// sizes are exponential with mean mean_packet_bits. Defined for
// theta * mean_packet_bits < 1; throws std::domain_error otherwise.
double effective_bandwidth(double theta, double arrival_prob, double mean_packet_bits,
                           double slot_s);

inline double mean_arrival_rate(double arrival_prob, double mean_packet_bits, double slot_s) {
    return arrival_prob * mean_packet_bits / slot_s;
}

// One slot's arrival in bits: 0 with probability 1-p, else an exponential
// packet size. Two draws per call, always, so streams stay aligned.
double sample_arrival(Rng& rng, double arrival_prob, double mean_packet_bits);

} // namespace mmtc::traffic
