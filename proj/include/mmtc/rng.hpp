#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mmtc {

// splitmix64 step; used to derive independent stream seeds from one master
// seed so that adding a consumer never shifts the draws of another.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    std::uint64_t s = master ^ (0x6a09e667f3bcc909ULL + tag * 0x9e3779b97f4a7c15ULL);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// Stream tags. One stream per random mechanism keeps replications
// reproducible regardless of evaluation order elsewhere.
namespace stream {
inline constexpr std::uint64_t placement = 1;
inline constexpr std::uint64_t arrivals = 2;
inline constexpr std::uint64_t barring = 3;
inline constexpr std::uint64_t preamble = 4;
inline constexpr std::uint64_t decoding = 5;
inline constexpr std::uint64_t fading = 6;
inline constexpr std::uint64_t game_init = 7;
inline constexpr std::uint64_t swarm = 8;
inline constexpr std::uint64_t replication = 9;
} // namespace stream

// mt19937_64 with hand-rolled variate transforms. std::uniform_real_distribution
// et al. are not guaranteed bit-identical across standard libraries; these are.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); bias is O(n / 2^64), irrelevant for the small n used here
    int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    bool bernoulli(double p) { return uniform() < p; }

    // mean > 0; uniform() < 1 keeps the log argument strictly positive
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

private:
    std::mt19937_64 eng_;
};

} // namespace mmtc
