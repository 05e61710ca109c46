#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mmtc/rng.hpp"
#include "mmtc/traffic.hpp"

using namespace mmtc;

namespace {

// Independent estimate: per-slot arrivals are iid, so the log moment
// generating function of the cumulative process factorizes into the per-slot
// sample mean of exp(theta * a).
double mc_log_mgf_rate(unsigned seed, double theta, double p, double l_bar, double slot_s,
                       int slots) {
    Rng rng(seed);
    double sum = 0.0;
    for (int i = 0; i < slots; ++i)
        sum += std::exp(theta * traffic::sample_arrival(rng, p, l_bar));
    return std::log(sum / slots) / (theta * slot_s);
}

} // namespace

TEST_CASE("effective bandwidth limits") {
    CHECK(traffic::effective_bandwidth(1e-3, 0.0, 500.0, 5e-4) == 0.0);

    // small-exponent limit recovers the mean arrival rate
    double mean_rate = 0.1 * 500.0 / 5e-4;
    CHECK(traffic::effective_bandwidth(1e-9, 0.1, 500.0, 5e-4) ==
          doctest::Approx(mean_rate).epsilon(1e-3));
    CHECK(traffic::mean_arrival_rate(0.1, 500.0, 5e-4) == doctest::Approx(mean_rate));
}

TEST_CASE("effective bandwidth domain") {
    CHECK_THROWS_AS(traffic::effective_bandwidth(2e-3, 0.1, 500.0, 5e-4), std::domain_error);
    CHECK_THROWS_AS(traffic::effective_bandwidth(1.0 / 500.0, 0.1, 500.0, 5e-4),
                    std::domain_error);
    CHECK_THROWS_AS(traffic::effective_bandwidth(0.0, 0.1, 500.0, 5e-4), std::domain_error);
    CHECK_THROWS_AS(traffic::effective_bandwidth(1e-3, -0.1, 500.0, 5e-4), std::domain_error);
    CHECK_THROWS_AS(traffic::effective_bandwidth(1e-3, 1.1, 500.0, 5e-4), std::domain_error);
    CHECK_THROWS_AS(traffic::effective_bandwidth(1e-3, 0.1, 500.0, 0.0), std::domain_error);
    CHECK_NOTHROW(traffic::effective_bandwidth(1.9e-3, 0.1, 500.0, 5e-4));
}

TEST_CASE("effective bandwidth against simulated log-MGF") {
    // The exp(theta * L) weight is heavy-tailed when theta * L_bar = 0.5, so
    // the sample mean converges slowly there; the tolerance reflects the
    // measured cross-seed spread of the estimator, not the formula's accuracy.
    double exact = traffic::effective_bandwidth(1e-3, 0.1, 500.0, 5e-4);
    double mc = mc_log_mgf_rate(20260817, 1e-3, 0.1, 500.0, 5e-4, 1000000);
    CHECK(mc == doctest::Approx(exact).epsilon(0.04));

    // lighter-tailed combination, tight tolerance
    double exact2 = traffic::effective_bandwidth(5e-4, 0.5, 400.0, 5e-4);
    double mc2 = mc_log_mgf_rate(777, 5e-4, 0.5, 400.0, 5e-4, 1000000);
    CHECK(mc2 == doctest::Approx(exact2).epsilon(0.01));
}

TEST_CASE("effective bandwidth monotone and convex in the exponent") {
    // finite differences over a grid inside the domain (theta < 1/500)
    const double p = 0.3, l_bar = 500.0, slot = 5e-4;
    const int n = 60;
    std::vector<double> vals;
    for (int i = 1; i <= n; ++i)
        vals.push_back(traffic::effective_bandwidth(1.9e-3 * i / n, p, l_bar, slot));
    for (int i = 1; i < n; ++i) CHECK(vals[i] >= vals[i - 1] - 1e-9);
    for (int i = 1; i + 1 < n; ++i)
        CHECK(vals[i + 1] - 2.0 * vals[i] + vals[i - 1] >= -1e-6 * std::abs(vals[i]));
}

TEST_CASE("effective bandwidth dominates the mean rate") {
    for (double p : {0.05, 0.3, 0.9})
        for (double theta : {1e-5, 1e-4, 1e-3, 1.9e-3}) {
            double eb = traffic::effective_bandwidth(theta, p, 500.0, 5e-4);
            CHECK(eb >= traffic::mean_arrival_rate(p, 500.0, 5e-4) - 1e-9);
        }
}

TEST_CASE("arrival sampler moments") {
    Rng rng(42);
    for (int i = 0; i < 1000; ++i) CHECK(traffic::sample_arrival(rng, 0.0, 500.0) == 0.0);

    Rng rng2(43);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += traffic::sample_arrival(rng2, 1.0, 500.0);
    CHECK(sum / n == doctest::Approx(500.0).epsilon(0.01));

    Rng rng3(44);
    double sum2 = 0.0;
    int nonzero = 0;
    for (int i = 0; i < n; ++i) {
        double a = traffic::sample_arrival(rng3, 0.1, 500.0);
        if (a > 0.0) ++nonzero;
        sum2 += a;
    }
    CHECK(sum2 / n == doctest::Approx(50.0).epsilon(0.02));
    CHECK(static_cast<double>(nonzero) / n == doctest::Approx(0.1).epsilon(0.02));
}
