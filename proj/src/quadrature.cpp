#include "mmtc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace mmtc::quad {

namespace {

// Value of L_n at z together with L_{n-1}, via the three-term recurrence.
struct LaguerrePair {
    long double ln;
    long double ln_minus_1;
};

LaguerrePair laguerre(int n, long double z) {
    long double p1 = 1.0L, p2 = 0.0L;
    for (int j = 1; j <= n; ++j) {
        long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
    }
    return {p1, p2};
}

} // namespace

GaussLaguerre compute_gauss_laguerre(int n) {
    if (n < 1) throw std::domain_error("gauss_laguerre: order must be >= 1");

    GaussLaguerre rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    long double z = 0.0L;
    for (int i = 0; i < n; ++i) {
        // Stroud/Secrest starting guesses, then Newton.
        if (i == 0) {
            z = 3.0L / (1.0L + 2.4L * n);
        } else if (i == 1) {
            z += 15.0L / (1.0L + 2.5L * n);
        } else {
            long double ai = i - 1;
            z += ((1.0L + 2.55L * ai) / (1.9L * ai)) *
                 (z - static_cast<long double>(rule.nodes[static_cast<std::size_t>(i) - 2]));
        }

        LaguerrePair lp{};
        for (int it = 0; it < 200; ++it) {
            lp = laguerre(n, z);
            long double deriv = n * (lp.ln - lp.ln_minus_1) / z;
            long double step = lp.ln / deriv;
            z -= step;
            if (std::abs(step) <= 1e-18L * std::abs(z)) break;
        }

        lp = laguerre(n, z);
        long double lnp1 = ((2 * n + 1 - z) * lp.ln - n * lp.ln_minus_1) / (n + 1);
        long double w = z / ((n + 1.0L) * (n + 1.0L) * lnp1 * lnp1);

        rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(z);
        rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(w);
    }
    return rule;
}

const GaussLaguerre& gauss_laguerre_64() {
    static const GaussLaguerre rule = [] {
        GaussLaguerre r = compute_gauss_laguerre(64);
        // moment checks: integral of e^-x {1, x, x^2} = {1, 1, 2}
        long double m0 = 0, m1 = 0, m2 = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            m0 += r.weights[i];
            m1 += r.weights[i] * r.nodes[i];
            m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        }
        if (std::abs(static_cast<double>(m0) - 1.0) > 1e-12 ||
            std::abs(static_cast<double>(m1) - 1.0) > 1e-11 ||
            std::abs(static_cast<double>(m2) - 2.0) > 1e-10)
            throw std::logic_error("gauss_laguerre_64: moment identities violated");
        return r;
    }();
    return rule;
}

} // namespace mmtc::quad
