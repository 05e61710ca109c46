#pragma once

#include <vector>

namespace mmtc::quad {

// Nodes and weights for integrals of the form  integral_0^inf e^-x f(x) dx
// approximated by sum_i w_i f(x_i).
struct GaussLaguerre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computed once via Newton iteration on the Laguerre recurrence; exposed so
// tests can check moment identities at other orders.
GaussLaguerre compute_gauss_laguerre(int n);

// Cached 64-point rule used by the fading expectation.
const GaussLaguerre& gauss_laguerre_64();

} // namespace mmtc::quad
