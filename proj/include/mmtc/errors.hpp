#pragma once

#include <stdexcept>
#include <string>

namespace mmtc {

// Bad or inconsistent scenario input. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A QoS target cannot be met anywhere in the admissible range (exit code 4).
class InfeasibleQosError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A root bracket never changes sign: the queue is unconditionally stable or
// unstable over the search interval (also exit code 4).
class NoCrossingError : public InfeasibleQosError {
public:
    using InfeasibleQosError::InfeasibleQosError;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int no_convergence = 3;
inline constexpr int infeasible = 4;
} // namespace exit_code

} // namespace mmtc
