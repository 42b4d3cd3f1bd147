// types.hpp - shared scalar/vector types and error categories
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace afdmsense {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

// Speed of light, radar convention (matches the usual 3e8 scenario arithmetic).
inline constexpr double kSpeedOfLight = 3.0e8;

/// Invalid configuration or parameterization (maps to CLI exit code 2).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mismatched vector/matrix dimensions.
struct DimensionError : ConfigError {
    using ConfigError::ConfigError;
};

/// Scenario that cannot be simulated as specified (maps to CLI exit code 3).
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double energy(const CVec& v) {
    double e = 0.0;
    for (const auto& z : v) e += std::norm(z);
    return e;
}

}  // namespace afdmsense
