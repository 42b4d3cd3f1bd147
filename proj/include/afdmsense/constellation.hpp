// constellation.hpp - unit-power PSK/QAM alphabets and i.i.d. symbol draws
#pragma once

#include <cstdint>
#include <string>

#include "afdmsense/types.hpp"

namespace afdmsense {

enum class ConstellationKind { PSK, QAM };

/// A zero-mean, zero-pseudo-mean, unit-power constellation.
///
/// PSK uses an initial rotation of pi/order so the alphabet mean vanishes for
/// every order; QAM orders must be perfect squares (4, 16, 64, ...). PSK(2) is
/// rejected: no rotation of BPSK has zero pseudo-mean.
struct ConstellationSpec {
    ConstellationKind kind = ConstellationKind::QAM;
    unsigned order = 16;

    void validate() const;
    std::string name() const;

    static ConstellationSpec parse(const std::string& name);  // "qam16", "psk4", ...
};

/// Full alphabet, normalized so mean |point|^2 == 1 exactly.
CVec constellation_points(const ConstellationSpec& spec);

/// Kurtosis mu4 = mean |point|^4 over the alphabet (1 for PSK, (1,2) for QAM).
double kurtosis(const ConstellationSpec& spec);

/// `count` i.i.d. uniform draws from the alphabet; deterministic given seed.
CVec draw_symbols(const ConstellationSpec& spec, size_t count, uint64_t seed);

}  // namespace afdmsense
