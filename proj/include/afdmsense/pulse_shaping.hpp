// pulse_shaping.hpp - RRC prototype filter, effective periodic response, and
// the pulse-level correlation quantities (PACF, SSE, pulse DPAF)
#pragma once

#include "afdmsense/types.hpp"

namespace afdmsense {

/// Finite-tap real prototype filter with 2ML+1 taps, unit energy, and even
/// symmetry about the center tap (index ML).
struct PulseShape {
    RVec taps;          // length 2ML+1
    unsigned m = 0;     // half-width in symbol periods
    unsigned l = 1;     // oversampling ratio
    double rolloff = 0.0;

    unsigned center() const { return m * l; }
    bool is_rect() const { return taps.size() == 1; }
};

/// Effective periodic pulse response g (first column of the periodic
/// shaping matrix): the prototype placed circularly with its center at 0.
struct EffectiveResponse {
    RVec g;          // length NL
    unsigned n = 0;  // subcarriers
    unsigned l = 1;  // oversampling
    unsigned m = 0;  // pulse half-width

    unsigned nl() const { return static_cast<unsigned>(g.size()); }
};

/// Root-raised-cosine taps sampled at t = (k - ML) Ts, T = L Ts, normalized to
/// unit energy after truncation. The removable singularities at t = 0 and
/// |t| = T/(4a) are evaluated by their analytic limits.
PulseShape rrc_taps(unsigned m, unsigned l, double rolloff);

/// Degenerate single-tap pulse; with L = 1 the shaped chain collapses to the
/// unshaped one (periodic shaping matrix = identity).
PulseShape rect_pulse(unsigned l);

/// Circular placement of the prototype into an NL-vector centered at index 0.
/// Requires NL >= 2ML+1 so the placement does not overlap itself.
EffectiveResponse effective_response(const PulseShape& ps, unsigned n);

/// Insert L-1 zeros after every sample.
CVec upsample(const CVec& x, unsigned l);

/// Periodic pulse shaping of one upsampled symbol (circular convolution with g).
CVec shape_periodic(const EffectiveResponse& g, const CVec& x_up);

/// Convenience: upsample + shape_periodic. Output has length NL.
CVec shape_symbol(const EffectiveResponse& g, const CVec& x);

/// Aperiodic (linear-convolution) shaping of an upsampled stream; output has
/// input length + 2ML extra transition samples.
CVec shape_aperiodic(const PulseShape& ps, const CVec& stream_up);

/// PACF of the effective response: R_g(tau) = sum_m g_m g_{<m-tau>_{NL}}.
double pacf(const EffectiveResponse& g, long tau);

/// Spectrum of the squared envelope: F_g(nu) = sum_m |g_m|^2 e^{-j2pi nu m/(NL)}.
Complex sse(const EffectiveResponse& g, double nu);

/// Pulse DPAF: chi_g(tau, nu) = sum_m g_m g_{<m-tau>_{NL}} e^{-j2pi nu m/(NL)}.
/// chi_g(tau, 0) = R_g(tau) and chi_g(0, nu) = F_g(nu).
Complex pulse_dpaf(const EffectiveResponse& g, long tau, double nu);

}  // namespace afdmsense
