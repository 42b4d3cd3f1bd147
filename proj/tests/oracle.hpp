// oracle.hpp - test-only independent reference implementations: brute-force
// expectation of the squared DPAF via the fourth-moment identity, direct
// double-sum transforms, and explicit shift/shaping matrices. Nothing here
// shares code with the library paths it checks.
#pragma once

#include "afdmsense/afdm_frame.hpp"
#include "afdmsense/pulse_shaping.hpp"
#include "afdmsense/types.hpp"

namespace afdmsense::oracle {

/// Exact E{|chi(tau,nu)|^2} of the unshaped chain (L = 1) by enumerating all
/// (m1,m2,m3,m4) constellation-index quadruples with the three-delta
/// fourth-moment weights. O(N^4) per cell; intended for N <= 8.
double dpaf_expectation_exact(const AfdmConfig& cfg, long tau, double nu);

/// O(N^2) double-sum IDAFT, straight from the transform definition.
CVec idaft_direct(const AfdmConfig& cfg, const CVec& data);

/// Demodulation via the explicit conjugate-transpose of the modulation matrix.
CVec daft_via_matrix_inverse(const AfdmConfig& cfg, const CVec& x);

/// Explicit NL x NL periodic shaping matrix (column j = effective response
/// circularly shifted down by j) applied to an upsampled vector.
CVec periodic_matrix_apply(const EffectiveResponse& g, const CVec& x_up);

/// DPAF through an explicit circular-shift matrix and Doppler diagonal.
Complex dpaf_via_matrices(const CVec& x, long tau, double nu);

/// Mean and standard error of a sample.
struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};
MeanStderr mean_stderr(const RVec& samples);

}  // namespace afdmsense::oracle
