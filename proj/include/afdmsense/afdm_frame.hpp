// afdm_frame.hpp - IDAFT modulation, chirp-periodic prefix and guard framing
//
// x_n = (1/sqrt(N)) sum_m s_m exp(j2pi (c1 n^2 + mn/N + c2 m^2))
//
// OFDM and OCDM are parameter special cases: 2Nc1 = 0 gives OFDM, and
// 2Nc1 = 1 with c2 = 1/(2N) gives OCDM.
#pragma once

#include <cstdint>

#include "afdmsense/constellation.hpp"
#include "afdmsense/types.hpp"

namespace afdmsense {

enum class Waveform { AFDM, OFDM, OCDM };

/// All transmit-chain parameters. c1 is carried as the integer 2N*c1 so the
/// "2Nc1 is an integer" constraint cannot be violated; values are normalized
/// into [0, 2N) on construction (the transform is periodic in that index).
struct AfdmConfig {
    unsigned n = 128;          // subcarriers
    long two_n_c1 = 0;         // integer value of 2*N*c1
    double c2 = 0.0;
    unsigned n_cp = 0;         // chirp-periodic prefix length
    unsigned m_guard = 0;      // guard prefix/suffix length (pulse half-width M)
    unsigned oversampling = 1; // L
    unsigned n_sym = 1;
    ConstellationSpec constellation{};

    void validate() const;
    /// Wrap two_n_c1 into [0, 2N).
    void normalize();

    double c1() const { return static_cast<double>(two_n_c1) / (2.0 * n); }
    unsigned symbol_span() const { return n + n_cp + 2 * m_guard; }  // per-symbol frame length
    unsigned nl() const { return n * oversampling; }

    static AfdmConfig for_waveform(Waveform w, const AfdmConfig& base);
};

/// IDAFT of one data column (length N -> length N). Unitary for all (c1, c2).
CVec idaft_modulate(const AfdmConfig& cfg, const CVec& data);

/// Inverse of idaft_modulate.
CVec daft_demodulate(const AfdmConfig& cfg, const CVec& x);

/// Prepend the chirp-periodic prefix: samples at n in [-N_cp, -1] equal
/// exp(-j2pi c1 (N^2 + 2Nn)) x_{<n>_N}.
CVec add_cpp(const AfdmConfig& cfg, const CVec& x);

/// Full guarded symbol: [guard prefix (M) | CPP (N_cp) | x (N) | guard suffix (M)].
/// Guard samples are the chirp-periodic extension of x at indices
/// [-N_cp-M, -N_cp-1] and the M indices following the symbol.
CVec add_gps(const AfdmConfig& cfg, const CVec& x);

/// Modulate and frame all N_sym columns of a column-major N x N_sym block.
CVec build_frame(const AfdmConfig& cfg, const CVec& data_block);

}  // namespace afdmsense
