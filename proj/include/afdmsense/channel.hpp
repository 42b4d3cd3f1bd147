// channel.hpp - point-target echo synthesis over the pulse-shaped frame:
// delay, fast/slow-time Doppler, Swerling fluctuation, additive noise
#pragma once

#include <cstdint>
#include <optional>

#include "afdmsense/afdm_frame.hpp"
#include "afdmsense/pulse_shaping.hpp"
#include "afdmsense/types.hpp"

namespace afdmsense {

enum class Fluctuation { Swerling0, Swerling2 };

struct Target {
    double range_m = 0.0;
    double velocity_mps = 0.0;
    double mean_amp = 1.0;  // RMS reflection amplitude (Swerling2 draws CN(0, mean_amp^2))
    Fluctuation fluctuation = Fluctuation::Swerling2;
};

struct RadioConfig {
    double fc_hz = 24e9;
    double delta_f_hz = 15e3;  // subcarrier spacing; f_s = N * delta_f
    double snr_db = 0.0;

    double fs_hz(unsigned n) const { return delta_f_hz * n; }
};

/// Normalized target parameters: integer delay at the oversampled rate L*f_s
/// (with the rounding residual for diagnostics) and real normalized Doppler.
struct NormalizedParams {
    long tau_samples = 0;        // round(2 range L fs / c)
    double nu = 0.0;             // 2 v fc N / (c fs), unwrapped
    double tau_residual = 0.0;   // exact value minus rounded value
};

NormalizedParams normalized_params(const Target& target, const RadioConfig& radio,
                                   const AfdmConfig& cfg);

/// Received symbol matrix Y (NL x N_sym, column-major): full aperiodic chain —
/// frame, upsample, linear-filter, per-target delay/Doppler/fluctuation on the
/// filtered stream, noise, transition trim, and guard/CPP removal.
///
/// Each target's integer delay must not exceed N_cp * L. An empty target list
/// gives a pure-noise matrix. noise_off disables the noise term (used by the
/// periodic-model equivalence checks).
CVec synthesize_echo(const CVec& data_block, const AfdmConfig& cfg, const PulseShape& ps,
                     const std::vector<Target>& targets, const RadioConfig& radio,
                     uint64_t seed, bool noise_off = false);

/// Same echo through the periodic model: each received symbol is a periodic
/// shift + Doppler ramp of the pulse-shaped symbol. Matches synthesize_echo
/// exactly (noise off); used as the fast path for large experiments.
CVec synthesize_echo_periodic(const CVec& data_block, const AfdmConfig& cfg,
                              const PulseShape& ps, const std::vector<Target>& targets,
                              const RadioConfig& radio, uint64_t seed, bool noise_off = false);

/// Per-symbol reference: the pulse-shaped symbols x_ps,k (NL x N_sym).
CVec shaped_reference(const CVec& data_block, const AfdmConfig& cfg, const PulseShape& ps);

/// Expected mean received signal power per sample (all targets, noise off);
/// the noise variance at snr_db is this divided by 10^(snr/10).
double mean_signal_power(const std::vector<Target>& targets, unsigned oversampling);

}  // namespace afdmsense
