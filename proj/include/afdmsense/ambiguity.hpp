// ambiguity.hpp - discrete periodic ambiguity function: per-realization,
// Monte Carlo average, and closed-form expectations for AFDM/OFDM/OCDM with
// and without pulse shaping
#pragma once

#include <cstdint>
#include <optional>

#include "afdmsense/afdm_frame.hpp"
#include "afdmsense/pulse_shaping.hpp"
#include "afdmsense/types.hpp"

namespace afdmsense {

/// Rectangular (tau, nu) evaluation grid. Delays are integers; Doppler values
/// may be fractional.
struct GridSpec {
    std::vector<long> delays;
    std::vector<double> dopplers;

    static GridSpec regular(long tau_min, long tau_max, long tau_step,
                            double nu_min, double nu_max, double nu_step);
    bool dopplers_are_integer() const;
};

enum class GridNormalization { Absolute, MainlobeDb };

/// 2-D array of nonnegative reals over (delay, Doppler) with axis metadata and
/// an optional per-cell standard-error channel (for Monte Carlo 3-sigma bands).
struct DpafGrid {
    std::vector<long> delays;
    std::vector<double> dopplers;
    std::vector<double> values;               // row-major: [delay][doppler]
    std::vector<double> standard_errors;      // empty unless Monte Carlo
    GridNormalization normalization = GridNormalization::Absolute;
    bool fractional_doppler_approximate = false;  // PS theory evaluated off the integer grid

    double& at(size_t i, size_t j) { return values[i * dopplers.size() + j]; }
    double at(size_t i, size_t j) const { return values[i * dopplers.size() + j]; }
    double stderr_at(size_t i, size_t j) const { return standard_errors[i * dopplers.size() + j]; }
};

/// Depression positions of the average squared DPAF (value (mu4-1)N cells).
struct DepressionMap {
    std::vector<std::pair<long, long>> entries;  // (tau, <2Nc1 tau>_N)
    std::optional<long> delay_gap;               // N/(2Nc1) when 2Nc1 | N
    std::optional<long> doppler_gap;             // 2Nc1 when 2Nc1 | N
};

/// Squared Dirichlet kernel |sin(pi x)/sin(pi x/N)|^2 with the removable
/// singularity at x = 0 (mod N) evaluated as N^2. Exact 0 at the other
/// integers so integer-grid theory values are exact.
double dirichlet_sq(double x, unsigned n);

/// One-realization DPAF of a (pulse-shaped) symbol:
/// chi(tau, nu) = sum_n x[n] conj(x[<n-tau>_{NL}]) e^{-j2pi nu n/(NL)}.
Complex dpaf_realization(const CVec& x_ps, long tau, double nu);

/// Mean of |chi|^2 over `trials` independent symbols, one per trial, with the
/// per-cell standard error filled in. Deterministic given seed (trial t uses
/// derive_seed(seed, t)); trials run in parallel.
DpafGrid dpaf_monte_carlo(const AfdmConfig& cfg, const PulseShape& ps,
                          const GridSpec& grid, size_t trials, uint64_t seed);

/// Closed-form average squared DPAF of unshaped AFDM (valid for fractional nu).
double dpaf_theory_nops(const AfdmConfig& cfg, long tau, double nu);

/// OFDM reduction (2Nc1 = 0) of the closed form, evaluated directly.
double dpaf_theory_ofdm(const AfdmConfig& cfg, long tau, double nu);

/// OCDM reduction (2Nc1 = 1) of the closed form, evaluated directly.
double dpaf_theory_ocdm(const AfdmConfig& cfg, long tau, double nu);

/// Closed-form average squared DPAF of pulse-shaped AFDM. Exact on the integer
/// Doppler grid; fractional nu is evaluated as stated but is approximate.
double dpaf_theory_ps(const AfdmConfig& cfg, const EffectiveResponse& g, long tau, double nu);

/// Theory evaluation over a full grid (per-Doppler pulse-DPAF tables reused).
DpafGrid dpaf_theory_ps_grid(const AfdmConfig& cfg, const EffectiveResponse& g,
                             const GridSpec& grid);
DpafGrid dpaf_theory_nops_grid(const AfdmConfig& cfg, const GridSpec& grid);

/// Theoretical mainlobe of the unshaped DPAF: N^2 + (mu4 - 1) N.
double mainlobe_nops(const AfdmConfig& cfg);

/// Specialized mainlobe formula for the pulse-shaped DPAF; requires
/// two_n_c1 >= 1 and 2Nc1 | N (otherwise evaluate dpaf_theory_ps at (0,0)).
double mainlobe_ps(const AfdmConfig& cfg, const EffectiveResponse& g);

/// Average delay cut (nu = 0) over the given delays, via the specialized form.
RVec delay_cut_ps(const AfdmConfig& cfg, const EffectiveResponse& g,
                  const std::vector<long>& delays);

/// Average Doppler cut (tau = 0) over the given Doppler values.
RVec doppler_cut_ps(const AfdmConfig& cfg, const EffectiveResponse& g,
                    const std::vector<double>& dopplers);

/// All N-1 sidelobe depressions (tau, <2Nc1 tau>_N), tau in [1, N-1], with the
/// adjacent-gap geometry when 2Nc1 divides N.
DepressionMap find_depressions(const AfdmConfig& cfg);

}  // namespace afdmsense
