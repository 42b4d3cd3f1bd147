// receiver.hpp - matched filtering, noncoherent square-law integration, and
// ML delay-Doppler estimation with an RMSE experiment harness
#pragma once

#include <cstdint>
#include <string>

#include "afdmsense/ambiguity.hpp"
#include "afdmsense/channel.hpp"
#include "afdmsense/types.hpp"

namespace afdmsense {

/// Complex matched-filter map of one symbol over a (tau, nu) grid, row-major.
struct MfMap {
    std::vector<long> delays;
    std::vector<double> dopplers;
    CVec values;

    Complex at(size_t i, size_t j) const { return values[i * dopplers.size() + j]; }
};

/// Noncoherently integrated range-Doppler map.
struct RangeDopplerMap {
    std::vector<long> delays;
    std::vector<double> dopplers;
    RVec values;
    size_t integrated_symbols = 0;

    double at(size_t i, size_t j) const { return values[i * dopplers.size() + j]; }
};

struct Estimate {
    long tau = 0;
    double nu = 0.0;
    double peak = 0.0;
};

/// r~(tau,nu) = sum_n y[n] conj(x_ps[<n-tau>_{NL}]) e^{-j2pi nu n/(NL)}.
MfMap matched_filter(const CVec& y_k, const CVec& x_ps_k, const GridSpec& grid);

/// Square-law detector: r(tau,nu) = mean_k |r~_k(tau,nu)|^2.
RangeDopplerMap noncoherent_integrate(const std::vector<MfMap>& maps);

/// Grid argmax, ties broken by smallest tau then smallest nu. With
/// `interpolate`, a 3-point quadratic fit refines nu around the peak.
Estimate ml_estimate(const RangeDopplerMap& map, bool interpolate = false);

/// Strong-weak velocity-estimation experiment. The weak target's delay cell is
/// assumed known; its velocity is ML-estimated over a Doppler window of
/// +-doppler_window cells around the true value with the given grid step.
struct ScenarioConfig {
    std::vector<Target> targets;   // targets[weak_index] is the estimation subject
    size_t weak_index = 1;
    RadioConfig radio{};
    unsigned n_sym = 50;
    double doppler_window = 2.0;   // half-width, in Doppler cells
    double doppler_step = 0.0625;  // grid step, in Doppler cells
    bool interpolate = true;
    size_t trials = 500;
};

struct RmseRow {
    std::string waveform;
    double snr_db = 0.0;
    double rmse_mps = 0.0;
    size_t trials = 0;
    uint64_t seed = 0;
};

/// One row per (waveform, SNR): RMSE of the weak target's velocity estimate.
/// Deterministic given seed; trials run in parallel.
std::vector<RmseRow> rmse_experiment(const ScenarioConfig& scenario,
                                     const std::vector<std::pair<std::string, AfdmConfig>>& waveforms,
                                     const PulseShape& ps, const std::vector<double>& snr_db_list,
                                     uint64_t seed);

}  // namespace afdmsense
