// design_guideline.hpp - forbidden-c1 rule for strong-weak target scenarios
// and a depression-collision-checked chooser for 2Nc1
#pragma once

#include <vector>

#include "afdmsense/types.hpp"

namespace afdmsense {

struct GuidelineInput {
    double d_strong_m = 0.0;
    double d_weak_m = 0.0;
    double v_strong_mps = 0.0;
    double v_weak_mps = 0.0;
    double fc_hz = 24e9;
    double fs_hz = 1.92e6;
    unsigned n = 128;
    double sigma_c = 0.0;  // robustness half-width around each forbidden center
};

struct ForbiddenInterval {
    long k = 0;
    double center = 0.0;  // c1 value to avoid
    double lo = 0.0;
    double hi = 0.0;
};

struct CandidateVerdict {
    long two_n_c1 = 0;
    double c1 = 0.0;
    bool analytic_forbidden = false;  // inside a robustness interval
    bool depression_collision = false;  // weak target cell on a strong-target depression
    bool accepted = false;
};

struct DesignReport {
    std::vector<ForbiddenInterval> intervals;
    std::vector<CandidateVerdict> verdicts;
    long chosen_two_n_c1 = -1;
    long delta_tau = 0;   // rounded delay gap (symbol-rate cells)
    long delta_nu = 0;    // rounded, wrapped Doppler gap (cells)
};

/// Forbidden c1 centers c(v_w - v_s) fc / (2 (d_w - d_s) fs^2) + k c / (4 (d_w - d_s) fs)
/// for k in [k_min, k_max], each with its [center - sigma_c, center + sigma_c] interval.
std::vector<ForbiddenInterval> forbidden_c1(const GuidelineInput& input, long k_min, long k_max);

/// True when c1 falls in some robustness interval of the forbidden family.
bool is_forbidden_c1(const GuidelineInput& input, double c1);

/// True when the strong-weak cell gap lands on a depression: <2Nc1 dtau>_N == <dnu>_N,
/// with the gaps rounded to integer cells.
bool depression_collision(const GuidelineInput& input, long two_n_c1);

/// Smallest candidate passing both the analytic rule and the geometric
/// depression test, with the full per-candidate verdict table. Throws
/// ScenarioError listing the collisions when no candidate survives.
DesignReport choose_two_n_c1(const GuidelineInput& input, const std::vector<long>& candidates);

}  // namespace afdmsense
