#include "afdmsense/design_guideline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace afdmsense {
namespace {

long wrap(long i, long n) { return ((i % n) + n) % n; }

struct Family {
    double base = 0.0;  // k = 0 center
    double step = 0.0;  // spacing between adjacent centers
};

Family family(const GuidelineInput& in) {
    const double dd = in.d_weak_m - in.d_strong_m;
    if (dd == 0.0)
        throw ScenarioError("design guideline degenerate: strong and weak ranges coincide");
    if (in.fs_hz <= 0.0 || in.fc_hz <= 0.0)
        throw ConfigError("design guideline: carrier and sampling rates must be positive");
    Family f;
    // velocity term: dnu/(2N dtau) expressed in physical quantities; the speed
    // of light cancels (it must, for c1 to come out dimensionless)
    f.base = (in.v_weak_mps - in.v_strong_mps) * in.fc_hz / (2.0 * dd * in.fs_hz * in.fs_hz);
    f.step = kSpeedOfLight / (4.0 * dd * in.fs_hz);
    return f;
}

}  // namespace

std::vector<ForbiddenInterval> forbidden_c1(const GuidelineInput& input, long k_min, long k_max) {
    if (k_max < k_min) throw ConfigError("forbidden_c1: empty k range");
    const Family f = family(input);
    std::vector<ForbiddenInterval> out;
    out.reserve(static_cast<size_t>(k_max - k_min + 1));
    for (long k = k_min; k <= k_max; ++k) {
        const double center = f.base + static_cast<double>(k) * f.step;
        out.push_back({k, center, center - input.sigma_c, center + input.sigma_c});
    }
    return out;
}

bool is_forbidden_c1(const GuidelineInput& input, double c1) {
    const Family f = family(input);
    // tolerance well below the smallest nonzero gap |step|/N between c1 and the family
    const double tol = 1e-9 * std::abs(f.step);
    const double k_star = std::round((c1 - f.base) / f.step);
    for (long dk = -1; dk <= 1; ++dk) {
        const double center = f.base + (k_star + dk) * f.step;
        if (std::abs(c1 - center) <= input.sigma_c + tol) return true;
    }
    return false;
}

bool depression_collision(const GuidelineInput& input, long two_n_c1) {
    const double dd = input.d_weak_m - input.d_strong_m;
    if (dd == 0.0)
        throw ScenarioError("design guideline degenerate: strong and weak ranges coincide");
    const long n = input.n;
    const long dtau = std::lround(2.0 * dd * input.fs_hz / kSpeedOfLight);
    const long dnu = std::lround(2.0 * (input.v_weak_mps - input.v_strong_mps) * input.fc_hz * n /
                                 (kSpeedOfLight * input.fs_hz));
    return wrap(two_n_c1 * dtau, n) == wrap(dnu, n);
}

DesignReport choose_two_n_c1(const GuidelineInput& input, const std::vector<long>& candidates) {
    if (candidates.empty()) throw ConfigError("choose_two_n_c1: no candidates");
    const Family f = family(input);
    const long n = input.n;

    DesignReport report;
    const double dd = input.d_weak_m - input.d_strong_m;
    report.delta_tau = std::lround(2.0 * dd * input.fs_hz / kSpeedOfLight);
    report.delta_nu = wrap(std::lround(2.0 * (input.v_weak_mps - input.v_strong_mps) * input.fc_hz *
                                       n / (kSpeedOfLight * input.fs_hz)),
                           n);

    // intervals covering c1 in [0, 1) for the report
    const long k_lo = static_cast<long>(std::floor((0.0 - f.base) / f.step)) - 1;
    const long k_hi = static_cast<long>(std::ceil((1.0 - f.base) / f.step)) + 1;
    report.intervals = forbidden_c1(input, std::min(k_lo, k_hi), std::max(k_lo, k_hi));

    for (long cand : candidates) {
        if (cand < 1 || cand >= 2 * n)
            throw ConfigError("choose_two_n_c1: candidates must lie in [1, 2N-1]");
        CandidateVerdict v;
        v.two_n_c1 = cand;
        v.c1 = static_cast<double>(cand) / (2.0 * n);
        v.analytic_forbidden = is_forbidden_c1(input, v.c1);
        v.depression_collision = depression_collision(input, cand);
        v.accepted = !v.analytic_forbidden && !v.depression_collision;
        report.verdicts.push_back(v);
        if (v.accepted && report.chosen_two_n_c1 < 0) report.chosen_two_n_c1 = cand;
    }
    if (report.chosen_two_n_c1 < 0) {
        std::ostringstream msg;
        msg << "no candidate 2Nc1 avoids the forbidden set:";
        for (const auto& v : report.verdicts)
            msg << " [" << v.two_n_c1 << (v.analytic_forbidden ? " analytic" : "")
                << (v.depression_collision ? " collision" : "") << "]";
        throw ScenarioError(msg.str());
    }
    return report;
}

}  // namespace afdmsense
