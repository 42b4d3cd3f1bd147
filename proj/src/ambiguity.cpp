#include "afdmsense/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "afdmsense/fft.hpp"
#include "afdmsense/rng.hpp"

namespace afdmsense {
namespace {

long wrap(long i, long n) { return ((i % n) + n) % n; }

Complex unit_phase(double turns) {
    return {std::cos(2.0 * M_PI * turns), std::sin(2.0 * M_PI * turns)};
}

// One pulse-shaped symbol from a derived seed.
CVec random_shaped_symbol(const AfdmConfig& cfg, const EffectiveResponse& g, uint64_t seed) {
    const CVec s = draw_symbols(cfg.constellation, cfg.n, seed);
    const CVec x = idaft_modulate(cfg, s);
    if (g.l == 1 && g.m == 0) return x;  // rect pulse, L = 1: chain collapses
    return shape_symbol(g, x);
}

}  // namespace

GridSpec GridSpec::regular(long tau_min, long tau_max, long tau_step,
                           double nu_min, double nu_max, double nu_step) {
    if (tau_step <= 0 || nu_step <= 0.0) throw ConfigError("grid steps must be positive");
    if (tau_max < tau_min || nu_max < nu_min) throw ConfigError("grid ranges must be nonempty");
    GridSpec grid;
    for (long t = tau_min; t <= tau_max; t += tau_step) grid.delays.push_back(t);
    // integer step count avoids FP drift across the axis
    const long count = static_cast<long>(std::floor((nu_max - nu_min) / nu_step + 1e-9));
    for (long i = 0; i <= count; ++i) grid.dopplers.push_back(nu_min + i * nu_step);
    return grid;
}

bool GridSpec::dopplers_are_integer() const {
    for (double nu : dopplers)
        if (nu != std::round(nu)) return false;
    return true;
}

double dirichlet_sq(double x, unsigned n) {
    const double nn = static_cast<double>(n);
    const double r = std::remainder(x, nn);  // in [-N/2, N/2]
    if (r == std::round(r)) {
        // exact integer residue: kernel is exactly N^2 at 0 and 0 elsewhere
        return r == 0.0 ? nn * nn : 0.0;
    }
    const double s = std::sin(M_PI * r) / std::sin(M_PI * r / nn);
    return s * s;
}

Complex dpaf_realization(const CVec& x_ps, long tau, double nu) {
    const long nl = static_cast<long>(x_ps.size());
    const long t = wrap(tau, nl);
    Complex acc{0.0, 0.0};
    for (long i = 0; i < nl; ++i)
        acc += x_ps[i] * std::conj(x_ps[wrap(i - t, nl)]) *
               unit_phase(-nu * static_cast<double>(i) / nl);
    return acc;
}

DpafGrid dpaf_monte_carlo(const AfdmConfig& cfg, const PulseShape& ps,
                          const GridSpec& grid, size_t trials, uint64_t seed) {
    cfg.validate();
    if (trials < 1) throw ConfigError("dpaf_monte_carlo: trials must be >= 1");
    const EffectiveResponse g = effective_response(ps, cfg.n);
    const long nl = g.nl();
    for (long t : grid.delays)
        if (t < 0 || t >= nl)
            throw ConfigError("dpaf_monte_carlo: delay grid must lie in [0, NL)");

    const size_t nt = grid.delays.size();
    const size_t nv = grid.dopplers.size();
    const size_t cells = nt * nv;
    const bool integer_nu = grid.dopplers_are_integer();

    struct Partial {
        std::vector<double> sum, sumsq;
    };

    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>((trials + 63) / 64)));
    std::vector<Partial> partials(workers, Partial{std::vector<double>(cells, 0.0),
                                                   std::vector<double>(cells, 0.0)});

    // strategy: tall grids (many delays, few Dopplers) go through a per-Doppler
    // circular cross-correlation, chi(., nu) = ifft(fft(x . ramp) conj(fft(x)));
    // otherwise integer-Doppler grids use one FFT per delay, and the rest fall
    // back to direct sums
    const bool per_doppler = nt >= 4 * nv || (!integer_nu && nt > 8);

    auto run_worker = [&](unsigned w) {
        Partial& acc = partials[w];
        CVec prod(nl);
        for (size_t t = w; t < trials; t += workers) {
            const CVec x = random_shaped_symbol(cfg, g, derive_seed(seed, t));
            if (per_doppler) {
                CVec xf = fft::forward(x);
                for (auto& v : xf) v = std::conj(v);
                CVec ramped(nl);
                for (size_t iv = 0; iv < nv; ++iv) {
                    const double nu = grid.dopplers[iv];
                    for (long i = 0; i < nl; ++i)
                        ramped[i] = x[i] * unit_phase(-nu * double(i) / nl);
                    CVec uf = fft::forward(ramped);
                    for (long i = 0; i < nl; ++i) uf[i] *= xf[i];
                    const CVec chi = fft::backward(uf);  // chi(tau, nu) * NL over all tau
                    const double scale = 1.0 / static_cast<double>(nl);
                    for (size_t it = 0; it < nt; ++it) {
                        const double v = std::norm(chi[grid.delays[it]] * scale);
                        acc.sum[it * nv + iv] += v;
                        acc.sumsq[it * nv + iv] += v * v;
                    }
                }
                continue;
            }
            for (size_t it = 0; it < nt; ++it) {
                const long tau = grid.delays[it];
                for (long i = 0; i < nl; ++i)
                    prod[i] = x[i] * std::conj(x[wrap(i - tau, nl)]);
                if (integer_nu) {
                    const CVec spec = fft::forward(prod);  // chi(tau, k) for all integer k
                    for (size_t iv = 0; iv < nv; ++iv) {
                        const long k = wrap(static_cast<long>(std::llround(grid.dopplers[iv])), nl);
                        const double v = std::norm(spec[k]);
                        acc.sum[it * nv + iv] += v;
                        acc.sumsq[it * nv + iv] += v * v;
                    }
                } else {
                    for (size_t iv = 0; iv < nv; ++iv) {
                        Complex chi{0.0, 0.0};
                        for (long i = 0; i < nl; ++i)
                            chi += prod[i] * unit_phase(-grid.dopplers[iv] * double(i) / nl);
                        const double v = std::norm(chi);
                        acc.sum[it * nv + iv] += v;
                        acc.sumsq[it * nv + iv] += v * v;
                    }
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run_worker, w);
    run_worker(0);
    for (auto& th : pool) th.join();

    DpafGrid out;
    out.delays = grid.delays;
    out.dopplers = grid.dopplers;
    out.values.assign(cells, 0.0);
    out.standard_errors.assign(cells, 0.0);
    const double n = static_cast<double>(trials);
    for (size_t c = 0; c < cells; ++c) {
        double sum = 0.0, sumsq = 0.0;
        for (const auto& p : partials) {  // fixed merge order keeps runs reproducible
            sum += p.sum[c];
            sumsq += p.sumsq[c];
        }
        const double mean = sum / n;
        out.values[c] = mean;
        if (trials > 1) {
            const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
            out.standard_errors[c] = std::sqrt(var / n);
        }
    }
    return out;
}

double dpaf_theory_nops(const AfdmConfig& cfg, long tau, double nu) {
    const unsigned n = cfg.n;
    const double mu4 = kurtosis(cfg.constellation);
    const double a = static_cast<double>(cfg.two_n_c1) * tau - nu;
    double third = 0.0;
    for (unsigned m = 0; m < n; ++m) third += dirichlet_sq(m + a, n);
    return dirichlet_sq(a, n) * dirichlet_sq(static_cast<double>(tau), n) / (double(n) * n) +
           (mu4 - 2.0) / n * dirichlet_sq(a, n) + third / n;
}

double dpaf_theory_ofdm(const AfdmConfig& cfg, long tau, double nu) {
    const unsigned n = cfg.n;
    const double mu4 = kurtosis(cfg.constellation);
    double third = 0.0;
    for (unsigned m = 0; m < n; ++m) third += dirichlet_sq(m - nu, n);
    return dirichlet_sq(nu, n) * dirichlet_sq(static_cast<double>(tau), n) / (double(n) * n) +
           (mu4 - 2.0) / n * dirichlet_sq(nu, n) + third / n;
}

double dpaf_theory_ocdm(const AfdmConfig& cfg, long tau, double nu) {
    const unsigned n = cfg.n;
    const double mu4 = kurtosis(cfg.constellation);
    const double a = static_cast<double>(tau) - nu;
    double third = 0.0;
    for (unsigned m = 0; m < n; ++m) third += dirichlet_sq(m + a, n);
    return dirichlet_sq(a, n) * dirichlet_sq(static_cast<double>(tau), n) / (double(n) * n) +
           (mu4 - 2.0) / n * dirichlet_sq(a, n) + third / n;
}

double dpaf_theory_ps(const AfdmConfig& cfg, const EffectiveResponse& g, long tau, double nu) {
    const unsigned n = cfg.n;
    const long nl = g.nl();
    const long l = g.l;
    const double mu4 = kurtosis(cfg.constellation);
    double acc = dirichlet_sq(nu, n) * std::norm(pulse_dpaf(g, wrap(tau, nl), nu));
    for (unsigned k = 0; k < n; ++k) {
        const double w =
            (mu4 - 2.0) / n * dirichlet_sq(static_cast<double>(cfg.two_n_c1) * k - nu, n) + n;
        acc += std::norm(pulse_dpaf(g, wrap(tau - long(k) * l, nl), nu)) * w;
    }
    return acc;
}

DpafGrid dpaf_theory_ps_grid(const AfdmConfig& cfg, const EffectiveResponse& g,
                             const GridSpec& grid) {
    const unsigned n = cfg.n;
    const long nl = g.nl();
    const long l = g.l;
    const double mu4 = kurtosis(cfg.constellation);
    DpafGrid out;
    out.delays = grid.delays;
    out.dopplers = grid.dopplers;
    out.values.assign(grid.delays.size() * grid.dopplers.size(), 0.0);
    out.fractional_doppler_approximate = !grid.dopplers_are_integer();
    for (size_t iv = 0; iv < grid.dopplers.size(); ++iv) {
        const double nu = grid.dopplers[iv];
        RVec chi2(nl);  // |chi_g(d, nu)|^2 for all wrapped delays d
        for (long d = 0; d < nl; ++d) chi2[d] = std::norm(pulse_dpaf(g, d, nu));
        RVec weight(n);
        for (unsigned k = 0; k < n; ++k)
            weight[k] =
                (mu4 - 2.0) / n * dirichlet_sq(static_cast<double>(cfg.two_n_c1) * k - nu, n) + n;
        const double d_nu = dirichlet_sq(nu, n);
        for (size_t it = 0; it < grid.delays.size(); ++it) {
            const long tau = grid.delays[it];
            double acc = d_nu * chi2[wrap(tau, nl)];
            for (unsigned k = 0; k < n; ++k) acc += chi2[wrap(tau - long(k) * l, nl)] * weight[k];
            out.at(it, iv) = acc;
        }
    }
    return out;
}

DpafGrid dpaf_theory_nops_grid(const AfdmConfig& cfg, const GridSpec& grid) {
    DpafGrid out;
    out.delays = grid.delays;
    out.dopplers = grid.dopplers;
    out.values.assign(grid.delays.size() * grid.dopplers.size(), 0.0);
    for (size_t it = 0; it < grid.delays.size(); ++it)
        for (size_t iv = 0; iv < grid.dopplers.size(); ++iv)
            out.at(it, iv) = dpaf_theory_nops(cfg, grid.delays[it], grid.dopplers[iv]);
    return out;
}

double mainlobe_nops(const AfdmConfig& cfg) {
    const double n = cfg.n;
    return n * n + (kurtosis(cfg.constellation) - 1.0) * n;
}

double mainlobe_ps(const AfdmConfig& cfg, const EffectiveResponse& g) {
    const long a = cfg.two_n_c1;
    const unsigned n = cfg.n;
    const long nl = g.nl();
    if (a < 1 || n % a != 0)
        throw ConfigError("mainlobe_ps: specialized form requires 2Nc1 >= 1 dividing N");
    const double mu4 = kurtosis(cfg.constellation);
    double sum_l = 0.0;
    for (unsigned k = 0; k < n; ++k) {
        const double r = pacf(g, wrap(-long(k) * g.l, nl));
        sum_l += r * r;
    }
    const long stride = nl / a;  // NL/(2Nc1)
    double sum_dep = 0.0;
    for (long k = 0; k < a; ++k) {
        const double r = pacf(g, wrap(-k * stride, nl));
        sum_dep += r * r;
    }
    return double(n) * n + n * sum_l + (mu4 - 2.0) * n * sum_dep;
}

RVec delay_cut_ps(const AfdmConfig& cfg, const EffectiveResponse& g,
                  const std::vector<long>& delays) {
    const unsigned n = cfg.n;
    const long nl = g.nl();
    const double mu4 = kurtosis(cfg.constellation);
    RVec weight(n);
    for (unsigned k = 0; k < n; ++k)
        weight[k] = (mu4 - 2.0) / n * dirichlet_sq(static_cast<double>(cfg.two_n_c1) * k, n) + n;
    RVec rg2(nl);
    for (long d = 0; d < nl; ++d) {
        const double r = pacf(g, d);
        rg2[d] = r * r;
    }
    RVec out;
    out.reserve(delays.size());
    for (long tau : delays) {
        double acc = double(n) * n * rg2[wrap(tau, nl)];
        for (unsigned k = 0; k < n; ++k) acc += rg2[wrap(tau - long(k) * g.l, nl)] * weight[k];
        out.push_back(acc);
    }
    return out;
}

RVec doppler_cut_ps(const AfdmConfig& cfg, const EffectiveResponse& g,
                    const std::vector<double>& dopplers) {
    const unsigned n = cfg.n;
    const long nl = g.nl();
    const double mu4 = kurtosis(cfg.constellation);
    RVec out;
    out.reserve(dopplers.size());
    for (double nu : dopplers) {
        double acc = dirichlet_sq(nu, n) * std::norm(sse(g, nu));
        for (unsigned k = 0; k < n; ++k) {
            const double w =
                (mu4 - 2.0) / n * dirichlet_sq(static_cast<double>(cfg.two_n_c1) * k - nu, n) + n;
            acc += std::norm(pulse_dpaf(g, wrap(-long(k) * g.l, nl), nu)) * w;
        }
        out.push_back(acc);
    }
    return out;
}

DepressionMap find_depressions(const AfdmConfig& cfg) {
    const long n = cfg.n;
    const long a = cfg.two_n_c1;
    DepressionMap map;
    map.entries.reserve(n - 1);
    for (long tau = 1; tau < n; ++tau) map.entries.emplace_back(tau, wrap(a * tau, n));
    if (a >= 1 && n % a == 0) {
        map.delay_gap = n / a;
        map.doppler_gap = a;
    }
    return map;
}

}  // namespace afdmsense
