#include "afdmsense/receiver.hpp"

#include <cmath>
#include <thread>

#include "afdmsense/fft.hpp"
#include "afdmsense/rng.hpp"

namespace afdmsense {
namespace {

long wrap(long i, long n) { return ((i % n) + n) % n; }

Complex unit_phase(double turns) {
    return {std::cos(2.0 * M_PI * turns), std::sin(2.0 * M_PI * turns)};
}

}  // namespace

MfMap matched_filter(const CVec& y_k, const CVec& x_ps_k, const GridSpec& grid) {
    if (y_k.size() != x_ps_k.size())
        throw DimensionError("matched_filter: received and reference lengths differ");
    const long nl = static_cast<long>(y_k.size());
    MfMap map;
    map.delays = grid.delays;
    map.dopplers = grid.dopplers;
    map.values.assign(grid.delays.size() * grid.dopplers.size(), Complex{0.0, 0.0});
    const bool integer_nu = grid.dopplers_are_integer();
    const size_t nv = grid.dopplers.size();
    CVec prod(nl);
    for (size_t it = 0; it < grid.delays.size(); ++it) {
        const long tau = grid.delays[it];
        for (long n = 0; n < nl; ++n) prod[n] = y_k[n] * std::conj(x_ps_k[wrap(n - tau, nl)]);
        if (integer_nu) {
            const CVec spec = fft::forward(prod);
            for (size_t iv = 0; iv < nv; ++iv)
                map.values[it * nv + iv] =
                    spec[wrap(static_cast<long>(std::llround(grid.dopplers[iv])), nl)];
        } else {
            for (size_t iv = 0; iv < nv; ++iv) {
                Complex acc{0.0, 0.0};
                for (long n = 0; n < nl; ++n)
                    acc += prod[n] * unit_phase(-grid.dopplers[iv] * static_cast<double>(n) / nl);
                map.values[it * nv + iv] = acc;
            }
        }
    }
    return map;
}

RangeDopplerMap noncoherent_integrate(const std::vector<MfMap>& maps) {
    if (maps.empty()) throw ConfigError("noncoherent_integrate: no matched-filter maps");
    RangeDopplerMap out;
    out.delays = maps.front().delays;
    out.dopplers = maps.front().dopplers;
    out.values.assign(maps.front().values.size(), 0.0);
    out.integrated_symbols = maps.size();
    for (const auto& m : maps) {
        if (m.delays != out.delays || m.dopplers != out.dopplers)
            throw DimensionError("noncoherent_integrate: mismatched map grids");
        for (size_t i = 0; i < m.values.size(); ++i) out.values[i] += std::norm(m.values[i]);
    }
    const double scale = 1.0 / static_cast<double>(maps.size());
    for (auto& v : out.values) v *= scale;
    return out;
}

Estimate ml_estimate(const RangeDopplerMap& map, bool interpolate) {
    if (map.delays.empty() || map.dopplers.empty() || map.values.empty())
        throw ConfigError("ml_estimate: empty search grid");
    const size_t nv = map.dopplers.size();
    size_t best = 0;
    for (size_t c = 1; c < map.values.size(); ++c)
        if (map.values[c] > map.values[best]) best = c;  // first max wins: smallest tau, then nu
    const size_t it = best / nv;
    const size_t iv = best % nv;
    Estimate est{map.delays[it], map.dopplers[iv], map.values[best]};
    if (interpolate && iv > 0 && iv + 1 < nv) {
        const double y0 = map.values[best - 1];
        const double y1 = map.values[best];
        const double y2 = map.values[best + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        if (denom < 0.0) {  // proper peak curvature
            double d = 0.5 * (y0 - y2) / denom;
            d = std::clamp(d, -1.0, 1.0);
            est.nu += d * (map.dopplers[iv + 1] - map.dopplers[iv]);
        }
    }
    return est;
}

std::vector<RmseRow> rmse_experiment(const ScenarioConfig& scenario,
                                     const std::vector<std::pair<std::string, AfdmConfig>>& waveforms,
                                     const PulseShape& ps, const std::vector<double>& snr_db_list,
                                     uint64_t seed) {
    if (scenario.targets.empty()) throw ConfigError("rmse_experiment: no targets");
    if (scenario.weak_index >= scenario.targets.size())
        throw ConfigError("rmse_experiment: weak_index out of range");
    if (scenario.trials < 1) throw ConfigError("rmse_experiment: trials must be >= 1");
    if (scenario.doppler_step <= 0.0) throw ConfigError("rmse_experiment: doppler_step must be positive");

    std::vector<RmseRow> rows;
    size_t pair_index = 0;
    for (const auto& [name, base_cfg] : waveforms) {
        AfdmConfig cfg = base_cfg;
        cfg.n_sym = scenario.n_sym;
        cfg.m_guard = ps.m;
        cfg.oversampling = ps.l;
        cfg.validate();
        const Target& weak = scenario.targets[scenario.weak_index];

        for (double snr : snr_db_list) {
            RadioConfig radio = scenario.radio;
            radio.snr_db = snr;
            const NormalizedParams truth = normalized_params(weak, radio, cfg);
            const double mps_per_nu =
                kSpeedOfLight * radio.fs_hz(cfg.n) / (2.0 * radio.fc_hz * cfg.n);

            GridSpec grid;
            grid.delays = {truth.tau_samples};
            const long steps = static_cast<long>(
                std::llround(scenario.doppler_window / scenario.doppler_step));
            for (long i = -steps; i <= steps; ++i)
                grid.dopplers.push_back(truth.nu + i * scenario.doppler_step);

            const uint64_t run_seed = derive_seed(seed, pair_index++);
            const size_t trials = scenario.trials;
            const unsigned workers = std::max(
                1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(trials)));
            std::vector<double> sq_err(trials, 0.0);

            auto run_worker = [&](unsigned w) {
                for (size_t t = w; t < trials; t += workers) {
                    const uint64_t trial_seed = derive_seed(run_seed, t);
                    const CVec data = draw_symbols(cfg.constellation,
                                                   static_cast<size_t>(cfg.n) * cfg.n_sym,
                                                   derive_seed(trial_seed, 1));
                    const CVec y = synthesize_echo(data, cfg, ps, scenario.targets, radio,
                                                   derive_seed(trial_seed, 2));
                    const CVec ref = shaped_reference(data, cfg, ps);
                    const size_t nl = cfg.nl();
                    std::vector<MfMap> maps;
                    maps.reserve(cfg.n_sym);
                    for (unsigned k = 0; k < cfg.n_sym; ++k) {
                        CVec yk(y.begin() + static_cast<size_t>(k) * nl,
                                y.begin() + static_cast<size_t>(k + 1) * nl);
                        CVec rk(ref.begin() + static_cast<size_t>(k) * nl,
                                ref.begin() + static_cast<size_t>(k + 1) * nl);
                        maps.push_back(matched_filter(yk, rk, grid));
                    }
                    const Estimate est =
                        ml_estimate(noncoherent_integrate(maps), scenario.interpolate);
                    const double err = (est.nu - truth.nu) * mps_per_nu;
                    sq_err[t] = err * err;
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run_worker, w);
            run_worker(0);
            for (auto& th : pool) th.join();

            double mse = 0.0;
            for (double e : sq_err) mse += e;  // fixed order: reproducible
            rows.push_back({name, snr, std::sqrt(mse / trials), trials, seed});
        }
    }
    return rows;
}

}  // namespace afdmsense
