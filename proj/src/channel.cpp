#include "afdmsense/channel.hpp"

#include <cmath>

#include "afdmsense/rng.hpp"

namespace afdmsense {
namespace {

long wrap(long i, long n) { return ((i % n) + n) % n; }

Complex unit_phase(double turns) {
    return {std::cos(2.0 * M_PI * turns), std::sin(2.0 * M_PI * turns)};
}

struct ResolvedTarget {
    long tau = 0;
    double nu = 0.0;
    double amp = 1.0;
    Fluctuation fluctuation = Fluctuation::Swerling0;
};

std::vector<ResolvedTarget> resolve_targets(const std::vector<Target>& targets,
                                            const RadioConfig& radio, const AfdmConfig& cfg) {
    std::vector<ResolvedTarget> out;
    out.reserve(targets.size());
    const long max_delay = static_cast<long>(cfg.n_cp) * cfg.oversampling;
    for (const auto& t : targets) {
        const NormalizedParams p = normalized_params(t, radio, cfg);
        if (p.tau_samples < 0 || p.tau_samples > max_delay)
            throw ScenarioError("target delay " + std::to_string(p.tau_samples) +
                                " samples exceeds CPP span " + std::to_string(max_delay));
        out.push_back({p.tau_samples, p.nu, t.mean_amp, t.fluctuation});
    }
    return out;
}

// Per-symbol RNG stream: first the fluctuation coefficients (target order),
// then the NL noise samples. Both synthesis paths share this layout so they
// produce bit-identical output for the same seed.
struct SymbolDraws {
    std::vector<Complex> beta;
    Xoshiro256pp rng;
};

SymbolDraws symbol_draws(const std::vector<ResolvedTarget>& targets, uint64_t seed, unsigned k) {
    SymbolDraws d{{}, Xoshiro256pp(derive_seed(seed, k))};
    d.beta.reserve(targets.size());
    for (const auto& t : targets) {
        if (t.fluctuation == Fluctuation::Swerling2)
            d.beta.push_back(d.rng.complex_gaussian(t.amp * t.amp));
        else
            d.beta.push_back(Complex{t.amp, 0.0});
    }
    return d;
}

}  // namespace

NormalizedParams normalized_params(const Target& target, const RadioConfig& radio,
                                   const AfdmConfig& cfg) {
    const double fs = radio.fs_hz(cfg.n);
    if (fs <= 0.0) throw ConfigError("normalized_params: sampling rate must be positive");
    const double exact_tau = 2.0 * target.range_m * cfg.oversampling * fs / kSpeedOfLight;
    NormalizedParams p;
    p.tau_samples = std::lround(exact_tau);
    p.tau_residual = exact_tau - static_cast<double>(p.tau_samples);
    p.nu = 2.0 * target.velocity_mps * radio.fc_hz * cfg.n / (kSpeedOfLight * fs);
    return p;
}

CVec shaped_reference(const CVec& data_block, const AfdmConfig& cfg, const PulseShape& ps) {
    cfg.validate();
    if (data_block.size() != static_cast<size_t>(cfg.n) * cfg.n_sym)
        throw DimensionError("shaped_reference: data block must be N x N_sym");
    const EffectiveResponse g = effective_response(ps, cfg.n);
    const size_t nl = g.nl();
    CVec out(nl * cfg.n_sym);
    for (unsigned k = 0; k < cfg.n_sym; ++k) {
        CVec col(data_block.begin() + static_cast<size_t>(k) * cfg.n,
                 data_block.begin() + static_cast<size_t>(k + 1) * cfg.n);
        CVec sym = shape_symbol(g, idaft_modulate(cfg, col));
        std::copy(sym.begin(), sym.end(), out.begin() + k * nl);
    }
    return out;
}

double mean_signal_power(const std::vector<Target>& targets, unsigned oversampling) {
    double p = 0.0;
    for (const auto& t : targets) p += t.mean_amp * t.mean_amp;
    return p / oversampling;
}

CVec synthesize_echo(const CVec& data_block, const AfdmConfig& cfg, const PulseShape& ps,
                     const std::vector<Target>& targets, const RadioConfig& radio,
                     uint64_t seed, bool noise_off) {
    cfg.validate();
    if (ps.m != cfg.m_guard)
        throw ConfigError("synthesize_echo: pulse half-width must match the frame guard length");
    if (ps.l != cfg.oversampling)
        throw ConfigError("synthesize_echo: pulse and frame oversampling ratios differ");
    const auto resolved = resolve_targets(targets, radio, cfg);

    const long l = cfg.oversampling;
    const long nl = cfg.nl();
    const long span = static_cast<long>(cfg.symbol_span()) * l;  // (N+Ncp+2M)L
    const long ml = static_cast<long>(cfg.m_guard) * l;
    const long nsym = cfg.n_sym;

    const CVec frame = build_frame(cfg, data_block);
    const CVec stream = shape_aperiodic(ps, upsample(frame, cfg.oversampling));
    const long stream_len = static_cast<long>(stream.size());

    // with no targets the SNR reference falls back to unit power: pure noise
    const double ref_power = targets.empty() ? 1.0 : mean_signal_power(targets, cfg.oversampling);
    const double noise_var = noise_off ? 0.0 : ref_power / std::pow(10.0, radio.snr_db / 10.0);

    CVec y(static_cast<size_t>(nl) * nsym, Complex{0.0, 0.0});
    for (long k = 0; k < nsym; ++k) {
        SymbolDraws draws = symbol_draws(resolved, seed, static_cast<unsigned>(k));
        // untrimmed output index of core sample n: ML + k*span + (M+Ncp)L + n
        const long base = ml + k * span + (static_cast<long>(cfg.m_guard) + cfg.n_cp) * l;
        for (long n = 0; n < nl; ++n) {
            const long i = base + n;
            Complex acc{0.0, 0.0};
            for (size_t q = 0; q < resolved.size(); ++q) {
                const long src = i - resolved[q].tau;
                if (src < 0 || src >= stream_len) continue;
                acc += draws.beta[q] * stream[src] *
                       unit_phase(resolved[q].nu * static_cast<double>(i) / nl);
            }
            if (!noise_off) acc += draws.rng.complex_gaussian(noise_var);
            y[static_cast<size_t>(k) * nl + n] = acc;
        }
    }
    return y;
}

CVec synthesize_echo_periodic(const CVec& data_block, const AfdmConfig& cfg,
                              const PulseShape& ps, const std::vector<Target>& targets,
                              const RadioConfig& radio, uint64_t seed, bool noise_off) {
    cfg.validate();
    if (ps.l != cfg.oversampling)
        throw ConfigError("synthesize_echo_periodic: pulse and frame oversampling ratios differ");
    const auto resolved = resolve_targets(targets, radio, cfg);
    const long l = cfg.oversampling;
    const long nl = cfg.nl();
    const long span_l = static_cast<long>(cfg.symbol_span()) * l;
    const long nsym = cfg.n_sym;
    const CVec ref = shaped_reference(data_block, cfg, ps);

    const double ref_power = targets.empty() ? 1.0 : mean_signal_power(targets, cfg.oversampling);
    const double noise_var = noise_off ? 0.0 : ref_power / std::pow(10.0, radio.snr_db / 10.0);

    CVec y(static_cast<size_t>(nl) * nsym, Complex{0.0, 0.0});
    for (long k = 0; k < nsym; ++k) {
        SymbolDraws draws = symbol_draws(resolved, seed, static_cast<unsigned>(k));
        const Complex* xps = ref.data() + static_cast<size_t>(k) * nl;
        Complex* yk = y.data() + static_cast<size_t>(k) * nl;
        for (size_t q = 0; q < resolved.size(); ++q) {
            const double nu = resolved[q].nu;
            const Complex lead =
                unit_phase(nu * (static_cast<double>(cfg.n_cp) + 2.0 * cfg.m_guard) * l / nl) *
                unit_phase(nu * static_cast<double>(span_l) * k / nl);
            const Complex coef = draws.beta[q] * lead;
            for (long n = 0; n < nl; ++n)
                yk[n] += coef * xps[wrap(n - resolved[q].tau, nl)] *
                         unit_phase(nu * static_cast<double>(n) / nl);
        }
        if (!noise_off)
            for (long n = 0; n < nl; ++n) yk[n] += draws.rng.complex_gaussian(noise_var);
    }
    return y;
}

}  // namespace afdmsense
