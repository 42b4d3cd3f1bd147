#include "afdmsense/pulse_shaping.hpp"

#include <cmath>

namespace afdmsense {
namespace {

// RRC impulse response at t (in units of the symbol period T), up to a
// constant factor that cancels under the unit-energy normalization.
double rrc_value(double t, double a) {
    if (std::abs(t) < 1e-12) return 1.0 + a * (4.0 / M_PI - 1.0);
    if (a > 0.0 && std::abs(std::abs(4.0 * a * t) - 1.0) < 1e-9) {
        const double s = M_PI / (4.0 * a);
        return (a / std::sqrt(2.0)) *
               ((1.0 + 2.0 / M_PI) * std::sin(s) + (1.0 - 2.0 / M_PI) * std::cos(s));
    }
    const double num = std::sin(M_PI * t * (1.0 - a)) + 4.0 * a * t * std::cos(M_PI * t * (1.0 + a));
    const double den = M_PI * t * (1.0 - 16.0 * a * a * t * t);
    return num / den;
}

long wrap(long i, long n) { return ((i % n) + n) % n; }

}  // namespace

PulseShape rrc_taps(unsigned m, unsigned l, double rolloff) {
    if (m < 1) throw ConfigError("rrc_taps: M must be >= 1");
    if (l < 1) throw ConfigError("rrc_taps: L must be >= 1");
    if (rolloff < 0.0 || rolloff > 1.0)
        throw ConfigError("rrc_taps: rolloff must be in [0, 1]");
    PulseShape ps;
    ps.m = m;
    ps.l = l;
    ps.rolloff = rolloff;
    const long ml = static_cast<long>(m) * l;
    ps.taps.resize(2 * ml + 1);
    double e = 0.0;
    for (long k = 0; k <= 2 * ml; ++k) {
        const double t = static_cast<double>(k - ml) / l;
        ps.taps[k] = rrc_value(t, rolloff);
        e += ps.taps[k] * ps.taps[k];
    }
    const double scale = 1.0 / std::sqrt(e);
    for (auto& v : ps.taps) v *= scale;
    return ps;
}

PulseShape rect_pulse(unsigned l) {
    if (l < 1) throw ConfigError("rect_pulse: L must be >= 1");
    PulseShape ps;
    ps.m = 0;
    ps.l = l;
    ps.rolloff = 0.0;
    ps.taps = {1.0};
    return ps;
}

EffectiveResponse effective_response(const PulseShape& ps, unsigned n) {
    const long nl = static_cast<long>(n) * ps.l;
    const long ml = static_cast<long>(ps.center());
    if (nl < static_cast<long>(ps.taps.size()))
        throw ConfigError("effective_response: pulse longer than frame (NL < 2ML+1)");
    EffectiveResponse g;
    g.n = n;
    g.l = ps.l;
    g.m = ps.m;
    g.g.assign(nl, 0.0);
    for (long i = -ml; i <= ml; ++i) g.g[wrap(i, nl)] = ps.taps[ml + i];
    return g;
}

CVec upsample(const CVec& x, unsigned l) {
    CVec out(x.size() * l, Complex{0.0, 0.0});
    for (size_t i = 0; i < x.size(); ++i) out[i * l] = x[i];
    return out;
}

CVec shape_periodic(const EffectiveResponse& g, const CVec& x_up) {
    const long nl = g.nl();
    if (static_cast<long>(x_up.size()) != nl)
        throw DimensionError("shape_periodic: input length != NL");
    // direct sparse circular convolution over the 2ML+1 support of g
    const long ml = static_cast<long>(g.m) * g.l;
    CVec out(nl, Complex{0.0, 0.0});
    for (long i = 0; i < nl; ++i) {
        Complex acc{0.0, 0.0};
        for (long d = -ml; d <= ml; ++d)
            acc += g.g[wrap(d, nl)] * x_up[wrap(i - d, nl)];
        out[i] = acc;
    }
    return out;
}

CVec shape_symbol(const EffectiveResponse& g, const CVec& x) {
    return shape_periodic(g, upsample(x, g.l));
}

CVec shape_aperiodic(const PulseShape& ps, const CVec& stream_up) {
    const size_t taps = ps.taps.size();
    CVec out(stream_up.size() + taps - 1, Complex{0.0, 0.0});
    for (size_t j = 0; j < stream_up.size(); ++j) {
        if (stream_up[j] == Complex{0.0, 0.0}) continue;  // upsampled streams are sparse
        for (size_t k = 0; k < taps; ++k) out[j + k] += ps.taps[k] * stream_up[j];
    }
    return out;
}

double pacf(const EffectiveResponse& g, long tau) {
    const long nl = g.nl();
    double acc = 0.0;
    for (long m = 0; m < nl; ++m) acc += g.g[m] * g.g[wrap(m - tau, nl)];
    return acc;
}

Complex sse(const EffectiveResponse& g, double nu) {
    const long nl = g.nl();
    Complex acc{0.0, 0.0};
    for (long m = 0; m < nl; ++m) {
        const double turns = -nu * static_cast<double>(m) / nl;
        acc += g.g[m] * g.g[m] * Complex{std::cos(2 * M_PI * turns), std::sin(2 * M_PI * turns)};
    }
    return acc;
}

Complex pulse_dpaf(const EffectiveResponse& g, long tau, double nu) {
    const long nl = g.nl();
    Complex acc{0.0, 0.0};
    for (long m = 0; m < nl; ++m) {
        const double gm = g.g[m];
        if (gm == 0.0) continue;
        const double other = g.g[wrap(m - tau, nl)];
        if (other == 0.0) continue;
        const double turns = -nu * static_cast<double>(m) / nl;
        acc += gm * other * Complex{std::cos(2 * M_PI * turns), std::sin(2 * M_PI * turns)};
    }
    return acc;
}

}  // namespace afdmsense
