#include "afdmsense/afdm_frame.hpp"

#include <cmath>

#include "afdmsense/fft.hpp"

namespace afdmsense {
namespace {

Complex phase(double turns) {  // e^{j 2 pi turns}
    return {std::cos(2.0 * M_PI * turns), std::sin(2.0 * M_PI * turns)};
}

// Chirp-periodic extension of x at any integer index. The prefix/suffix phase
// factors of the guarded frame are exactly this continuation.
Complex chirp_extension(const AfdmConfig& cfg, const CVec& x, long idx) {
    const long n = static_cast<long>(cfg.n);
    long wrapped = ((idx % n) + n) % n;
    if (idx >= 0 && idx < n) return x[static_cast<size_t>(idx)];
    // e^{-j2pi c1 (N^2 + 2N idx)} for idx < 0, e^{-j2pi c1 (N^2 - 2N idx)} for idx >= N;
    // both equal the iterated continuation x_{idx +- N} relation.
    const double c1 = cfg.c1();
    const double sign = (idx < 0) ? 1.0 : -1.0;
    const double turns = -c1 * (double(n) * double(n) + sign * 2.0 * double(n) * double(idx));
    return phase(turns) * x[static_cast<size_t>(wrapped)];
}

}  // namespace

void AfdmConfig::validate() const {
    if (n == 0) throw ConfigError("AfdmConfig: N must be positive");
    if (oversampling == 0) throw ConfigError("AfdmConfig: oversampling ratio L must be >= 1");
    if (n_sym == 0) throw ConfigError("AfdmConfig: N_sym must be >= 1");
    constellation.validate();
}

void AfdmConfig::normalize() {
    const long period = 2 * static_cast<long>(n);
    two_n_c1 = ((two_n_c1 % period) + period) % period;
}

AfdmConfig AfdmConfig::for_waveform(Waveform w, const AfdmConfig& base) {
    AfdmConfig cfg = base;
    switch (w) {
        case Waveform::OFDM:
            cfg.two_n_c1 = 0;
            cfg.c2 = 0.0;
            break;
        case Waveform::OCDM:
            cfg.two_n_c1 = 1;
            cfg.c2 = 1.0 / (2.0 * cfg.n);
            break;
        case Waveform::AFDM:
            break;
    }
    cfg.normalize();
    return cfg;
}

CVec idaft_modulate(const AfdmConfig& cfg, const CVec& data) {
    cfg.validate();
    const size_t n = cfg.n;
    if (data.size() != n)
        throw DimensionError("idaft_modulate: data length " + std::to_string(data.size()) +
                             " != N = " + std::to_string(n));
    const double c1 = cfg.c1();
    // chirp in m, inverse DFT, chirp in n
    CVec tmp(n);
    for (size_t m = 0; m < n; ++m) tmp[m] = data[m] * phase(cfg.c2 * double(m) * double(m));
    CVec x = fft::backward(tmp);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t i = 0; i < n; ++i) x[i] *= scale * phase(c1 * double(i) * double(i));
    return x;
}

CVec daft_demodulate(const AfdmConfig& cfg, const CVec& x) {
    cfg.validate();
    const size_t n = cfg.n;
    if (x.size() != n)
        throw DimensionError("daft_demodulate: input length " + std::to_string(x.size()) +
                             " != N = " + std::to_string(n));
    const double c1 = cfg.c1();
    CVec tmp(n);
    for (size_t i = 0; i < n; ++i) tmp[i] = x[i] * phase(-c1 * double(i) * double(i));
    CVec s = fft::forward(tmp);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t m = 0; m < n; ++m) s[m] *= scale * phase(-cfg.c2 * double(m) * double(m));
    return s;
}

CVec add_cpp(const AfdmConfig& cfg, const CVec& x) {
    if (x.size() != cfg.n) throw DimensionError("add_cpp: input length != N");
    CVec out;
    out.reserve(cfg.n + cfg.n_cp);
    for (long i = -static_cast<long>(cfg.n_cp); i < 0; ++i)
        out.push_back(chirp_extension(cfg, x, i));
    out.insert(out.end(), x.begin(), x.end());
    return out;
}

CVec add_gps(const AfdmConfig& cfg, const CVec& x) {
    if (x.size() != cfg.n) throw DimensionError("add_gps: input length != N");
    const long n = static_cast<long>(cfg.n);
    const long m = static_cast<long>(cfg.m_guard);
    CVec out;
    out.reserve(cfg.symbol_span());
    for (long i = -static_cast<long>(cfg.n_cp) - m; i < n + m; ++i)
        out.push_back(chirp_extension(cfg, x, i));
    return out;
}

CVec build_frame(const AfdmConfig& cfg, const CVec& data_block) {
    cfg.validate();
    if (data_block.size() != static_cast<size_t>(cfg.n) * cfg.n_sym)
        throw DimensionError("build_frame: data block must be N x N_sym");
    CVec frame;
    frame.reserve(static_cast<size_t>(cfg.symbol_span()) * cfg.n_sym);
    for (unsigned k = 0; k < cfg.n_sym; ++k) {
        CVec col(data_block.begin() + static_cast<size_t>(k) * cfg.n,
                 data_block.begin() + static_cast<size_t>(k + 1) * cfg.n);
        CVec sym = add_gps(cfg, idaft_modulate(cfg, col));
        frame.insert(frame.end(), sym.begin(), sym.end());
    }
    return frame;
}

}  // namespace afdmsense
