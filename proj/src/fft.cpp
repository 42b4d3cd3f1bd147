#include "afdmsense/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace afdmsense::fft {
namespace {

// fftw_execute_dft is thread-safe on distinct buffers; plan creation is not.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        CVec scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<size_t, int>, fftw_plan> plans_;
};

CVec transform(const CVec& x, int sign) {
    if (x.empty()) return {};
    CVec out = x;
    fftw_plan plan = PlanCache::instance().get(x.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, buf, buf);
    return out;
}

}  // namespace

CVec forward(const CVec& x) { return transform(x, FFTW_FORWARD); }

CVec backward(const CVec& x) { return transform(x, FFTW_BACKWARD); }

CVec circular_convolve(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw DimensionError("circular_convolve: length mismatch");
    const size_t n = a.size();
    CVec fa = forward(a);
    CVec fb = forward(b);
    for (size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    CVec out = backward(fa);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& z : out) z *= scale;
    return out;
}

}  // namespace afdmsense::fft
