#include "afdmsense/constellation.hpp"

#include <cctype>
#include <cmath>

#include "afdmsense/rng.hpp"

namespace afdmsense {
namespace {

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

bool is_perfect_square(unsigned v) {
    unsigned r = static_cast<unsigned>(std::lround(std::sqrt(static_cast<double>(v))));
    return r * r == v;
}

}  // namespace

void ConstellationSpec::validate() const {
    if (!is_power_of_two(order))
        throw ConfigError("constellation order must be a power of 2, got " + std::to_string(order));
    if (kind == ConstellationKind::QAM && !is_perfect_square(order))
        throw ConfigError("QAM order must be a perfect square, got " + std::to_string(order));
    if (kind == ConstellationKind::PSK && order < 4)
        throw ConfigError("PSK order must be >= 4 (lower orders have nonzero pseudo-mean)");
    if (kind == ConstellationKind::QAM && order < 4)
        throw ConfigError("QAM order must be >= 4");
}

std::string ConstellationSpec::name() const {
    return (kind == ConstellationKind::PSK ? "psk" : "qam") + std::to_string(order);
}

ConstellationSpec ConstellationSpec::parse(const std::string& name) {
    std::string lower;
    for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    ConstellationSpec spec;
    size_t digits;
    if (lower.rfind("psk", 0) == 0) {
        spec.kind = ConstellationKind::PSK;
        digits = 3;
    } else if (lower.rfind("qam", 0) == 0) {
        spec.kind = ConstellationKind::QAM;
        digits = 3;
    } else {
        throw ConfigError("unknown constellation '" + name + "' (expected psk<M> or qam<M>)");
    }
    try {
        spec.order = static_cast<unsigned>(std::stoul(lower.substr(digits)));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse constellation order in '" + name + "'");
    }
    spec.validate();
    return spec;
}

CVec constellation_points(const ConstellationSpec& spec) {
    spec.validate();
    CVec pts;
    pts.reserve(spec.order);
    if (spec.kind == ConstellationKind::PSK) {
        // rotation pi/order: zero mean and zero pseudo-mean for order >= 4
        for (unsigned k = 0; k < spec.order; ++k) {
            const double phase = M_PI / spec.order + 2.0 * M_PI * k / spec.order;
            pts.emplace_back(std::cos(phase), std::sin(phase));
        }
        return pts;
    }
    // square QAM on the odd-integer lattice, then unit-power normalization
    const unsigned side = static_cast<unsigned>(std::lround(std::sqrt(double(spec.order))));
    double power = 0.0;
    for (unsigned i = 0; i < side; ++i) {
        for (unsigned q = 0; q < side; ++q) {
            const double re = 2.0 * i + 1.0 - side;
            const double im = 2.0 * q + 1.0 - side;
            pts.emplace_back(re, im);
            power += re * re + im * im;
        }
    }
    const double scale = 1.0 / std::sqrt(power / spec.order);
    for (auto& p : pts) p *= scale;
    return pts;
}

double kurtosis(const ConstellationSpec& spec) {
    const CVec pts = constellation_points(spec);
    double m4 = 0.0;
    for (const auto& p : pts) {
        const double p2 = std::norm(p);
        m4 += p2 * p2;
    }
    return m4 / static_cast<double>(pts.size());
}

CVec draw_symbols(const ConstellationSpec& spec, size_t count, uint64_t seed) {
    const CVec pts = constellation_points(spec);
    Xoshiro256pp rng(seed);
    CVec out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) out.push_back(pts[rng.uniform_index(pts.size())]);
    return out;
}

}  // namespace afdmsense
