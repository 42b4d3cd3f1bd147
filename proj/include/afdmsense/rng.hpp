// rng.hpp - seedable, portable random number generation (xoshiro256++)
//
// All Monte Carlo paths derive their streams from a user seed so that every
// experiment is reproducible bit-exactly. Distributions are implemented here
// (rather than via <random>) because std:: distributions are not guaranteed
// to produce identical sequences across standard library implementations.
#pragma once

#include <cmath>
#include <cstdint>

#include "afdmsense/types.hpp"

namespace afdmsense {

/// SplitMix64; used to expand seeds and to derive per-trial sub-seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stateless hash combine for parallel trial seeding:
/// derive_seed(seed, trial) gives independent streams per trial.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
    splitmix64(s);
    return splitmix64(s);
}

/// xoshiro256++ by Blackman & Vigna. Public-domain algorithm.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(uint64_t seed = 0) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, n), n >= 1 (rejection sampling).
    uint64_t uniform_index(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller (portable, no cached spare).
    double gaussian() {
        // u1 in (0,1] so log() is finite
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly-symmetric complex normal CN(0, variance).
    Complex complex_gaussian(double variance = 1.0) {
        const double sigma = std::sqrt(variance / 2.0);
        return {sigma * gaussian(), sigma * gaussian()};
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace afdmsense
