#pragma once

// Deterministic random source: xoshiro256++ seeded through SplitMix64.
// The standard library distributions are deliberately not used; their streams
// are implementation-defined, and every sampler here must reproduce bit-for-bit
// across platforms and worker counts.
//
// Stream derivation rule: stream(seed, k) reseeds SplitMix64 with
// seed XOR (0x9E3779B97F4A7C15 * (k + 1)), so independent tasks get
// non-overlapping generators from one user-facing seed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace qcr {

namespace detail {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

}  // namespace detail

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        detail::SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    // Child generator for task `k`; see the derivation rule above.
    static Rng stream(std::uint64_t seed, std::uint64_t k) {
        return Rng(seed ^ (0x9E3779B97F4A7C15ULL * (k + 1)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> next_complex_gaussian() {
        const double re = next_gaussian();
        return {re, next_gaussian()};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qcr
