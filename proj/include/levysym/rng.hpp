#pragma once

// Counter-based random streams (Philox4x32-10). A stream is addressed by
// (seed, stream id, tag); draws are a pure function of that address and the
// draw counter, so path-level parallelism cannot change any number drawn.

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace levysym {

// splitmix64 step; derives independent sub-seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace detail {

struct PhiloxState {
    std::uint32_t c0, c1, c2, c3;  // counter
    std::uint32_t k0, k1;          // key
};

inline void philox_round(PhiloxState& s) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * s.c0;
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * s.c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32),
                        lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32),
                        lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t n0 = hi1 ^ s.c1 ^ s.k0;
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ s.c3 ^ s.k1;
    const std::uint32_t n3 = lo0;
    s.c0 = n0;
    s.c1 = n1;
    s.c2 = n2;
    s.c3 = n3;
    s.k0 += 0x9E3779B9u;
    s.k1 += 0xBB67AE85u;
}

inline void philox4x32_10(std::uint64_t counter, std::uint32_t stream, std::uint32_t tag,
                          std::uint64_t key, std::uint32_t out[4]) {
    PhiloxState s{static_cast<std::uint32_t>(counter),
                  static_cast<std::uint32_t>(counter >> 32), stream, tag,
                  static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    for (int r = 0; r < 10; ++r) philox_round(s);
    out[0] = s.c0;
    out[1] = s.c1;
    out[2] = s.c2;
    out[3] = s.c3;
}

}  // namespace detail

// One logical stream of uniforms/normals/Poisson counts.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t tag)
        : key_(seed), stream_(static_cast<std::uint32_t>(stream_id)),
          tag_(static_cast<std::uint32_t>((stream_id >> 32) << 8) | tag) {
        if (stream_id >> 56) throw std::invalid_argument("stream id out of range");
    }

    std::uint64_t next_u64() {
        if (!have_half_) {
            detail::philox4x32_10(counter_++, stream_, tag_, key_, block_);
            have_half_ = true;
            return (std::uint64_t{block_[0]} << 32) | block_[1];
        }
        have_half_ = false;
        return (std::uint64_t{block_[2]} << 32) | block_[3];
    }

    // Uniform on (0,1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    // Standard normal via Box-Muller; the paired value is cached.
    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cached_normal_ = r * std::sin(a);
        have_normal_ = true;
        return r * std::cos(a);
    }

    // Poisson draw: inversion by multiplication for small means, transformed
    // rejection with squeeze (Hormann's PTRS) above.
    long poisson(double mean) {
        if (mean < 0.0) throw std::invalid_argument("poisson mean must be >= 0");
        if (mean == 0.0) return 0;
        if (mean <= 10.0) {
            const double limit = std::exp(-mean);
            long k = 0;
            double p = 1.0;
            do {
                ++k;
                p *= uniform();
            } while (p > limit);
            return k - 1;
        }
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            double u = uniform() - 0.5;
            double v = uniform();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b))
                <= kf * log_mean - mean - std::lgamma(kf + 1.0)) {
                return static_cast<long>(kf);
            }
        }
    }

  private:
    std::uint64_t key_;
    std::uint32_t stream_;
    std::uint32_t tag_;
    std::uint64_t counter_ = 0;
    std::uint32_t block_[4]{};
    bool have_half_ = false;
    bool have_normal_ = false;
    double cached_normal_ = 0.0;
};

// Independent substreams for one sampled path: Poisson jump counts, jump
// values, the Gaussian part, and auxiliary draws (uniform starts, rejections).
struct PathStreams {
    RngStream counts;
    RngStream jumps;
    RngStream gauss;
    RngStream misc;

    PathStreams(std::uint64_t seed, std::uint64_t path_index)
        : counts(seed, path_index, 0),
          jumps(seed, path_index, 1),
          gauss(seed, path_index, 2),
          misc(seed, path_index, 3) {}
};

}  // namespace levysym
