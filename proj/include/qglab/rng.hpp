/**
 * RngStream — seedable PCG32 stream for reproducible Monte Carlo runs.
 *
 * Implements the pcg32 generator (O'Neill, pcg-random.org): 64-bit LCG
 * state with an XSH-RR output permutation. A stream is fully identified
 * by (seed, stream_id); equal pairs produce identical sequences on every
 * platform, so per-trial sub-streams can be derived independently of the
 * worker that happens to execute the trial.
 *
 * Header-only. No dependencies beyond <cstdint> and <cmath>.
 */
#pragma once

#include <cstdint>
#include <stdexcept>

namespace qglab {

class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        // pcg32_srandom_r: the increment encodes the stream id (odd is forced)
        state_ = 0u;
        inc_ = (stream_id << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    /// Next raw 32-bit output (pcg32 XSH-RR).
    std::uint32_t next_u32() {
        std::uint64_t oldstate = state_;
        state_ = oldstate * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted =
            static_cast<std::uint32_t>(((oldstate >> 18u) ^ oldstate) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(oldstate >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Bernoulli trial: true with probability p.
    bool bernoulli(double p) { return next_double() < p; }

    /// Unbiased uniform integer in [0, bound), bound >= 1 (rejection sampling).
    std::uint32_t next_below(std::uint32_t bound) {
        if (bound == 0) throw std::invalid_argument("RngStream: bound must be >= 1");
        std::uint32_t threshold = (-bound) % bound;
        for (;;) {
            std::uint32_t r = next_u32();
            if (r >= threshold) return r % bound;
        }
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
};

} // namespace qglab
