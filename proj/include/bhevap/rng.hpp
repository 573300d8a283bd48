// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace bhevap {

// Counter-based SplitMix64 stream keyed by (seed, stream_id). Each stream
// advances its own counter by an odd per-stream increment derived from the
// key, so streams never share state and can be created O(1) in any order.
// Identical keys reproduce identical output bit for bit.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id),
          state_(mix64(seed + 0x9E3779B97F4A7C15ULL * stream_id)),
          gamma_(mix_gamma(seed ^ mix64(stream_id + 0x6A09E667F3BCC909ULL))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        state_ += gamma_;
        return mix64(state_);
    }

    // Uniform in the open interval (0, 1); never returns 0 or 1 exactly, so
    // inverse-transform sampling stays inside the quantile domain.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Odd increment with a healthy bit mix (Steele et al. gamma tempering).
    static std::uint64_t mix_gamma(std::uint64_t z) {
        z = mix64(z) | 1ULL;
        if (__builtin_popcountll(z ^ (z >> 1)) < 24) z ^= 0xAAAAAAAAAAAAAAAAULL;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
    std::uint64_t gamma_;
};

} // namespace bhevap
