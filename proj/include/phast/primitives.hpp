#pragma once

#include <cstdint>

namespace phast {

/// Multiplier spreading the entropy of small seeds across all 64 bits
/// before the final high-half multiply (the FxHash constant).
inline constexpr uint64_t kSeedSpread = 5871781006564002453ULL;

/// Linear range mapping: the high 64 bits of x * r, i.e. floor(x*r / 2^64).
/// Monotone nondecreasing in x; result is always < r for r >= 1.
inline uint64_t fmap(uint64_t x, uint64_t r) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(x) * r) >> 64);
}

/// Multiplicative placement: hi(lo(s * kSeedSpread) * c) & (L-1).
/// L must be a power of two.
inline uint64_t place_mul(uint64_t seed, uint64_t code, uint64_t slice_len) {
    uint64_t spread = seed * kSeedSpread;  // wrapping; low 64 bits
    uint64_t hi = static_cast<uint64_t>(
        (static_cast<unsigned __int128>(spread) * code) >> 64);
    return hi & (slice_len - 1);
}

/// Additive placement: (c & (L-1)) + s - 1. Result < L + 2^S - 2 for
/// seeds in {1, ..., 2^S - 1}; the effective slice length grows accordingly.
inline uint64_t place_add(uint64_t seed, uint64_t code, uint64_t slice_len) {
    return (code & (slice_len - 1)) + seed - 1;
}

/// Wrapping additive placement: (c + delta*s) & (L-1).
inline uint64_t place_wrap(uint64_t seed, uint64_t code, uint64_t slice_len,
                           uint64_t delta) {
    return (code + delta * seed) & (slice_len - 1);
}

}  // namespace phast
