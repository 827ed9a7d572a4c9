#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <string_view>

namespace phast {

/// Identifier of the built-in hash, recorded in serialized structures so
/// they are only loaded by builds using the same function.
inline constexpr uint16_t kDefaultHashId = 1;

namespace detail {

inline uint64_t mum(uint64_t a, uint64_t b) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    return static_cast<uint64_t>(r) ^ static_cast<uint64_t>(r >> 64);
}

inline uint64_t load64(const unsigned char* p) {
    uint64_t v;
    std::memcpy(&v, p, 8);
    return v;
}

inline uint64_t load32(const unsigned char* p) {
    uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

}  // namespace detail

/// SplitMix64 finalizer; full-avalanche permutation of a 64-bit word.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Keyed 64-bit hash of a byte string (folded-multiply construction).
uint64_t hash_bytes(const void* data, size_t len, uint64_t seed);

/// Hash of a key for one construction layer. Layers are salted so distinct
/// layers see independent hash codes.
inline uint64_t hash64(std::string_view key, uint32_t layer_salt) {
    return hash_bytes(key.data(), key.size(), mix64(0x50486173745F6832ULL ^ layer_salt));
}

}  // namespace phast
