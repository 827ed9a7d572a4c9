#include "phast/hash.hpp"

namespace phast {

namespace {

constexpr uint64_t kP0 = 0xa0761d6478bd642fULL;
constexpr uint64_t kP1 = 0xe7037ed1a0b428dbULL;
constexpr uint64_t kP2 = 0x8ebc6af09c88c6e3ULL;
constexpr uint64_t kP3 = 0x589965cc75374cc3ULL;

}  // namespace

uint64_t hash_bytes(const void* data, size_t len, uint64_t seed) {
    using detail::load32;
    using detail::load64;
    using detail::mum;
    const unsigned char* p = static_cast<const unsigned char*>(data);
    seed ^= mum(seed ^ kP0, kP1);
    uint64_t a, b;
    if (len <= 16) {
        if (len >= 4) {
            a = (load32(p) << 32) | load32(p + ((len >> 3) << 2));
            b = (load32(p + len - 4) << 32) | load32(p + len - 4 - ((len >> 3) << 2));
        } else if (len > 0) {
            a = (static_cast<uint64_t>(p[0]) << 16) |
                (static_cast<uint64_t>(p[len >> 1]) << 8) | p[len - 1];
            b = 0;
        } else {
            a = b = 0;
        }
    } else {
        size_t i = len;
        if (i > 48) {
            uint64_t s1 = seed, s2 = seed;
            do {
                seed = mum(load64(p) ^ kP1, load64(p + 8) ^ seed);
                s1 = mum(load64(p + 16) ^ kP2, load64(p + 24) ^ s1);
                s2 = mum(load64(p + 32) ^ kP3, load64(p + 40) ^ s2);
                p += 48;
                i -= 48;
            } while (i > 48);
            seed ^= s1 ^ s2;
        }
        while (i > 16) {
            seed = mum(load64(p) ^ kP1, load64(p + 8) ^ seed);
            i -= 16;
            p += 16;
        }
        a = load64(p + i - 16);
        b = load64(p + i - 8);
    }
    // Mix the length in its own multiply stage: xor-ing it directly into
    // `a` would let (a, len) pairs cancel between keys of different
    // lengths, creating salt-independent collisions.
    return mum(kP1 ^ len, mum(a ^ kP2, b ^ seed));
}

}  // namespace phast
