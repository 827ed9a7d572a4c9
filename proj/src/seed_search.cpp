#include "phast/seed_search.hpp"

#include <bit>
#include <limits>

namespace phast {

namespace {

// Bits at seed positions within a full 64-bit scan word: every delta-th
// bit starting at 0.
constexpr uint64_t kStride1 = ~uint64_t{0};
constexpr uint64_t kStride2 = 0x5555555555555555ULL;
constexpr uint64_t kStride3 = 0x9249249249249249ULL;

uint64_t stride_mask(uint64_t delta, uint64_t seed_count) {
    uint64_t full;
    uint64_t full_count;
    switch (delta) {
        case 1: full = kStride1; full_count = 64; break;
        case 2: full = kStride2; full_count = 32; break;
        default: full = kStride3; full_count = 22; break;
    }
    if (seed_count >= full_count) return full;
    uint64_t m = 0;
    for (uint64_t t = 0; t < seed_count; ++t) m |= uint64_t{1} << (t * delta);
    return m;
}

}  // namespace

uint64_t find_best_seed_mul(std::span<const uint64_t> bucket_codes,
                            const CyclicBitmap& bitmap, const LayerParams& p,
                            SeedScratch& scratch) {
    const size_t k = bucket_codes.size();
    auto& vals = scratch.vals;
    vals.resize(k);
    auto& starts = scratch.aux;
    starts.resize(k);
    for (size_t i = 0; i < k; ++i)
        starts[i] = fmap(bucket_codes[i], p.slice_starts());

    uint64_t best_seed = 0;
    uint64_t best_sum = std::numeric_limits<uint64_t>::max();
    const uint64_t max_seed = p.seed_limit();
    for (uint64_t s = 1; s <= max_seed; ++s) {
        uint64_t sum = 0;
        bool feasible = true;
        for (size_t i = 0; i < k; ++i) {
            uint64_t pv = place_mul(s, bucket_codes[i], p.slice_len);
            uint64_t v = starts[i] + pv;
            if (bitmap.test(v)) { feasible = false; break; }
            for (size_t j = 0; j < i; ++j)
                if (vals[j] == v) { feasible = false; break; }
            if (!feasible) break;
            vals[i] = v;
            sum += pv;
        }
        if (feasible && sum < best_sum) {
            best_sum = sum;
            best_seed = s;
        }
    }
    return best_seed;
}

uint64_t find_first_seed_add(std::span<const uint64_t> bucket_codes,
                             const CyclicBitmap& bitmap, const LayerParams& p,
                             SeedScratch& scratch) {
    const size_t k = bucket_codes.size();
    auto& base = scratch.vals;  // value at seed 1, per code
    base.resize(k);
    const uint64_t low_mask = p.slice_len - 1;
    for (size_t i = 0; i < k; ++i) {
        uint64_t c = bucket_codes[i];
        base[i] = fmap(c, p.slice_starts()) + (c & low_mask);
    }
    // Self-collision does not depend on the seed: test once.
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < i; ++j)
            if (base[i] == base[j]) return 0;

    const uint64_t max_seed = p.seed_limit();
    for (uint64_t s0 = 1; s0 <= max_seed; s0 += 64) {
        uint64_t r = 0;
        for (size_t i = 0; i < k; ++i) r |= bitmap.read64(base[i] + s0 - 1);
        uint64_t valid = max_seed - s0 + 1;
        if (valid < 64) r |= ~uint64_t{0} << valid;
        if (r != ~uint64_t{0})
            return s0 + static_cast<uint64_t>(std::countr_one(r));
    }
    return 0;
}

uint64_t find_first_seed_wrap(std::span<const uint64_t> bucket_codes,
                              const CyclicBitmap& bitmap, const LayerParams& p,
                              SeedScratch& scratch) {
    const size_t k = bucket_codes.size();
    const uint64_t L = p.slice_len;
    const uint64_t low_mask = L - 1;
    const uint64_t d = p.delta;
    const uint64_t max_seed = p.seed_limit();

    auto& starts = scratch.aux;
    starts.resize(k);
    for (size_t i = 0; i < k; ++i)
        starts[i] = fmap(bucket_codes[i], p.slice_starts());
    auto& vals = scratch.vals;  // values at the current interval start
    vals.resize(k);

    uint64_t best_seed = 0;
    uint64_t best_sum = std::numeric_limits<uint64_t>::max();

    uint64_t a = 1;
    while (a <= max_seed) {
        // Maximal interval [a, e): no code's offset wraps inside it.
        uint64_t e = max_seed + 1;
        for (size_t i = 0; i < k; ++i) {
            uint64_t off = (bucket_codes[i] + d * a) & low_mask;
            vals[i] = starts[i] + off;
            uint64_t wrap_at = a + (L - off + d - 1) / d;
            e = std::min(e, wrap_at);
        }
        // Within the interval all values shift together, so self-collision
        // is interval-constant.
        bool collide = false;
        for (size_t i = 0; i < k && !collide; ++i)
            for (size_t j = 0; j < i; ++j)
                if (vals[i] == vals[j]) { collide = true; break; }
        if (!collide) {
            const uint64_t block_seeds = 63 / d + 1;
            uint64_t found = 0;
            for (uint64_t s0 = a; s0 < e && !found; s0 += block_seeds) {
                uint64_t r = 0;
                uint64_t shift = d * (s0 - a);
                for (size_t i = 0; i < k; ++i)
                    r |= bitmap.read64(vals[i] + shift);
                r |= ~stride_mask(d, std::min(block_seeds, e - s0));
                if (r != ~uint64_t{0}) {
                    uint64_t j = static_cast<uint64_t>(std::countr_one(r));
                    found = s0 + j / d;
                }
            }
            if (found) {
                uint64_t sum = 0;
                for (size_t i = 0; i < k; ++i)
                    sum += (bucket_codes[i] + d * found) & low_mask;
                if (sum < best_sum) {
                    best_sum = sum;
                    best_seed = found;
                }
            }
        }
        a = e;
    }
    return best_seed;
}

uint64_t find_seed(std::span<const uint64_t> bucket_codes,
                   const CyclicBitmap& bitmap, const LayerParams& p,
                   SeedScratch& scratch) {
    switch (p.variant) {
        case Variant::MUL:
            return find_best_seed_mul(bucket_codes, bitmap, p, scratch);
        case Variant::ADD:
            return find_first_seed_add(bucket_codes, bitmap, p, scratch);
        case Variant::WRAP:
            return find_first_seed_wrap(bucket_codes, bitmap, p, scratch);
    }
    return 0;
}

}  // namespace phast
