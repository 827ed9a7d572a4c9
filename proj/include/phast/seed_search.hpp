#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phast/bitmap.hpp"
#include "phast/params.hpp"
#include "phast/primitives.hpp"

namespace phast {

/// Output value assigned to hash code c by seed s under the layer's
/// placement function.
inline uint64_t placed_value(const LayerParams& p, uint64_t seed, uint64_t code) {
    uint64_t start = fmap(code, p.slice_starts());
    switch (p.variant) {
        case Variant::MUL: return start + place_mul(seed, code, p.slice_len);
        case Variant::ADD: return start + place_add(seed, code, p.slice_len);
        case Variant::WRAP:
            return start + place_wrap(seed, code, p.slice_len, p.delta);
    }
    return start;
}

/// Reusable per-thread buffers for the seed searches.
struct SeedScratch {
    std::vector<uint64_t> vals;
    std::vector<uint64_t> aux;
};

/// Exhaustive search for the multiplicative variant: among all feasible
/// seeds, the one minimizing the sum of placement values (ties to the
/// smallest seed). Returns 0 (bump) when none is feasible. Does not
/// mutate the bitmap.
uint64_t find_best_seed_mul(std::span<const uint64_t> bucket_codes,
                            const CyclicBitmap& bitmap, const LayerParams& p,
                            SeedScratch& scratch);

/// Bit-parallel search for the additive variant: the smallest feasible
/// seed (which also minimizes the sum), found 64 seeds at a time by
/// OR-ing bitmap words. Returns 0 when the bucket self-collides or no
/// seed is feasible.
uint64_t find_first_seed_add(std::span<const uint64_t> bucket_codes,
                             const CyclicBitmap& bitmap, const LayerParams& p,
                             SeedScratch& scratch);

/// Interval search for the wrapping variant: seeds are scanned in maximal
/// wrap-free intervals; within each the first feasible seed minimizes the
/// sum, and interval candidates are compared by their sums.
uint64_t find_first_seed_wrap(std::span<const uint64_t> bucket_codes,
                              const CyclicBitmap& bitmap, const LayerParams& p,
                              SeedScratch& scratch);

/// Variant dispatch.
uint64_t find_seed(std::span<const uint64_t> bucket_codes,
                   const CyclicBitmap& bitmap, const LayerParams& p,
                   SeedScratch& scratch);

}  // namespace phast
