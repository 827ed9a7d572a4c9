#pragma once

#include <array>
#include <cstdint>

#include "phast/params.hpp"

namespace phast {

/// Size-dependent component of the bucket selection priority. Tabulated
/// for bucket sizes 1..7; grows linearly beyond 7 with the same
/// progression as from 6 to 7.
struct EllTable {
    std::array<int64_t, 7> values{};

    int64_t operator()(uint64_t bucket_size) const {
        if (bucket_size <= 7) return values[bucket_size - 1];
        return values[6] +
               static_cast<int64_t>(bucket_size - 7) * (values[6] - values[5]);
    }
};

/// Table matching the given seed size. S=8 (and S>=11 with the
/// multiplicative search, whose bump rate is sensitive to the exact
/// curve) uses tuned values; other combinations use a linear ramp fitted
/// to the nearest tuned curve (S<=5 one, S>=6 one).
EllTable ell_for_seed_bits(int s_bits, Variant variant = Variant::MUL);

/// Bucket selection priority: ell(size) - index_weight * bucket_index.
/// The standard weight is 1024; weight 0 selects purely by size.
inline int64_t priority(uint64_t bucket_size, uint64_t bucket_index,
                        const EllTable& ell, int64_t index_weight = 1024) {
    return ell(bucket_size) - index_weight * static_cast<int64_t>(bucket_index);
}

}  // namespace phast
