#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phast {

/// Hash codes grouped by bucket index. Codes of bucket i occupy
/// codes[bucket_bounds[i] .. bucket_bounds[i+1]).
struct BucketedCodes {
    std::vector<uint64_t> codes;
    std::vector<uint64_t> bucket_bounds;  // B+1 offsets
    uint64_t bucket_count = 0;

    std::span<const uint64_t> bucket(uint64_t i) const {
        return {codes.data() + bucket_bounds[i],
                codes.data() + bucket_bounds[i + 1]};
    }
    uint64_t bucket_size(uint64_t i) const {
        return bucket_bounds[i + 1] - bucket_bounds[i];
    }
};

/// B = round(n / lambda), at least 1.
uint64_t bucket_count_for(uint64_t n, double lambda);

/// Group hash codes by their bucket index fmap(c, B) with a counting sort.
/// Duplicates are kept; the grouping is stable in the input order.
BucketedCodes partition(std::span<const uint64_t> codes, uint64_t bucket_count);

}  // namespace phast
