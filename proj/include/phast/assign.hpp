#pragma once

#include <cstdint>
#include <vector>

#include "phast/bitmap.hpp"
#include "phast/bucketing.hpp"
#include "phast/params.hpp"

namespace phast {

/// Sentinel for a bucket whose seed has not been decided yet. Real seeds
/// fit in the low s_bits; 0 means the bucket was bumped.
inline constexpr uint16_t kUnassignedSeed = 0xFFFF;

/// Smallest hash code that maps to bucket `b` out of `bucket_count`.
uint64_t bucket_min_code(uint64_t b, uint64_t bucket_count);

/// Smallest output value any code of bucket `b` can receive.
uint64_t bucket_value_base(uint64_t b, const LayerParams& p);

/// Bitmap capacity sufficient for a sliding window covering
/// `cover_buckets` buckets at a time (plus slice span and read slack).
uint64_t window_capacity(const LayerParams& p, uint64_t cover_buckets);

/// Assign seeds to buckets [lo_bucket, hi_bucket) with the sliding-window
/// strategy: the window holds up to p.window consecutive undecided
/// buckets, the highest-priority one is searched first, and the window
/// (and the bitmap base) advances once its first bucket is decided.
///
/// `seeds` must cover all buckets and hold kUnassignedSeed throughout the
/// subrange. The bitmap's base must equal bucket_value_base(lo_bucket);
/// bits already set in it (from neighbouring ranges) are honoured. Codes
/// of bumped buckets are appended to `out_bumped`.
void assign_range(const BucketedCodes& bucketed, const LayerParams& p,
                  uint64_t lo_bucket, uint64_t hi_bucket, CyclicBitmap& bitmap,
                  std::vector<uint16_t>& seeds,
                  std::vector<uint64_t>& out_bumped);

struct AssignOutput {
    std::vector<uint16_t> seeds;
    std::vector<uint64_t> bumped;
};

/// Single-threaded assignment over all buckets.
AssignOutput assign_seeds(const BucketedCodes& bucketed, const LayerParams& p);

}  // namespace phast
