#pragma once

#include <cstdint>
#include <vector>

#include "phast/assign.hpp"
#include "phast/bucketing.hpp"
#include "phast/params.hpp"

namespace phast {

/// Partition of the bucket range into independent chunks separated by
/// gaps wide enough that no two chunks can compete for an output value.
/// Gap i lies between chunk_end[i] and chunk_begin[i + 1].
struct ChunkPlan {
    uint64_t threads = 1;  // effective thread count after clamping
    uint64_t gap = 0;      // gap width in buckets
    std::vector<uint64_t> chunk_begin;
    std::vector<uint64_t> chunk_end;
};

/// Compute the chunking for the requested thread count. The thread count
/// is clamped so that every chunk is at least 64 gap widths wide; with
/// one effective thread there is a single chunk and no gaps.
ChunkPlan plan_chunks(const LayerParams& p, unsigned requested_threads);

/// Multi-threaded seed assignment: chunks run concurrently with private
/// bitmaps, then the gaps are filled (also concurrently) with bitmaps
/// pre-populated from the already-decided buckets on either side. With an
/// effective thread count of 1 this is exactly the sequential algorithm.
AssignOutput parallel_assign(const BucketedCodes& bucketed,
                             const LayerParams& p, unsigned requested_threads);

}  // namespace phast
