#include "phast/assign.hpp"

#include <queue>

#include "phast/ell_table.hpp"
#include "phast/seed_search.hpp"

namespace phast {

namespace {

struct HeapEntry {
    int64_t prio;
    uint64_t bucket;
};

// Max-heap by priority; ties go to the smaller bucket index.
bool operator<(const HeapEntry& a, const HeapEntry& b) {
    if (a.prio != b.prio) return a.prio < b.prio;
    return a.bucket > b.bucket;
}

}  // namespace

uint64_t bucket_min_code(uint64_t b, uint64_t bucket_count) {
    if (b == 0) return 0;
    unsigned __int128 num = static_cast<unsigned __int128>(b) << 64;
    return static_cast<uint64_t>((num + bucket_count - 1) / bucket_count);
}

uint64_t bucket_value_base(uint64_t b, const LayerParams& p) {
    return fmap(bucket_min_code(b, p.bucket_count), p.slice_starts());
}

uint64_t window_capacity(const LayerParams& p, uint64_t cover_buckets) {
    unsigned __int128 span =
        static_cast<unsigned __int128>(p.slice_starts()) * (cover_buckets + 2) /
            p.bucket_count +
        p.slice_span + 128;
    uint64_t full = p.slice_starts() + p.slice_span + 128;
    if (span > full) return full;
    return static_cast<uint64_t>(span);
}

void assign_range(const BucketedCodes& bucketed, const LayerParams& p,
                  uint64_t lo_bucket, uint64_t hi_bucket, CyclicBitmap& bitmap,
                  std::vector<uint16_t>& seeds,
                  std::vector<uint64_t>& out_bumped) {
    const EllTable ell = ell_for_seed_bits(p.s_bits, p.variant);
    SeedScratch scratch;
    std::priority_queue<HeapEntry> heap;

    uint64_t w_lo = lo_bucket;   // first undecided bucket
    uint64_t w_next = lo_bucket; // next bucket not yet in the window

    auto advance_window = [&] {
        bool moved = false;
        for (;;) {
            while (w_lo < w_next && seeds[w_lo] != kUnassignedSeed) {
                ++w_lo;
                moved = true;
            }
            bool exposed = false;
            while (w_next < hi_bucket && w_next < w_lo + p.window) {
                uint64_t size = bucketed.bucket_size(w_next);
                if (size == 0) {
                    seeds[w_next] = 1;
                } else {
                    heap.push({priority(size, w_next, ell, p.index_weight),
                               w_next});
                }
                ++w_next;
                exposed = true;
            }
            if (!exposed) break;
        }
        if (moved && w_lo < hi_bucket)
            bitmap.advance_to(bucket_value_base(w_lo, p));
    };

    advance_window();
    while (!heap.empty()) {
        uint64_t b = heap.top().bucket;
        heap.pop();
        auto codes = bucketed.bucket(b);
        uint64_t seed = find_seed(codes, bitmap, p, scratch);
        seeds[b] = static_cast<uint16_t>(seed);
        if (seed != 0) {
            for (uint64_t c : codes) bitmap.set(placed_value(p, seed, c));
        } else {
            out_bumped.insert(out_bumped.end(), codes.begin(), codes.end());
        }
        if (w_lo < hi_bucket && seeds[w_lo] != kUnassignedSeed)
            advance_window();
    }
}

AssignOutput assign_seeds(const BucketedCodes& bucketed, const LayerParams& p) {
    AssignOutput out;
    out.seeds.assign(p.bucket_count, kUnassignedSeed);
    CyclicBitmap bitmap(window_capacity(p, p.window), 0);
    assign_range(bucketed, p, 0, p.bucket_count, bitmap, out.seeds, out.bumped);
    return out;
}

}  // namespace phast
