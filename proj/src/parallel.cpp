#include "phast/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "phast/seed_search.hpp"

namespace phast {

namespace {

// Run fn(i) for i in [0, jobs) on `jobs` threads, rethrowing the first
// exception after all have joined.
template <typename Fn>
void run_jobs(uint64_t jobs, Fn&& fn) {
    if (jobs == 1) {
        fn(0);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (uint64_t i = 0; i < jobs; ++i) {
        threads.emplace_back([&, i] {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

ChunkPlan plan_chunks(const LayerParams& p, unsigned requested_threads) {
    ChunkPlan plan;
    const uint64_t B = p.bucket_count;
    unsigned __int128 g128 =
        (static_cast<unsigned __int128>(p.slice_span) * B + p.slice_starts() - 1) /
        p.slice_starts();
    uint64_t base_gap = static_cast<uint64_t>(g128);

    uint64_t t = std::max<uint64_t>(requested_threads, 1);
    uint64_t limit = std::max<uint64_t>(B / std::max<uint64_t>(64 * base_gap, 1), 1);
    t = std::min(t, limit);
    if (t > 1 && B < t * base_gap * 2) t = 1;

    if (t == 1) {
        plan.threads = 1;
        plan.gap = 0;
        plan.chunk_begin = {0};
        plan.chunk_end = {B};
        return plan;
    }

    // The gap formula keeps the value ranges of distinct chunks apart up
    // to the rounding of the two range mappings involved; widen by a
    // bucket in the rare case a boundary lands exactly on the edge.
    for (uint64_t extra = 0;; ++extra) {
        plan.threads = t;
        plan.gap = base_gap + extra;
        plan.chunk_begin.clear();
        plan.chunk_end.clear();
        uint64_t usable = B - (t - 1) * plan.gap;
        uint64_t pos = 0;
        for (uint64_t i = 0; i < t; ++i) {
            uint64_t size = usable / t + (i < usable % t ? 1 : 0);
            plan.chunk_begin.push_back(pos);
            plan.chunk_end.push_back(pos + size);
            pos += size + plan.gap;
        }
        bool separated = true;
        for (uint64_t i = 0; i + 1 < t; ++i)
            if (bucket_value_base(plan.chunk_end[i], p) + p.slice_span >
                bucket_value_base(plan.chunk_begin[i + 1], p))
                separated = false;
        if (separated) return plan;
    }
}

AssignOutput parallel_assign(const BucketedCodes& bucketed,
                             const LayerParams& p,
                             unsigned requested_threads) {
    ChunkPlan plan = plan_chunks(p, requested_threads);
    if (plan.threads == 1) return assign_seeds(bucketed, p);

    AssignOutput out;
    out.seeds.assign(p.bucket_count, kUnassignedSeed);
    const uint64_t t = plan.threads;

    std::vector<std::vector<uint64_t>> bumped(t);
    run_jobs(t, [&](uint64_t i) {
        CyclicBitmap bitmap(window_capacity(p, p.window),
                            bucket_value_base(plan.chunk_begin[i], p));
        assign_range(bucketed, p, plan.chunk_begin[i], plan.chunk_end[i],
                     bitmap, out.seeds, bumped[i]);
    });

    // The gaps: pre-populate each bitmap with the values claimed by the
    // decided buckets close enough to reach into (or be reached from) the
    // gap's value range.
    const uint64_t G = plan.gap;
    const uint64_t cover = std::max<uint64_t>(p.window, 2 * G + 8);
    std::vector<std::vector<uint64_t>> gap_bumped(t - 1);
    run_jobs(t - 1, [&](uint64_t g) {
        uint64_t gs = plan.chunk_end[g];
        uint64_t ge = plan.chunk_begin[g + 1];
        CyclicBitmap bitmap(window_capacity(p, cover),
                            bucket_value_base(gs, p));
        auto prefill = [&](uint64_t lo, uint64_t hi) {
            for (uint64_t b = lo; b < hi; ++b) {
                uint64_t seed = out.seeds[b];
                if (seed == 0 || seed == kUnassignedSeed) continue;
                for (uint64_t c : bucketed.bucket(b)) {
                    uint64_t v = placed_value(p, seed, c);
                    if (v >= bitmap.base() && v - bitmap.base() < bitmap.capacity())
                        bitmap.set(v);
                }
            }
        };
        prefill(gs > G + 2 ? gs - G - 2 : 0, gs);
        prefill(ge, std::min(ge + G + 2, p.bucket_count));
        assign_range(bucketed, p, gs, ge, bitmap, out.seeds, gap_bumped[g]);
    });

    for (auto& v : bumped)
        out.bumped.insert(out.bumped.end(), v.begin(), v.end());
    for (auto& v : gap_bumped)
        out.bumped.insert(out.bumped.end(), v.begin(), v.end());
    return out;
}

}  // namespace phast
