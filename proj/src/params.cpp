#include "phast/params.hpp"

#include <bit>
#include <cmath>

namespace phast {

namespace {

uint64_t pow2_floor(uint64_t v) {
    return v == 0 ? 1 : std::bit_floor(v);
}

uint64_t round_half_up(double x) {
    return static_cast<uint64_t>(std::floor(x + 0.5));
}

/// Large-n slice length for the multiplicative variant, before the
/// small-n reductions.
uint64_t mul_base_slice(int s_bits) {
    if (s_bits >= 12) return 2048;
    if (s_bits >= 6) return 1024;
    return 512;
}

uint64_t mul_slice_for(int s_bits, uint64_t n) {
    uint64_t L = mul_base_slice(s_bits);
    if (n < 140000) L = std::min<uint64_t>(L, 512);
    if (n < 12000) L = std::min<uint64_t>(L, 256);
    if (n < 9500) L = std::min<uint64_t>(L, 128);
    if (n < 1300) L = std::min<uint64_t>(L, 64);
    if (n < 64) L = std::min<uint64_t>(L, pow2_floor(n));
    return L;
}

uint64_t wrap_slice_for(int s_bits, int delta) {
    if (s_bits < 8) return 512;
    static constexpr uint64_t kTable[3][5] = {
        // S =      8     9     10    11    12
        /* d=1 */ {1024, 1024, 2048, 2048, 4096},
        /* d=2 */ {1024, 2048, 2048, 4096, 4096},
        /* d=3 */ {1024, 2048, 4096, 4096, 4096},
    };
    return kTable[delta - 1][s_bits - 8];
}

}  // namespace

double default_lambda(Variant variant, int s_bits, int delta) {
    switch (variant) {
        case Variant::MUL: {
            static constexpr double kMul[9] = {2.9,  3.2,  3.6,  4.05, 4.5,
                                               5.4,  6.05, 6.75, 7.35};
            return kMul[s_bits - 4];
        }
        case Variant::ADD: {
            static constexpr double kAdd[5] = {5.25, 5.55, 6.10, 6.70, 7.05};
            return s_bits < 8 ? kAdd[0] : kAdd[s_bits - 8];
        }
        case Variant::WRAP: {
            static constexpr double kWrap[3][5] = {
                {5.35, 5.75, 6.35, 6.85, 7.40},
                {5.05, 5.65, 6.15, 6.80, 6.80},
                {5.00, 5.65, 6.15, 6.80, 7.45},
            };
            int col = s_bits < 8 ? 0 : s_bits - 8;
            return kWrap[delta - 1][col];
        }
    }
    return 4.5;
}

namespace {

LayerParams resolve(uint64_t n, const BuildConfig& cfg, uint64_t range) {
    if (n < 1) throw invalid_config("key count must be at least 1");
    LayerParams p;
    p.variant = cfg.variant;

    p.s_bits = cfg.s_bits == 0 ? 8 : cfg.s_bits;
    if (p.s_bits < 4 || p.s_bits > 12)
        throw invalid_config("seed bits must be in {4..12}");

    if (cfg.variant == Variant::WRAP) {
        p.delta = cfg.delta == 0 ? 1 : cfg.delta;
        if (p.delta < 1 || p.delta > 3)
            throw invalid_config("delta must be in {1,2,3}");
    } else {
        if (cfg.delta != 0)
            throw invalid_config("delta is only valid with the wrap variant");
        p.delta = 0;
    }

    p.range = range;
    if (p.range < n) throw invalid_config("output range smaller than key count");

    p.lambda = cfg.lambda == 0.0
                   ? default_lambda(p.variant, p.s_bits, static_cast<int>(p.delta ? p.delta : 1))
                   : cfg.lambda;
    if (!(p.lambda > 0.0)) throw invalid_config("lambda must be positive");
    p.bucket_count = std::max<uint64_t>(1, round_half_up(static_cast<double>(n) / p.lambda));

    uint64_t L;
    bool explicit_L = cfg.slice_len != 0;
    if (explicit_L) {
        L = cfg.slice_len;
        if (!std::has_single_bit(L))
            throw invalid_config("slice length must be a power of two");
        if (L > p.range) throw invalid_config("slice length exceeds output range");
    } else {
        switch (p.variant) {
            case Variant::MUL:
                L = mul_slice_for(p.s_bits, n);
                break;
            case Variant::ADD:
                L = uint64_t{1} << (p.s_bits + 1);
                break;
            case Variant::WRAP:
                L = wrap_slice_for(p.s_bits, static_cast<int>(p.delta));
                break;
        }
        L = std::min(L, pow2_floor(p.range));
    }

    uint64_t add_extra =
        p.variant == Variant::ADD ? (uint64_t{1} << p.s_bits) - 2 : 0;
    // The effective slice must fit inside the output range.
    while (L > 1 && L + add_extra > p.range) L >>= 1;
    if (L + add_extra > p.range)
        throw invalid_config("effective slice length exceeds output range");

    p.slice_len = L;
    p.slice_span = L + add_extra;

    p.window = cfg.window == 0 ? 256 : cfg.window;
    if (p.window < 1) throw invalid_config("window must be at least 1");
    return p;
}

}  // namespace

void validate_config(const BuildConfig& cfg) {
    int s = cfg.s_bits == 0 ? 8 : cfg.s_bits;
    if (s < 4 || s > 12) throw invalid_config("seed bits must be in {4..12}");
    if (cfg.variant == Variant::WRAP) {
        if (cfg.delta < 0 || cfg.delta > 3)
            throw invalid_config("delta must be in {1,2,3}");
    } else if (cfg.delta != 0) {
        throw invalid_config("delta is only valid with the wrap variant");
    }
    if (cfg.lambda != 0.0 && !(cfg.lambda > 0.0))
        throw invalid_config("lambda must be positive");
    if (cfg.slice_len != 0 && !std::has_single_bit(cfg.slice_len))
        throw invalid_config("slice length must be a power of two");
    if (!cfg.minimal && cfg.m_percent < 100.0)
        throw invalid_config("m-percent must be at least 100");
    if (cfg.window < 1) throw invalid_config("window must be at least 1");
}

uint64_t requested_range(uint64_t n, const BuildConfig& cfg) {
    if (cfg.minimal) return n;
    if (cfg.m_percent < 100.0)
        throw invalid_config("m-percent must be at least 100");
    return std::max<uint64_t>(
        n, round_half_up(static_cast<double>(n) * cfg.m_percent / 100.0));
}

LayerParams resolve_params(uint64_t n, const BuildConfig& cfg) {
    return resolve(n, cfg, requested_range(n, cfg));
}

LayerParams resolve_inner_params(uint64_t n, const BuildConfig& cfg) {
    BuildConfig inner = cfg;
    inner.slice_len = 0;  // re-derive L from the (smaller) layer key count
    return resolve(n, inner, n);
}

LayerParams resolve_terminal_params(uint64_t n) {
    BuildConfig cfg;
    cfg.variant = Variant::MUL;
    cfg.s_bits = 8;
    cfg.lambda = 4.0;
    uint64_t range = std::max<uint64_t>(
        n, round_half_up(1.2 * static_cast<double>(n)));
    cfg.slice_len = std::min<uint64_t>(128, pow2_floor(range));
    LayerParams p = resolve(n, cfg, range);
    // Rescale the index weight so that the size-based priority boost
    // spans about one slice length worth of buckets. The standard weight
    // of 1024 realizes this ratio at the tuned large-n parameters
    // (L=1024, ~4.5 values per bucket) but loses the index ordering --
    // and with it the near-zero bump rate the retry loop depends on --
    // when the slice is short relative to the bucket spacing.
    constexpr double kEllSpread = 243023.0;  // ell(7) - ell(1) for S=8
    double per_bucket =
        static_cast<double>(p.slice_starts()) / static_cast<double>(p.bucket_count);
    p.index_weight = std::max<int64_t>(
        1, llround(kEllSpread * per_bucket / static_cast<double>(p.slice_len)));
    return p;
}

uint64_t terminal_threshold(Variant variant) {
    switch (variant) {
        case Variant::ADD: return 8192;
        case Variant::WRAP: return 4096;
        case Variant::MUL: return 0;
    }
    return 0;
}

}  // namespace phast
