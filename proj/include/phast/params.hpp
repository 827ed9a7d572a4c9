#pragma once

#include <cstdint>

#include "phast/common.hpp"

namespace phast {

enum class Variant : uint8_t {
    MUL = 0,   // multiplicative placement
    ADD = 1,   // additive placement, bit-parallel seed search
    WRAP = 2,  // wrapping additive placement
};

enum class RemapEncoding : uint8_t {
    ELIAS_FANO = 0,
    COMPACT = 1,
};

/// Requested build configuration. Zero-valued numeric fields mean
/// "use the default for the chosen variant and key count".
struct BuildConfig {
    Variant variant = Variant::MUL;
    int s_bits = 0;          // seed size in bits, {4..12}; default 8
    double lambda = 0.0;     // expected bucket size; default depends on variant/S
    uint64_t slice_len = 0;  // L, power of two; default depends on variant/S/n
    int delta = 0;           // WRAP only, {1,2,3}; default 1
    bool minimal = true;
    double m_percent = 100.0;  // output range as percent of n (non-minimal mode)
    RemapEncoding remap = RemapEncoding::ELIAS_FANO;
    unsigned threads = 1;
    int window = 256;  // W
};

/// Fully resolved parameters of one map-or-bump layer.
struct LayerParams {
    Variant variant = Variant::MUL;
    int s_bits = 8;
    uint64_t slice_len = 1024;   // L
    uint64_t slice_span = 1024;  // effective slice length: L, or L + 2^S - 2 for ADD
    uint64_t bucket_count = 1;   // B
    uint64_t range = 1;          // m
    uint64_t delta = 1;
    int window = 256;
    double lambda = 4.5;
    // Weight of the bucket index in the selection priority. The no-bump
    // final layer uses 0 (pure size order): with few buckets the index
    // term would override the size order the retry loop depends on.
    int64_t index_weight = 1024;

    uint64_t seed_limit() const { return (uint64_t{1} << s_bits) - 1; }
    /// Number of overlapping slices, the second fmap factor in the query.
    uint64_t slice_starts() const { return range - slice_span + 1; }
};

/// Default expected bucket size for a variant/S/delta combination.
double default_lambda(Variant variant, int s_bits, int delta);

/// Reject impossible settings (bad S, delta outside the wrap variant,
/// non-power-of-two slice length, ...) independent of the key count.
void validate_config(const BuildConfig& requested);

/// Output range implied by the configuration: n when minimal, otherwise
/// n scaled by m_percent.
uint64_t requested_range(uint64_t n, const BuildConfig& requested);

/// Resolve a layer-1 configuration against a key count: fill every unset
/// field with its default, validate explicit settings.
LayerParams resolve_params(uint64_t n, const BuildConfig& requested);

/// Parameters of a non-first layer handling `n` bumped keys (range n,
/// same variant family as the request).
LayerParams resolve_inner_params(uint64_t n, const BuildConfig& requested);

/// Parameters of the no-bump terminal layer: regular multiplicative
/// placement, S=8, lambda=4, m=1.2n.
LayerParams resolve_terminal_params(uint64_t n);

/// Key-count threshold below which construction switches to the terminal
/// layer (0 = no threshold; the layer cap still applies).
uint64_t terminal_threshold(Variant variant);

}  // namespace phast
