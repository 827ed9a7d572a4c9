#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "phast/hash.hpp"
#include "phast/io.hpp"
#include "phast/packed.hpp"
#include "phast/params.hpp"
#include "phast/remap.hpp"
#include "phast/seed_search.hpp"

namespace phast {

/// One map-or-bump layer: resolved parameters plus the packed per-bucket
/// seeds. Seed 0 marks a bumped bucket whose keys continue to the next
/// layer.
struct Layer {
    LayerParams params;
    PackedVector seeds;
    uint64_t offset = 0;  // sum of the ranges of all earlier layers
    uint8_t retry = 0;    // hash re-salt count (last layer only)

    uint32_t salt(uint32_t layer_index) const {
        return layer_index + 64u * retry;
    }
};

struct BuildStats {
    std::vector<uint64_t> layer_sizes;  // keys entering each layer
    uint64_t bumped_first_layer = 0;
    uint64_t remap_entries = 0;
};

/// Perfect hash function over a fixed key set: minimal (bijection onto
/// [0, n)) or with a chosen larger output range. Out-of-set keys return
/// an arbitrary in-range value.
class Mphf {
public:
    Mphf() = default;

    static Mphf build(std::span<const std::string_view> keys,
                      const BuildConfig& config, BuildStats* stats = nullptr);

    uint64_t operator()(std::string_view key) const;

    /// Number of keys the function was built for.
    uint64_t size() const { return n_; }
    /// Output values lie in [0, range()).
    uint64_t range() const { return boundary_; }
    bool minimal() const { return minimal_; }
    size_t layer_count() const { return layers_.size(); }
    const std::vector<Layer>& layers() const { return layers_; }
    const RemapArray& remap() const { return remap_; }

    std::vector<uint8_t> serialize() const;
    static Mphf deserialize(const uint8_t* data, size_t size);

private:
    std::vector<Layer> layers_;
    RemapArray remap_;
    uint64_t n_ = 0;
    uint64_t boundary_ = 0;
    bool minimal_ = true;
};

}  // namespace phast
