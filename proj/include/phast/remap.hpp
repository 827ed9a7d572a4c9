#pragma once

#include <cstdint>
#include <vector>

#include "phast/io.hpp"
#include "phast/packed.hpp"
#include "phast/params.hpp"

namespace phast {

/// Monotone array of output-value corrections, stored either Elias-Fano
/// compressed or as a plain fixed-width packed array. All entries are
/// below `universe`.
class RemapArray {
public:
    RemapArray() = default;

    /// `values` must be nondecreasing with every entry < universe.
    static RemapArray build(const std::vector<uint64_t>& values,
                            uint64_t universe, RemapEncoding encoding);

    uint64_t get(size_t i) const;
    size_t size() const { return size_; }
    uint64_t universe() const { return universe_; }
    RemapEncoding encoding() const { return encoding_; }

    /// Payload bits when serialized (excluding the in-memory select
    /// samples, which are rebuilt on load).
    uint64_t bit_size() const;

    void serialize(ByteWriter& w) const;
    static RemapArray deserialize(ByteReader& r);

private:
    void rebuild_samples();

    RemapEncoding encoding_ = RemapEncoding::COMPACT;
    size_t size_ = 0;
    uint64_t universe_ = 0;

    // Elias-Fano parts (low halves + unary-coded high halves).
    unsigned low_bits_ = 0;
    PackedVector low_;
    std::vector<uint64_t> high_;
    std::vector<uint64_t> samples_;  // bit position of every 256th set bit

    // Compact part.
    PackedVector plain_;
};

}  // namespace phast
