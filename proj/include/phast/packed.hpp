#pragma once

#include <cassert>
#include <cstdint>
#include <cstring>
#include <vector>

namespace phast {

/// Fixed-width bit-packed integer array backed by bytes, so the occupied
/// prefix can be serialized verbatim. Entries are read and written with
/// unaligned 64-bit accesses; widths up to 57 bits are supported.
class PackedVector {
public:
    PackedVector() = default;
    PackedVector(unsigned width, size_t count)
        : width_(width), size_(count), bytes_(byte_size() + 8, 0) {
        assert(width_ <= 57);
    }

    unsigned width() const { return width_; }
    size_t size() const { return size_; }
    /// Bytes actually carrying data (excludes the access padding).
    size_t byte_size() const { return (size_ * width_ + 7) / 8; }
    const uint8_t* data() const { return bytes_.data(); }
    uint8_t* data() { return bytes_.data(); }

    uint64_t get(size_t i) const {
        size_t bit = i * width_;
        uint64_t w;
        std::memcpy(&w, bytes_.data() + (bit >> 3), 8);
        return (w >> (bit & 7)) & mask();
    }

    void set(size_t i, uint64_t v) {
        assert(v <= mask());
        size_t bit = i * width_;
        uint8_t* p = bytes_.data() + (bit >> 3);
        uint64_t w;
        std::memcpy(&w, p, 8);
        w = (w & ~(mask() << (bit & 7))) | (v << (bit & 7));
        std::memcpy(p, &w, 8);
    }

private:
    uint64_t mask() const {
        return width_ == 0 ? 0 : (~uint64_t{0} >> (64 - width_));
    }

    unsigned width_ = 0;
    size_t size_ = 0;
    std::vector<uint8_t> bytes_;
};

}  // namespace phast
