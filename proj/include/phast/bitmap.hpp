#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace phast {

/// Fixed-capacity ring of used/free output values. The bit for value v
/// lives at ring position v mod capacity; only values in
/// [base, base + capacity) are meaningful. Advancing the base drops the
/// lowest values and exposes fresh (zeroed) ones.
class CyclicBitmap {
public:
    CyclicBitmap(uint64_t min_capacity, uint64_t base) : base_(base) {
        uint64_t cap = std::bit_ceil(std::max<uint64_t>(min_capacity, 256));
        capacity_ = cap;
        mask_ = cap - 1;
        words_.assign(cap >> 6, 0);
        word_mask_ = (cap >> 6) - 1;
    }

    uint64_t base() const { return base_; }
    uint64_t capacity() const { return capacity_; }
    uint64_t lifetime_sets() const { return lifetime_sets_; }

    bool test(uint64_t value) const {
        assert(value >= base_ && value - base_ < capacity_);
        uint64_t pos = value & mask_;
        return (words_[pos >> 6] >> (pos & 63)) & 1;
    }

    void set(uint64_t value) {
        assert(value >= base_ && value - base_ < capacity_);
        uint64_t pos = value & mask_;
        words_[pos >> 6] |= uint64_t{1} << (pos & 63);
        ++lifetime_sets_;
    }

    /// 64 consecutive used/free bits starting at `value` (bit i = value+i),
    /// assembled across the ring boundary when needed.
    uint64_t read64(uint64_t value) const {
        assert(value >= base_ && value - base_ + 63 < capacity_);
        uint64_t pos = value & mask_;
        uint64_t w = pos >> 6;
        unsigned off = pos & 63;
        uint64_t r = words_[w] >> off;
        if (off != 0) r |= words_[(w + 1) & word_mask_] << (64 - off);
        return r;
    }

    /// Move the covered range forward to [new_base, new_base + capacity),
    /// zeroing the newly exposed positions.
    void advance_to(uint64_t new_base) {
        assert(new_base >= base_);
        uint64_t dropped = new_base - base_;
        if (dropped == 0) return;
        if (dropped >= capacity_) {
            words_.assign(words_.size(), 0);
            base_ = new_base;
            return;
        }
        clear_range(base_, dropped);
        base_ = new_base;
    }

private:
    // Zero `count` ring positions starting at the position of `value`.
    void clear_range(uint64_t value, uint64_t count) {
        uint64_t pos = value & mask_;
        while (count > 0) {
            uint64_t w = pos >> 6;
            unsigned off = pos & 63;
            uint64_t n = std::min<uint64_t>(count, 64 - off);
            uint64_t m = n == 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1) << off;
            words_[w] &= ~m;
            pos = (pos + n) & mask_;
            count -= n;
        }
    }

    std::vector<uint64_t> words_;
    uint64_t capacity_ = 0;
    uint64_t mask_ = 0;
    uint64_t word_mask_ = 0;
    uint64_t base_ = 0;
    uint64_t lifetime_sets_ = 0;
};

}  // namespace phast
