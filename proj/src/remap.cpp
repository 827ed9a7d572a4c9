#include "phast/remap.hpp"

#include <bit>
#include <cassert>

namespace phast {

RemapArray RemapArray::build(const std::vector<uint64_t>& values,
                             uint64_t universe, RemapEncoding encoding) {
    RemapArray r;
    r.encoding_ = encoding;
    r.size_ = values.size();
    r.universe_ = universe;
    if (r.size_ == 0) return r;

    if (encoding == RemapEncoding::COMPACT) {
        unsigned width =
            universe > 1 ? static_cast<unsigned>(std::bit_width(universe - 1)) : 1;
        r.plain_ = PackedVector(width, values.size());
        for (size_t i = 0; i < values.size(); ++i) r.plain_.set(i, values[i]);
        return r;
    }

    uint64_t per = universe / values.size();
    r.low_bits_ = per > 1 ? static_cast<unsigned>(std::bit_width(per)) - 1 : 0;
    r.low_ = PackedVector(r.low_bits_, values.size());
    uint64_t high_len = (universe >> r.low_bits_) + values.size() + 1;
    r.high_.assign((high_len + 63) / 64, 0);
    for (size_t i = 0; i < values.size(); ++i) {
        uint64_t v = values[i];
        assert(v < universe);
        if (r.low_bits_ > 0)
            r.low_.set(i, v & ((uint64_t{1} << r.low_bits_) - 1));
        uint64_t pos = (v >> r.low_bits_) + i;
        r.high_[pos >> 6] |= uint64_t{1} << (pos & 63);
    }
    r.rebuild_samples();
    return r;
}

void RemapArray::rebuild_samples() {
    samples_.clear();
    uint64_t count = 0;
    for (size_t wi = 0; wi < high_.size(); ++wi) {
        uint64_t w = high_[wi];
        while (w) {
            if ((count & 255) == 0)
                samples_.push_back(wi * 64 + std::countr_zero(w));
            ++count;
            w &= w - 1;
        }
    }
}

uint64_t RemapArray::get(size_t i) const {
    assert(i < size_);
    if (encoding_ == RemapEncoding::COMPACT) return plain_.get(i);

    uint64_t pos = samples_[i >> 8];
    uint64_t remaining = i & 255;
    size_t wi = pos >> 6;
    uint64_t w = high_[wi] & (~uint64_t{0} << (pos & 63));
    for (;;) {
        unsigned pc = static_cast<unsigned>(std::popcount(w));
        if (remaining < pc) break;
        remaining -= pc;
        w = high_[++wi];
    }
    for (; remaining > 0; --remaining) w &= w - 1;
    uint64_t bit = wi * 64 + std::countr_zero(w);
    uint64_t high = bit - i;
    uint64_t low = low_bits_ > 0 ? low_.get(i) : 0;
    return (high << low_bits_) | low;
}

uint64_t RemapArray::bit_size() const {
    if (size_ == 0) return 0;
    if (encoding_ == RemapEncoding::COMPACT) return plain_.byte_size() * 8;
    return low_.byte_size() * 8 + high_.size() * 64;
}

void RemapArray::serialize(ByteWriter& w) const {
    w.u8(static_cast<uint8_t>(encoding_));
    w.u64(size_);
    w.u64(universe_);
    if (size_ == 0) return;
    if (encoding_ == RemapEncoding::COMPACT) {
        w.u8(static_cast<uint8_t>(plain_.width()));
        w.raw(plain_.data(), plain_.byte_size());
    } else {
        w.u64(high_.size());
        w.raw(low_.data(), low_.byte_size());
        for (uint64_t word : high_) w.u64(word);
    }
}

RemapArray RemapArray::deserialize(ByteReader& r) {
    RemapArray a;
    uint8_t tag = r.u8();
    if (tag > 1) throw corrupt_stream("bad remap encoding tag");
    a.encoding_ = static_cast<RemapEncoding>(tag);
    a.size_ = r.u64();
    a.universe_ = r.u64();
    if (a.size_ == 0) return a;
    if (a.encoding_ == RemapEncoding::COMPACT) {
        unsigned width = r.u8();
        if (width == 0 || width > 57) throw corrupt_stream("bad remap width");
        a.plain_ = PackedVector(width, a.size_);
        r.raw(a.plain_.data(), a.plain_.byte_size());
    } else {
        uint64_t per = a.universe_ / a.size_;
        a.low_bits_ = per > 1 ? static_cast<unsigned>(std::bit_width(per)) - 1 : 0;
        uint64_t words = r.u64();
        uint64_t expect = ((a.universe_ >> a.low_bits_) + a.size_ + 1 + 63) / 64;
        if (words != expect) throw corrupt_stream("bad remap length");
        a.low_ = PackedVector(a.low_bits_, a.size_);
        r.raw(a.low_.data(), a.low_.byte_size());
        a.high_.resize(words);
        for (auto& word : a.high_) word = r.u64();
        a.rebuild_samples();
    }
    return a;
}

}  // namespace phast
