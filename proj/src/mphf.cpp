#include "phast/mphf.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>

#include "phast/assign.hpp"
#include "phast/bucketing.hpp"
#include "phast/parallel.hpp"

namespace phast {

namespace {

constexpr uint32_t kMaxLayers = 64;
constexpr uint32_t kMaxTerminalRetries = 255;
constexpr uint32_t kDuplicateScanRetry = 8;
constexpr char kMagic[8] = {'P', 'H', 'A', 'S', 'T', 'M', 'P', 'H'};
constexpr uint16_t kFormatVersion = 1;

void throw_if_duplicates(std::span<const std::string_view> keys,
                         const std::vector<uint32_t>& subset) {
    std::vector<std::string_view> sorted;
    sorted.reserve(subset.size());
    for (uint32_t i : subset) sorted.push_back(keys[i]);
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw duplicate_keys("key set contains duplicates");
}

struct BitSet {
    std::vector<uint64_t> words;
    void resize_bits(uint64_t bits) { words.resize((bits + 63) / 64, 0); }
    void set(uint64_t i) { words[i >> 6] |= uint64_t{1} << (i & 63); }
    bool test(uint64_t i) const {
        return (words[i >> 6] >> (i & 63)) & 1;
    }
};

PackedVector pack_seeds(const std::vector<uint16_t>& seeds, int s_bits) {
    PackedVector packed(static_cast<unsigned>(s_bits), seeds.size());
    for (size_t i = 0; i < seeds.size(); ++i) {
        assert(seeds[i] != kUnassignedSeed);
        packed.set(i, seeds[i]);
    }
    return packed;
}

}  // namespace

Mphf Mphf::build(std::span<const std::string_view> keys,
                 const BuildConfig& config, BuildStats* stats) {
    const uint64_t n = keys.size();
    if (n == 0) throw invalid_config("key count must be at least 1");
    validate_config(config);

    Mphf f;
    f.n_ = n;
    f.minimal_ = config.minimal;
    f.boundary_ = requested_range(n, config);

    BitSet below;  // used output values under the boundary
    below.resize_bits(f.boundary_);
    BitSet above;  // used composite values at or past the boundary

    std::vector<uint32_t> cur(n);
    for (uint64_t i = 0; i < n; ++i) cur[i] = static_cast<uint32_t>(i);
    std::vector<uint64_t> codes;

    const uint64_t threshold = terminal_threshold(config.variant);
    uint64_t offset = 0;

    for (uint32_t layer_index = 0; layer_index < kMaxLayers; ++layer_index) {
        const uint64_t n_i = cur.size();
        if (stats) stats->layer_sizes.push_back(n_i);

        bool terminal = layer_index + 1 == kMaxLayers ||
                        (threshold > 0 && n_i < threshold);
        LayerParams p;
        if (terminal) {
            p = resolve_terminal_params(n_i);
        } else if (layer_index == 0) {
            p = resolve_params(n, config);
        } else {
            p = resolve_inner_params(n_i, config);
        }

        Layer layer;
        layer.params = p;
        layer.offset = offset;

        AssignOutput assigned;
        uint32_t retry = 0;
        for (;;) {
            codes.resize(n_i);
            uint32_t salt = layer_index + 64u * retry;
            for (uint64_t i = 0; i < n_i; ++i)
                codes[i] = hash64(keys[cur[i]], salt);
            BucketedCodes bucketed = partition(codes, p.bucket_count);
            assigned = parallel_assign(bucketed, p, config.threads);
            if (!terminal || assigned.bumped.empty()) break;
            ++retry;
            if (retry == kDuplicateScanRetry) throw_if_duplicates(keys, cur);
            if (retry > kMaxTerminalRetries)
                throw layer_limit_exceeded("final layer failed to converge");
        }
        layer.retry = static_cast<uint8_t>(retry);
        layer.seeds = pack_seeds(assigned.seeds, p.s_bits);

        // Record which output values this layer claims and which keys it
        // passes on.
        uint64_t top = offset + p.range;
        if (top > f.boundary_) above.resize_bits(top - f.boundary_);
        std::vector<uint32_t> next;
        for (uint64_t i = 0; i < n_i; ++i) {
            uint64_t c = codes[i];
            uint64_t seed = assigned.seeds[fmap(c, p.bucket_count)];
            if (seed == 0) {
                next.push_back(cur[i]);
                continue;
            }
            uint64_t v = offset + placed_value(p, seed, c);
            if (v < f.boundary_)
                below.set(v);
            else
                above.set(v - f.boundary_);
        }
        offset = top;
        f.layers_.push_back(std::move(layer));

        if (stats && layer_index == 0) stats->bumped_first_layer = next.size();
        if (next.empty()) break;
        cur = std::move(next);
    }

    // The remap sends every used composite value past the boundary to an
    // unclaimed value below it, in increasing order; padding entries for
    // unused indices repeat the previous target so the sequence stays
    // monotone.
    uint64_t total_above = offset > f.boundary_ ? offset - f.boundary_ : 0;
    std::vector<uint64_t> remap_values;
    remap_values.reserve(total_above);
    uint64_t hole = 0;
    uint64_t last = 0;
    for (uint64_t j = 0; j < total_above; ++j) {
        if (above.test(j)) {
            while (below.test(hole)) ++hole;
            last = hole++;
        }
        remap_values.push_back(last);
    }
    f.remap_ = RemapArray::build(remap_values, f.boundary_, config.remap);
    if (stats) stats->remap_entries = remap_values.size();
    return f;
}

uint64_t Mphf::operator()(std::string_view key) const {
    for (uint32_t i = 0; i < layers_.size(); ++i) {
        const Layer& ly = layers_[i];
        uint64_t c = hash64(key, ly.salt(i));
        uint64_t b = fmap(c, ly.params.bucket_count);
        uint64_t seed = ly.seeds.get(b);
        if (seed == 0) continue;
        uint64_t v = ly.offset + placed_value(ly.params, seed, c);
        if (v < boundary_) return v;
        uint64_t idx = v - boundary_;
        if (idx < remap_.size()) return remap_.get(idx);
        return v % boundary_;  // out-of-set key past the mapped area
    }
    return hash64(key, 0) % boundary_;  // out-of-set key bumped everywhere
}

std::vector<uint8_t> Mphf::serialize() const {
    ByteWriter w;
    w.raw(kMagic, 8);
    w.u16(kFormatVersion);
    w.u16(kDefaultHashId);
    w.u64(n_);
    w.u8(static_cast<uint8_t>(layers_.size()));
    for (const Layer& ly : layers_) {
        const LayerParams& p = ly.params;
        w.u8(static_cast<uint8_t>(p.s_bits));
        w.u8(static_cast<uint8_t>(p.variant));
        uint8_t aux = 0;
        if (p.variant == Variant::WRAP)
            aux = static_cast<uint8_t>(p.delta);
        else if (p.variant == Variant::MUL)
            aux = ly.retry;
        w.u8(aux);
        w.u32(static_cast<uint32_t>(p.slice_len));
        w.u64(p.bucket_count);
        w.u64(p.range);
        w.raw(ly.seeds.data(), ly.seeds.byte_size());
    }
    remap_.serialize(w);
    uint32_t crc = crc32(w.bytes.data(), w.bytes.size());
    w.u32(crc);
    return std::move(w.bytes);
}

Mphf Mphf::deserialize(const uint8_t* data, size_t size) {
    if (size < 4 + 8 + 2 + 2 + 8 + 1)
        throw corrupt_stream("stream too short");
    uint32_t stored_le = static_cast<uint32_t>(data[size - 4]) |
                         static_cast<uint32_t>(data[size - 3]) << 8 |
                         static_cast<uint32_t>(data[size - 2]) << 16 |
                         static_cast<uint32_t>(data[size - 1]) << 24;
    if (crc32(data, size - 4) != stored_le)
        throw corrupt_stream("checksum mismatch");

    ByteReader r(data, size - 4);
    char magic[8];
    r.raw(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw corrupt_stream("bad magic");
    uint16_t version = r.u16();
    if (version != kFormatVersion)
        throw version_mismatch("unsupported format version");
    uint16_t hash_id = r.u16();
    if (hash_id != kDefaultHashId)
        throw hash_mismatch("stream built with a different hash function");

    Mphf f;
    f.n_ = r.u64();
    if (f.n_ == 0) throw corrupt_stream("zero key count");
    uint8_t layer_count = r.u8();
    if (layer_count == 0) throw corrupt_stream("zero layer count");

    for (uint32_t i = 0; i < layer_count; ++i) {
        Layer ly;
        LayerParams& p = ly.params;
        p.s_bits = r.u8();
        if (p.s_bits < 4 || p.s_bits > 12)
            throw corrupt_stream("bad seed size");
        uint8_t variant = r.u8();
        if (variant > 2) throw corrupt_stream("bad variant");
        p.variant = static_cast<Variant>(variant);
        uint8_t aux = r.u8();
        p.delta = 0;
        ly.retry = 0;
        if (p.variant == Variant::WRAP) {
            if (aux < 1 || aux > 3) throw corrupt_stream("bad delta");
            p.delta = aux;
        } else if (p.variant == Variant::MUL) {
            ly.retry = aux;
        } else if (aux != 0) {
            throw corrupt_stream("bad layer header");
        }
        p.slice_len = r.u32();
        if (p.slice_len == 0 || !std::has_single_bit(p.slice_len))
            throw corrupt_stream("bad slice length");
        p.bucket_count = r.u64();
        if (p.bucket_count == 0) throw corrupt_stream("bad bucket count");
        p.range = r.u64();
        p.slice_span = p.slice_len;
        if (p.variant == Variant::ADD)
            p.slice_span += (uint64_t{1} << p.s_bits) - 2;
        if (p.slice_span > p.range) throw corrupt_stream("bad output range");
        ly.offset = f.layers_.empty()
                        ? 0
                        : f.layers_.back().offset + f.layers_.back().params.range;
        ly.seeds = PackedVector(static_cast<unsigned>(p.s_bits), p.bucket_count);
        r.raw(ly.seeds.data(), ly.seeds.byte_size());
        f.layers_.push_back(std::move(ly));
    }

    f.remap_ = RemapArray::deserialize(r);
    if (r.remaining() != 0) throw corrupt_stream("trailing bytes");
    f.boundary_ = f.remap_.universe();
    if (f.boundary_ == 0) throw corrupt_stream("bad output range");
    f.minimal_ = f.boundary_ == f.n_;
    return f;
}

}  // namespace phast
