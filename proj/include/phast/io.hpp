#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

#include "phast/common.hpp"

namespace phast {

/// Little-endian byte-stream writer.
struct ByteWriter {
    std::vector<uint8_t> bytes;

    void u8(uint8_t v) { bytes.push_back(v); }
    void u16(uint16_t v) { put(v, 2); }
    void u32(uint32_t v) { put(v, 4); }
    void u64(uint64_t v) { put(v, 8); }
    void raw(const void* p, size_t n) {
        const auto* b = static_cast<const uint8_t*>(p);
        bytes.insert(bytes.end(), b, b + n);
    }

private:
    void put(uint64_t v, int n) {
        for (int i = 0; i < n; ++i) bytes.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
};

/// Little-endian byte-stream reader; throws corrupt_stream on overrun.
struct ByteReader {
    const uint8_t* data = nullptr;
    size_t size = 0;
    size_t pos = 0;

    ByteReader(const void* p, size_t n)
        : data(static_cast<const uint8_t*>(p)), size(n) {}

    size_t remaining() const { return size - pos; }

    uint8_t u8() { return static_cast<uint8_t>(get(1)); }
    uint16_t u16() { return static_cast<uint16_t>(get(2)); }
    uint32_t u32() { return static_cast<uint32_t>(get(4)); }
    uint64_t u64() { return get(8); }
    void raw(void* out, size_t n) {
        need(n);
        std::memcpy(out, data + pos, n);
        pos += n;
    }

private:
    void need(size_t n) const {
        if (size - pos < n) throw corrupt_stream("unexpected end of stream");
    }
    uint64_t get(int n) {
        need(n);
        uint64_t v = 0;
        for (int i = 0; i < n; ++i)
            v |= static_cast<uint64_t>(data[pos + i]) << (8 * i);
        pos += n;
        return v;
    }
};

/// CRC-32 (IEEE, reflected) over a byte range.
uint32_t crc32(const void* p, size_t n);

}  // namespace phast
