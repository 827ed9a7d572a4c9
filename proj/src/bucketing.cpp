#include "phast/bucketing.hpp"

#include <cmath>

#include "phast/common.hpp"
#include "phast/primitives.hpp"

namespace phast {

uint64_t bucket_count_for(uint64_t n, double lambda) {
    if (n < 1) throw invalid_config("key count must be at least 1");
    if (!(lambda > 0.0)) throw invalid_config("lambda must be positive");
    uint64_t b = static_cast<uint64_t>(
        std::floor(static_cast<double>(n) / lambda + 0.5));
    return b < 1 ? 1 : b;
}

BucketedCodes partition(std::span<const uint64_t> codes, uint64_t bucket_count) {
    if (bucket_count < 1) throw invalid_config("bucket count must be at least 1");
    BucketedCodes out;
    out.bucket_count = bucket_count;
    out.bucket_bounds.assign(bucket_count + 1, 0);

    for (uint64_t c : codes) out.bucket_bounds[fmap(c, bucket_count) + 1]++;
    for (uint64_t i = 1; i <= bucket_count; ++i)
        out.bucket_bounds[i] += out.bucket_bounds[i - 1];

    out.codes.resize(codes.size());
    std::vector<uint64_t> cursor(out.bucket_bounds.begin(),
                                 out.bucket_bounds.end() - 1);
    for (uint64_t c : codes) out.codes[cursor[fmap(c, bucket_count)]++] = c;
    return out;
}

}  // namespace phast
