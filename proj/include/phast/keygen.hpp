#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace phast {

/// Owning set of distinct keys. The views stay valid for the lifetime of
/// the KeySet (the arena is never reallocated after construction).
struct KeySet {
    std::string arena;
    std::vector<std::string_view> views;
};

/// n distinct random alphanumeric strings with lengths uniform in
/// [min_len, max_len], reproducible from the seed.
KeySet random_string_keys(uint64_t n, uint64_t seed, size_t min_len = 10,
                          size_t max_len = 50);

/// n distinct 64-bit integers drawn without replacement, rendered as
/// decimal strings.
KeySet random_u64_keys(uint64_t n, uint64_t seed);

}  // namespace phast
