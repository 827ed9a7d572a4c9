#include "phast/keygen.hpp"

#include <random>
#include <unordered_set>

#include "phast/hash.hpp"

namespace phast {

namespace {

KeySet finish(std::string&& arena, const std::vector<size_t>& offsets) {
    KeySet set;
    set.arena = std::move(arena);
    set.views.reserve(offsets.size() / 2);
    for (size_t i = 0; i < offsets.size(); i += 2)
        set.views.emplace_back(set.arena.data() + offsets[i], offsets[i + 1]);
    return set;
}

}  // namespace

KeySet random_string_keys(uint64_t n, uint64_t seed, size_t min_len,
                          size_t max_len) {
    static constexpr char kAlphabet[] =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> len_dist(min_len, max_len);
    std::uniform_int_distribution<size_t> chr_dist(0, sizeof(kAlphabet) - 2);

    std::string arena;
    arena.reserve(n * (min_len + max_len) / 2);
    std::vector<size_t> offsets;
    offsets.reserve(2 * n);
    std::unordered_set<uint64_t> digests;
    digests.reserve(n * 2);

    std::string key;
    while (digests.size() < n) {
        key.clear();
        size_t len = len_dist(rng);
        for (size_t i = 0; i < len; ++i) key.push_back(kAlphabet[chr_dist(rng)]);
        if (!digests.insert(hash_bytes(key.data(), key.size(), 0)).second)
            continue;
        offsets.push_back(arena.size());
        offsets.push_back(len);
        arena += key;
    }
    return finish(std::move(arena), offsets);
}

KeySet random_u64_keys(uint64_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::unordered_set<uint64_t> seen;
    seen.reserve(n * 2);

    std::string arena;
    arena.reserve(n * 12);
    std::vector<size_t> offsets;
    offsets.reserve(2 * n);
    while (seen.size() < n) {
        uint64_t v = rng();
        if (!seen.insert(v).second) continue;
        std::string s = std::to_string(v);
        offsets.push_back(arena.size());
        offsets.push_back(s.size());
        arena += s;
    }
    return finish(std::move(arena), offsets);
}

}  // namespace phast
