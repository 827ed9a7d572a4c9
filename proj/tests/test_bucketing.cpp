#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <vector>

#include "phast/bucketing.hpp"
#include "phast/ell_table.hpp"
#include "phast/params.hpp"
#include "phast/primitives.hpp"

using namespace phast;

TEST_CASE("bucket_count_for rounds n/lambda half-up with a floor of 1") {
    CHECK(bucket_count_for(1000, 4.0) == 250);
    CHECK(bucket_count_for(9, 2.0) == 5);    // 4.5 rounds up
    CHECK(bucket_count_for(7, 2.0) == 4);    // 3.5 rounds up
    CHECK(bucket_count_for(1, 100.0) == 1);  // never zero
    CHECK(bucket_count_for(1000000, 4.5) == 222222);
}

TEST_CASE("partition agrees with a map-based grouping oracle") {
    std::mt19937_64 rng(1);
    for (int round = 0; round < 20; ++round) {
        uint64_t n = 1 + rng() % 2000;
        uint64_t B = 1 + rng() % 300;
        std::vector<uint64_t> codes(n);
        for (auto& c : codes) c = rng();
        if (round % 3 == 0)  // exercise duplicate codes too
            for (uint64_t i = 1; i < n; i += 7) codes[i] = codes[i - 1];

        BucketedCodes bc = partition(codes, B);
        REQUIRE(bc.bucket_count == B);
        REQUIRE(bc.bucket_bounds.size() == B + 1);
        CHECK(bc.bucket_bounds.front() == 0);
        CHECK(bc.bucket_bounds.back() == n);

        std::map<uint64_t, std::vector<uint64_t>> oracle;
        for (uint64_t c : codes) oracle[fmap(c, B)].push_back(c);
        for (uint64_t b = 0; b < B; ++b) {
            auto got = bc.bucket(b);
            auto it = oracle.find(b);
            size_t want = it == oracle.end() ? 0 : it->second.size();
            REQUIRE(got.size() == want);
            for (size_t i = 0; i < want; ++i) CHECK(got[i] == it->second[i]);
        }
    }
}

TEST_CASE("partition keeps bounds monotone and buckets ordered by fmap") {
    std::mt19937_64 rng(2);
    std::vector<uint64_t> codes(5000);
    for (auto& c : codes) c = rng();
    BucketedCodes bc = partition(codes, 1024);
    for (uint64_t b = 0; b < 1024; ++b) {
        CHECK(bc.bucket_bounds[b] <= bc.bucket_bounds[b + 1]);
        for (uint64_t c : bc.bucket(b)) CHECK(fmap(c, 1024) == b);
    }
}

TEST_CASE("default lambda tables cover every variant") {
    CHECK(default_lambda(Variant::MUL, 8, 1) == doctest::Approx(4.5));
    CHECK(default_lambda(Variant::MUL, 4, 1) == doctest::Approx(2.9));
    CHECK(default_lambda(Variant::MUL, 12, 1) == doctest::Approx(7.35));
    CHECK(default_lambda(Variant::ADD, 8, 1) == doctest::Approx(5.25));
    CHECK(default_lambda(Variant::WRAP, 11, 1) == doctest::Approx(6.85));
    CHECK(default_lambda(Variant::WRAP, 8, 3) == doctest::Approx(5.00));
}

TEST_CASE("resolve_params fills defaults for a large multiplicative build") {
    BuildConfig cfg;
    LayerParams p = resolve_params(1000000, cfg);
    CHECK(p.variant == Variant::MUL);
    CHECK(p.s_bits == 8);
    CHECK(p.lambda == doctest::Approx(4.5));
    CHECK(p.slice_len == 1024);
    CHECK(p.slice_span == 1024);
    CHECK(p.range == 1000000);
    CHECK(p.window == 256);
    CHECK(p.bucket_count == 222222);
    CHECK(p.seed_limit() == 255);
    CHECK(p.slice_starts() == 1000000 - 1024 + 1);
}

TEST_CASE("resolve_params slice-length defaults depend on variant and S") {
    {
        BuildConfig cfg;
        cfg.s_bits = 12;
        CHECK(resolve_params(100000000, cfg).slice_len == 2048);
    }
    {
        BuildConfig cfg;
        cfg.s_bits = 5;
        CHECK(resolve_params(100000000, cfg).slice_len == 512);
    }
    {
        BuildConfig cfg;
        cfg.variant = Variant::ADD;
        cfg.s_bits = 8;
        LayerParams p = resolve_params(1000000, cfg);
        CHECK(p.slice_len == 512);
        CHECK(p.slice_span == 512 + 254);  // L + 2^S - 2
    }
    {
        BuildConfig cfg;
        cfg.variant = Variant::WRAP;
        cfg.s_bits = 11;
        cfg.delta = 1;
        CHECK(resolve_params(1000000, cfg).slice_len == 2048);
    }
}

TEST_CASE("small key counts shrink the slice to fit the range") {
    BuildConfig cfg;
    LayerParams p = resolve_params(100, cfg);
    CHECK(p.slice_len <= 64);
    CHECK(p.slice_span <= p.range);

    cfg.variant = Variant::ADD;
    p = resolve_params(600, cfg);
    CHECK(p.slice_span <= p.range);
}

TEST_CASE("configuration validation rejects bad settings") {
    auto reject = [](BuildConfig cfg) {
        CHECK_THROWS_AS(validate_config(cfg), invalid_config);
    };
    BuildConfig cfg;
    cfg.s_bits = 3;
    reject(cfg);
    cfg.s_bits = 13;
    reject(cfg);

    cfg = BuildConfig{};
    cfg.delta = 1;  // delta without the wrap variant
    reject(cfg);

    cfg = BuildConfig{};
    cfg.variant = Variant::WRAP;
    cfg.delta = 4;
    reject(cfg);

    cfg = BuildConfig{};
    cfg.lambda = -2.0;
    reject(cfg);

    cfg = BuildConfig{};
    cfg.slice_len = 1000;  // not a power of two
    reject(cfg);

    cfg = BuildConfig{};
    cfg.minimal = false;
    cfg.m_percent = 80.0;
    reject(cfg);

    cfg = BuildConfig{};
    cfg.window = 0;
    reject(cfg);

    // Slice length larger than the output range only fails on resolve.
    cfg = BuildConfig{};
    cfg.slice_len = 4096;
    CHECK_THROWS_AS(resolve_params(100, cfg), invalid_config);
}

TEST_CASE("requested_range follows the minimal flag and m_percent") {
    BuildConfig cfg;
    CHECK(requested_range(1000, cfg) == 1000);
    cfg.minimal = false;
    cfg.m_percent = 105.0;
    CHECK(requested_range(1000, cfg) == 1050);
    cfg.m_percent = 100.0;
    CHECK(requested_range(1000, cfg) == 1000);
}

TEST_CASE("terminal layer parameters") {
    LayerParams p = resolve_terminal_params(1000);
    CHECK(p.variant == Variant::MUL);
    CHECK(p.s_bits == 8);
    CHECK(p.lambda == doctest::Approx(4.0));
    CHECK(p.range == 1200);
    CHECK(p.slice_len == 128);
    CHECK((p.slice_len & (p.slice_len - 1)) == 0);
    CHECK(p.bucket_count == 250);
    CHECK(p.index_weight >= 1);

    // Tiny terminal layers still resolve; the slice shrinks to fit.
    LayerParams tiny = resolve_terminal_params(1);
    CHECK(tiny.slice_span <= tiny.range);
}

TEST_CASE("terminal thresholds per variant") {
    CHECK(terminal_threshold(Variant::MUL) == 0);
    CHECK(terminal_threshold(Variant::ADD) > 0);
    CHECK(terminal_threshold(Variant::WRAP) > 0);
}

TEST_CASE("S=8 ell table matches the tuned curve") {
    EllTable t = ell_for_seed_bits(8);
    CHECK(t(1) == -50171);
    CHECK(t(2) == 59462);
    CHECK(t(3) == 109868);
    CHECK(t(4) == 141865);
    CHECK(t(5) == 163564);
    CHECK(t(6) == 181092);
    CHECK(t(7) == 192852);
    // Linear extrapolation beyond size 7.
    CHECK(t(8) == 192852 + (192852 - 181092));
    CHECK(t(9) == 216372);
}

TEST_CASE("priority combines the size term and the index penalty") {
    EllTable t = ell_for_seed_bits(8);
    CHECK(priority(1, 0, t) == -50171);
    CHECK(priority(9, 0, t) == 216372);
    CHECK(priority(2, 10, t) == 49222);  // 59462 - 10 * 1024
    CHECK(priority(2, 10, t, 0) == 59462);
    CHECK(priority(2, 10, t, 100) == 59462 - 1000);
}

TEST_CASE("every ell table is increasing in the bucket size") {
    for (int s_bits = 4; s_bits <= 12; ++s_bits) {
        for (Variant v : {Variant::MUL, Variant::ADD, Variant::WRAP}) {
            EllTable t = ell_for_seed_bits(s_bits, v);
            for (uint64_t size = 1; size < 12; ++size)
                CHECK(t(size) < t(size + 1));
        }
    }
}
