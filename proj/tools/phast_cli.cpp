// Command-line front end: build/save/load/query structures from key
// files, generate reproducible key corpora, and run benchmark sweeps that
// emit CSV records of space and throughput.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phast/keygen.hpp"
#include "phast/mphf.hpp"

namespace {

using namespace phast;

constexpr const char* kCsvHeader =
    "variant,S,L,lambda,delta,threads,n,bits_per_key,build_ns_per_key,"
    "query_ns_per_query,bumped_frac,layers,error";

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::MUL: return "mul";
        case Variant::ADD: return "add";
        case Variant::WRAP: return "wrap";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    if (name == "mul") return Variant::MUL;
    if (name == "add") return Variant::ADD;
    if (name == "wrap") return Variant::WRAP;
    throw CLI::ValidationError("--variant", "expected mul, add, or wrap");
}

// ---------------------------------------------------------------------------
// Key file I/O. Text files are newline-delimited; binary files store each
// key as a little-endian u32 length followed by the raw bytes (needed for
// keys containing newlines).

struct KeyFile {
    std::string arena;
    std::vector<std::string_view> views;
};

KeyFile load_keys(const std::string& path, bool binary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open key file: " + path);
    KeyFile kf;
    std::ostringstream buf;
    buf << in.rdbuf();
    kf.arena = std::move(buf).str();

    if (binary) {
        size_t pos = 0;
        while (pos < kf.arena.size()) {
            if (kf.arena.size() - pos < 4)
                throw std::runtime_error("truncated binary key file");
            uint32_t len = 0;
            std::memcpy(&len, kf.arena.data() + pos, 4);
            pos += 4;
            if (kf.arena.size() - pos < len)
                throw std::runtime_error("truncated binary key file");
            kf.views.emplace_back(kf.arena.data() + pos, len);
            pos += len;
        }
    } else {
        size_t start = 0;
        while (start < kf.arena.size()) {
            size_t nl = kf.arena.find('\n', start);
            if (nl == std::string::npos) nl = kf.arena.size();
            kf.views.emplace_back(kf.arena.data() + start, nl - start);
            start = nl + 1;
        }
        // A trailing newline does not denote an empty final key.
        if (!kf.views.empty() && kf.views.back().empty() &&
            !kf.arena.empty() && kf.arena.back() == '\n')
            kf.views.pop_back();
    }
    return kf;
}

void write_keys(std::ostream& out, const std::vector<std::string_view>& keys,
                bool binary) {
    for (auto k : keys) {
        if (binary) {
            uint32_t len = static_cast<uint32_t>(k.size());
            out.write(reinterpret_cast<const char*>(&len), 4);
            out.write(k.data(), static_cast<std::streamsize>(k.size()));
        } else {
            out.write(k.data(), static_cast<std::streamsize>(k.size()));
            out.put('\n');
        }
    }
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string s = std::move(buf).str();
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Measurement helpers.

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct BenchRecord {
    BuildConfig config;
    uint64_t slice_len = 0;
    uint64_t n = 0;
    double bits_per_key = 0;
    double build_ns_per_key = 0;
    double query_ns_per_query = 0;
    double bumped_frac = 0;
    size_t layers = 0;
    std::string error;

    std::string csv() const {
        std::ostringstream os;
        os << variant_name(config.variant) << ','
           << (config.s_bits ? config.s_bits : 8) << ',' << slice_len << ','
           << config.lambda << ','
           << (config.variant == Variant::WRAP
                   ? (config.delta ? config.delta : 1)
                   : 0)
           << ',' << config.threads << ',' << n << ',';
        if (error.empty()) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.4f,%.1f,%.1f,%.6f,%zu,",
                          bits_per_key, build_ns_per_key, query_ns_per_query,
                          bumped_frac, layers);
            os << buf;
        } else {
            std::string clean = error;
            for (char& c : clean)
                if (c == ',' || c == '\n') c = ';';
            os << ",,,,," << clean;
        }
        return os.str();
    }
};

double measure_queries(const Mphf& f, const std::vector<std::string_view>& keys,
                       uint64_t total_queries) {
    std::mt19937_64 rng(12345);
    std::vector<uint32_t> order(std::min<uint64_t>(keys.size(), 1 << 20));
    for (auto& i : order) i = static_cast<uint32_t>(rng() % keys.size());
    uint64_t sink = 0;
    uint64_t done = 0;
    double t0 = now_seconds();
    while (done < total_queries) {
        for (uint32_t i : order) sink += f(keys[i]);
        done += order.size();
    }
    double dt = now_seconds() - t0;
    // Keep the accumulated value alive so the loop is not optimized away.
    if (sink == 0x12345678) std::fprintf(stderr, "\n");
    return dt * 1e9 / static_cast<double>(done);
}

/// Build with timing: `runs` timed builds, median build time reported.
BenchRecord run_benchmark(const std::vector<std::string_view>& keys,
                          BuildConfig cfg, int runs, uint64_t query_count) {
    BenchRecord rec;
    rec.n = keys.size();
    rec.config = cfg;
    try {
        if (cfg.lambda == 0.0)
            cfg.lambda = default_lambda(
                cfg.variant, cfg.s_bits ? cfg.s_bits : 8,
                cfg.delta ? cfg.delta : 1);
        rec.config = cfg;
        rec.slice_len = resolve_params(keys.size(), cfg).slice_len;

        std::vector<double> times;
        BuildStats stats;
        Mphf f;
        for (int r = 0; r < runs; ++r) {
            stats = BuildStats{};
            double t0 = now_seconds();
            f = Mphf::build(keys, cfg, &stats);
            times.push_back(now_seconds() - t0);
        }
        std::sort(times.begin(), times.end());
        rec.build_ns_per_key =
            times[times.size() / 2] * 1e9 / static_cast<double>(keys.size());
        rec.bits_per_key = static_cast<double>(f.serialize().size()) * 8.0 /
                           static_cast<double>(keys.size());
        rec.bumped_frac = static_cast<double>(stats.bumped_first_layer) /
                          static_cast<double>(keys.size());
        rec.layers = f.layer_count();
        if (query_count > 0)
            rec.query_ns_per_query = measure_queries(f, keys, query_count);
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

bool verify(const Mphf& f, const std::vector<std::string_view>& keys) {
    std::vector<uint64_t> seen((f.range() + 63) / 64, 0);
    for (auto k : keys) {
        uint64_t v = f(k);
        if (v >= f.range()) return false;
        uint64_t& w = seen[v >> 6];
        uint64_t bit = uint64_t{1} << (v & 63);
        if (w & bit) return false;
        w |= bit;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Shared flag plumbing.

struct ConfigFlags {
    std::string variant = "mul";
    BuildConfig cfg;

    void attach(CLI::App* app) {
        app->add_option("--variant", variant, "Placement variant")
            ->check(CLI::IsMember({"mul", "add", "wrap"}));
        app->add_option("--s-bits", cfg.s_bits, "Seed size in bits (4..12)");
        app->add_option("--lambda", cfg.lambda, "Expected bucket size");
        app->add_option("--slice-len", cfg.slice_len,
                        "Slice length L (power of two)");
        app->add_option("--delta", cfg.delta, "Wrap stride (1..3)");
        app->add_option("--threads", cfg.threads, "Construction threads");
        app->add_flag("--minimal,!--non-minimal", cfg.minimal,
                      "Minimal (range n) or widened range");
        app->add_option("--m-percent", cfg.m_percent,
                        "Output range as percent of n (non-minimal)");
        app->add_option("--window", cfg.window, "Window size W");
        app->add_option_function<std::string>(
               "--remap",
               [this](const std::string& r) {
                   cfg.remap = r == "compact" ? RemapEncoding::COMPACT
                                              : RemapEncoding::ELIAS_FANO;
               },
               "Remap encoding: ef or compact")
            ->check(CLI::IsMember({"ef", "compact"}));
    }

    BuildConfig resolve() {
        cfg.variant = parse_variant(variant);
        return cfg;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PHast minimal perfect hashing tool"};
    app.require_subcommand(1);

    // ---- build ----------------------------------------------------------
    auto* build = app.add_subcommand("build", "Build a structure from keys");
    std::string build_in, build_out;
    std::string build_format = "text";
    bool do_verify = true;
    ConfigFlags build_cfg;
    build->add_option("input", build_in, "Key file")->required();
    build->add_option("-o,--output", build_out, "Output structure file");
    build->add_option("--format", build_format, "Key file format")
        ->check(CLI::IsMember({"text", "binary"}));
    build->add_flag("--verify,!--no-verify", do_verify,
                    "Check injectivity after building");
    build_cfg.attach(build);

    // ---- query ----------------------------------------------------------
    auto* query = app.add_subcommand("query", "Evaluate keys against a structure");
    std::string query_struct, query_keys;
    std::string query_format = "text";
    query->add_option("structure", query_struct, "Structure file")->required();
    query->add_option("keys", query_keys, "Key file")->required();
    query->add_option("--format", query_format, "Key file format")
        ->check(CLI::IsMember({"text", "binary"}));

    // ---- bench ----------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Run a parameter sweep, emit CSV");
    uint64_t bench_n = 1000000;
    uint64_t bench_seed = 1;
    std::string bench_kind = "random-strings-10-50";
    std::vector<std::string> sweep;
    std::vector<unsigned> thread_list;
    int bench_runs = 3;
    uint64_t bench_queries = 10000000;
    bench->add_option("-n,--keys", bench_n, "Corpus size");
    bench->add_option("--rng-seed", bench_seed, "Corpus seed");
    bench->add_option("--kind", bench_kind, "Corpus kind")
        ->check(CLI::IsMember({"random-strings-10-50", "u64-integers"}));
    bench->add_option("--sweep", sweep,
                      "Sweep tuple variant,S,lambda[,L[,delta]] (repeatable)");
    bench->add_option("--threads", thread_list,
                      "Thread counts to run each tuple with (repeatable)");
    bench->add_option("--runs", bench_runs, "Timed builds per row (median)")
        ->check(CLI::Range(1, 99));
    bench->add_option("--queries", bench_queries, "Lookups for query timing");

    // ---- keygen ---------------------------------------------------------
    auto* keygen = app.add_subcommand("keygen", "Generate a reproducible corpus");
    uint64_t gen_n = 0;
    uint64_t gen_seed = 1;
    std::string gen_kind = "random-strings-10-50";
    std::string gen_out;
    std::string gen_format = "text";
    keygen->add_option("-n,--keys", gen_n, "Number of keys")->required();
    keygen->add_option("--rng-seed", gen_seed, "Generator seed");
    keygen->add_option("--kind", gen_kind, "Corpus kind")
        ->check(CLI::IsMember({"random-strings-10-50", "u64-integers"}));
    keygen->add_option("-o,--output", gen_out, "Output file (default stdout)");
    keygen->add_option("--format", gen_format, "Output format")
        ->check(CLI::IsMember({"text", "binary"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            KeyFile kf = load_keys(build_in, build_format == "binary");
            if (kf.views.empty()) {
                std::cerr << "error: key file is empty\n";
                return 1;
            }
            BuildConfig cfg = build_cfg.resolve();
            if (cfg.lambda == 0.0)
                cfg.lambda = default_lambda(cfg.variant,
                                            cfg.s_bits ? cfg.s_bits : 8,
                                            cfg.delta ? cfg.delta : 1);
            BenchRecord rec;
            rec.n = kf.views.size();
            rec.config = cfg;
            rec.slice_len = resolve_params(kf.views.size(), cfg).slice_len;
            BuildStats stats;
            double t0 = now_seconds();
            Mphf f = Mphf::build(kf.views, cfg, &stats);
            rec.build_ns_per_key = (now_seconds() - t0) * 1e9 /
                                   static_cast<double>(kf.views.size());
            rec.bits_per_key = static_cast<double>(f.serialize().size()) * 8.0 /
                               static_cast<double>(kf.views.size());
            rec.bumped_frac = static_cast<double>(stats.bumped_first_layer) /
                              static_cast<double>(kf.views.size());
            rec.layers = f.layer_count();
            if (do_verify && !verify(f, kf.views)) {
                std::cerr << "error: verification failed\n";
                return 1;
            }
            if (!build_out.empty()) {
                std::vector<uint8_t> bytes = f.serialize();
                std::ofstream out(build_out, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot write " << build_out << '\n';
                    return 1;
                }
                out.write(reinterpret_cast<const char*>(bytes.data()),
                          static_cast<std::streamsize>(bytes.size()));
            }
            std::cout << kCsvHeader << '\n' << rec.csv() << '\n';
            return 0;
        }

        if (*query) {
            std::vector<uint8_t> bytes = read_file(query_struct);
            Mphf f = Mphf::deserialize(bytes.data(), bytes.size());
            KeyFile kf = load_keys(query_keys, query_format == "binary");
            for (auto k : kf.views) std::cout << f(k) << '\n';
            return 0;
        }

        if (*bench) {
            KeySet corpus = bench_kind == "u64-integers"
                                ? random_u64_keys(bench_n, bench_seed)
                                : random_string_keys(bench_n, bench_seed);
            if (thread_list.empty()) thread_list.push_back(1);
            std::cout << kCsvHeader << '\n';
            for (const std::string& tuple : sweep) {
                std::vector<std::string> parts;
                std::stringstream ss(tuple);
                std::string item;
                while (std::getline(ss, item, ',')) parts.push_back(item);
                if (parts.size() < 3 || parts.size() > 5) {
                    std::cerr << "error: bad sweep tuple: " << tuple << '\n';
                    return 1;
                }
                BuildConfig cfg;
                cfg.variant = parse_variant(parts[0]);
                cfg.s_bits = std::stoi(parts[1]);
                cfg.lambda = std::stod(parts[2]);
                if (parts.size() > 3 && !parts[3].empty())
                    cfg.slice_len = std::stoull(parts[3]);
                if (parts.size() > 4) cfg.delta = std::stoi(parts[4]);
                for (unsigned t : thread_list) {
                    cfg.threads = t;
                    BenchRecord rec = run_benchmark(corpus.views, cfg,
                                                    bench_runs, bench_queries);
                    std::cout << rec.csv() << '\n';
                    std::cout.flush();
                }
            }
            return 0;
        }

        if (*keygen) {
            KeySet ks = gen_kind == "u64-integers"
                            ? random_u64_keys(gen_n, gen_seed)
                            : random_string_keys(gen_n, gen_seed);
            if (gen_out.empty()) {
                write_keys(std::cout, ks.views, gen_format == "binary");
            } else {
                std::ofstream out(gen_out, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot write " << gen_out << '\n';
                    return 1;
                }
                write_keys(out, ks.views, gen_format == "binary");
            }
            return 0;
        }
    } catch (const duplicate_keys& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
