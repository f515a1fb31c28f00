#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "espart/core.hpp"
#include "espart/generators.hpp"
#include "espart/partition.hpp"

namespace espart {

// Least-squares slope of log(y) against log(x). Points with non-positive
// coordinates are skipped.
inline double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t k = 0;
    for (auto [x, y] : xy) {
        if (x <= 0 || y <= 0) continue;
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++k;
    }
    if (k < 2) return 0.0;
    double denom = k * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (k * sxy - sx * sy) / denom;
}

struct BenchRow {
    std::string algo;
    std::string generator;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t parts_count = 0;
    double parts_over_sqrt_n = 0.0;
    std::uint64_t ops = 0;
    double wall_ms = 0.0;
    bool valid = false;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    bool all_valid() const {
        for (const BenchRow& r : rows)
            if (!r.valid) return false;
        return true;
    }
};

struct BenchOptions {
    std::vector<std::string> algos;          // greedy | byf | dynamic
    std::vector<GeneratorSpec> generators;   // n field ignored, taken from ns
    std::vector<std::size_t> ns;
    std::vector<std::uint64_t> seeds;
    DynConfig dyn;
};

inline std::pair<Partition, DecomposeStats> run_decomposer(
    const std::string& algo, const Sequence& seq, const DynConfig& dyn) {
    if (algo == "greedy") return decompose_greedy_exact(seq);
    if (algo == "byf") return decompose_byf(seq);
    if (algo == "dynamic") return decompose_dynamic(seq, dyn);
    throw BadSpecError("unknown algorithm '" + algo + "'");
}

// Full matrix, rows sorted by (algo, generator, n, seed). Every row's
// partition is validated before emission; a failed run is recorded with
// valid=false rather than aborting the matrix.
inline BenchReport run_bench(const BenchOptions& opt) {
    BenchReport rep;
    std::vector<std::string> algos = opt.algos;
    std::sort(algos.begin(), algos.end());
    for (const std::string& algo : algos) {
        std::vector<GeneratorSpec> gens = opt.generators;
        std::sort(gens.begin(), gens.end(),
                  [](const GeneratorSpec& a, const GeneratorSpec& b) {
                      return a.name() < b.name();
                  });
        for (const GeneratorSpec& gen : gens) {
            std::vector<std::size_t> ns = opt.ns;
            std::sort(ns.begin(), ns.end());
            for (std::size_t n : ns) {
                std::vector<std::uint64_t> seeds = opt.seeds;
                std::sort(seeds.begin(), seeds.end());
                for (std::uint64_t seed : seeds) {
                    BenchRow row;
                    row.algo = algo;
                    GeneratorSpec g = gen;
                    g.n = n;
                    g.seed = seed;
                    row.generator = g.name();
                    row.n = n;
                    row.seed = seed;
                    try {
                        Sequence seq = generate(g);
                        auto t0 = std::chrono::steady_clock::now();
                        auto [part, stats] = run_decomposer(algo, seq, opt.dyn);
                        auto t1 = std::chrono::steady_clock::now();
                        row.parts_count = stats.parts_count;
                        row.ops = stats.ops;
                        row.wall_ms =
                            std::chrono::duration<double, std::milli>(t1 - t0)
                                .count();
                        row.parts_over_sqrt_n =
                            n == 0 ? 0.0
                                   : static_cast<double>(stats.parts_count) /
                                         static_cast<double>(ceil_sqrt(n));
                        row.valid = validate_partition(seq, part).ok;
                    } catch (const Error&) {
                        row.valid = false;
                    }
                    rep.rows.push_back(std::move(row));
                }
            }
        }
    }
    return rep;
}

inline const char* bench_csv_header() {
    return "algo,generator,n,seed,parts_count,parts_over_sqrt_n,ops,wall_ms,valid";
}

// zero_wall: write wall_ms as 0 to make output byte-comparable across runs.
inline void write_bench_csv(std::ostream& out, const BenchReport& rep,
                            bool zero_wall = false) {
    out << bench_csv_header() << '\n';
    char buf[64];
    for (const BenchRow& r : rep.rows) {
        std::snprintf(buf, sizeof(buf), "%.6f", r.parts_over_sqrt_n);
        out << r.algo << ',' << r.generator << ',' << r.n << ',' << r.seed
            << ',' << r.parts_count << ',' << buf << ',' << r.ops << ',';
        std::snprintf(buf, sizeof(buf), "%.3f", zero_wall ? 0.0 : r.wall_ms);
        out << buf << ',' << (r.valid ? "true" : "false") << '\n';
    }
}

}  // namespace espart
