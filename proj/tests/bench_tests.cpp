#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "espart/bench.hpp"

using namespace espart;

TEST_CASE("loglog slope fits a power law") {
    std::vector<std::pair<double, double>> pts;
    for (double n = 16; n <= 4096; n *= 2) pts.push_back({n, 3.0 * n * n});
    CHECK(loglog_slope(pts) == Catch::Approx(2.0).margin(1e-9));
    pts.clear();
    for (double n = 16; n <= 4096; n *= 2) pts.push_back({n, 5.0 * std::sqrt(n)});
    CHECK(loglog_slope(pts) == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("empty ns yields a header-only CSV") {
    BenchOptions opt;
    opt.algos = {"greedy"};
    opt.generators.push_back({GeneratorKind::Sorted, 0, 0, 0});
    opt.seeds = {1};
    BenchReport rep = run_bench(opt);
    CHECK(rep.rows.empty());
    std::stringstream ss;
    write_bench_csv(ss, rep);
    CHECK(ss.str() == std::string(bench_csv_header()) + "\n");
}

TEST_CASE("matrix cardinality and ordering") {
    BenchOptions opt;
    opt.algos = {"greedy", "byf", "dynamic"};
    opt.generators.push_back({GeneratorKind::UniformRandom, 0, 0, 0});
    opt.generators.push_back({GeneratorKind::Sorted, 0, 0, 0});
    opt.ns = {16, 64, 32, 8};
    opt.seeds = {5, 1, 3, 2, 4};
    BenchReport rep = run_bench(opt);
    CHECK(rep.rows.size() == 3 * 2 * 4 * 5);
    CHECK(rep.all_valid());
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        const BenchRow& a = rep.rows[i - 1];
        const BenchRow& b = rep.rows[i];
        auto ka = std::tie(a.algo, a.generator, a.n, a.seed);
        auto kb = std::tie(b.algo, b.generator, b.n, b.seed);
        CHECK(ka < kb);
    }
}

TEST_CASE("bench runs are byte-identical modulo wall time") {
    BenchOptions opt;
    opt.algos = {"greedy", "dynamic"};
    opt.generators.push_back({GeneratorKind::UniformRandom, 0, 0, 0});
    opt.ns = {64, 256};
    opt.seeds = {7, 8};
    std::stringstream a, b;
    write_bench_csv(a, run_bench(opt), /*zero_wall=*/true);
    write_bench_csv(b, run_bench(opt), /*zero_wall=*/true);
    CHECK(a.str() == b.str());
}

TEST_CASE("rows that cannot generate are recorded invalid") {
    BenchOptions opt;
    opt.algos = {"greedy"};
    opt.generators.push_back({GeneratorKind::PlantedLis, 0, 0, 7});  // 7 ∤ n
    opt.ns = {64};
    opt.seeds = {1};
    BenchReport rep = run_bench(opt);
    REQUIRE(rep.rows.size() == 1);
    CHECK_FALSE(rep.rows[0].valid);
    CHECK_FALSE(rep.all_valid());
}
