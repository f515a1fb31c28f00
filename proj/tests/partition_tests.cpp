#include <catch2/catch_amalgamated.hpp>

#include "espart/bench.hpp"
#include "espart/partition.hpp"
#include "testutil.hpp"

using namespace espart;

namespace {

Sequence iota_seq(std::size_t n, bool reversed = false) {
    Sequence s;
    for (std::size_t i = 1; i <= n; ++i)
        s.values.push_back(static_cast<Value>(reversed ? n - i + 1 : i));
    return s;
}

void check_partition(const Sequence& seq, const Partition& p) {
    ValidationReport rep = validate_partition(seq, p);
    if (!rep.ok) {
        for (const auto& v : rep.violations) UNSCOPED_INFO(v.what);
    }
    REQUIRE(rep.ok);
}

}  // namespace

TEST_CASE("ceil_sqrt") {
    CHECK(ceil_sqrt(0) == 0);
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(2) == 2);
    CHECK(ceil_sqrt(4) == 2);
    CHECK(ceil_sqrt(5) == 3);
    CHECK(ceil_sqrt(4096) == 64);
    CHECK(ceil_sqrt(4097) == 65);
}

TEST_CASE("partition_count_bound_check") {
    Partition p;
    p.n = 100;
    p.parts.resize(10);
    CHECK(partition_count_bound_check(p, 1.0));
    p.parts.resize(21);
    CHECK_FALSE(partition_count_bound_check(p, 2.0));
}

TEST_CASE("greedy on monotone inputs yields one part") {
    auto [p1, s1] = decompose_greedy_exact(iota_seq(64));
    CHECK(p1.parts.size() == 1);
    CHECK(p1.parts[0].direction == Direction::Increasing);
    check_partition(iota_seq(64), p1);

    auto [p2, s2] = decompose_byf(iota_seq(64, true));
    CHECK(p2.parts.size() == 1);
    CHECK(p2.parts[0].direction == Direction::Decreasing);

    auto [p3, s3] = decompose_greedy_exact(Sequence{});
    CHECK(p3.parts.empty());
    CHECK(s3.rounds == 0);
}

TEST_CASE("greedy golden: the running example splits 4,3,2") {
    Sequence seq{7, 2, 4, 1, 9, 6, 3, 5, 8};
    auto [p, stats] = decompose_greedy_exact(seq);
    check_partition(seq, p);
    REQUIRE(stats.per_round_sizes == std::vector<std::size_t>{4, 3, 2});
    CHECK(stats.parts_count == 3);
    CHECK(stats.rounds == 3);
}

TEST_CASE("duplicate input is rejected") {
    Sequence seq{1, 2, 1};
    CHECK_THROWS_AS(decompose_greedy_exact(seq), DuplicateValueError);
    CHECK_THROWS_AS(decompose_byf(seq), DuplicateValueError);
    CHECK_THROWS_AS(decompose_dynamic(seq, DynConfig{}), DuplicateValueError);
}

TEST_CASE("exact decomposers: validity, count bound, progress") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Rng rng(seed * 313);
        std::size_t n = rng.below(1025);
        Sequence seq = testutil::random_permutation(n, seed);
        for (bool byf : {false, true}) {
            auto [p, stats] =
                byf ? decompose_byf(seq) : decompose_greedy_exact(seq);
            check_partition(seq, p);
            CHECK(partition_count_bound_check(p, 3.0));
            CHECK(stats.parts_count == stats.rounds);
            std::size_t total = 0;
            std::size_t remaining = n;
            for (std::size_t sz : stats.per_round_sizes) {
                // exact rounds remove at least ceil(sqrt(remaining))
                CHECK(sz >= ceil_sqrt(remaining));
                remaining -= sz;
                total += sz;
            }
            CHECK(total == n);
        }
    }
}

TEST_CASE("dynamic decomposer: validity and count ceiling") {
    DynConfig config;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Rng rng(seed * 41);
        std::size_t n = 1 + rng.below(800);
        Sequence seq = testutil::random_permutation(n, seed + 1000);
        auto [p, stats] = decompose_dynamic(seq, config);
        check_partition(seq, p);
        CHECK(stats.defects == 0);
        CHECK(partition_count_bound_check(p, 12.0));
        // 2n mutations per instance plus queries/extracts
        CHECK(stats.ops <= 4 * n + 3 * (stats.rounds + 1));
    }
}

TEST_CASE("dynamic rounds keep making sqrt-scale progress") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Sequence seq = testutil::random_permutation(600, seed * 59);
        auto [p, stats] = decompose_dynamic(seq, DynConfig{});
        check_partition(seq, p);
        std::size_t remaining = 600;
        for (std::size_t sz : stats.per_round_sizes) {
            // the estimate is at least exact/8 (quality gate), and the exact
            // side is at least ceil(sqrt(remaining))
            CHECK(sz >= std::max<std::size_t>(1, ceil_sqrt(remaining) / 8));
            remaining -= sz;
        }
    }
}

TEST_CASE("dynamic decomposer trivia") {
    auto [p1, s1] = decompose_dynamic(Sequence{42}, DynConfig{});
    CHECK(p1.parts.size() == 1);
    check_partition(Sequence{42}, p1);

    auto [p2, s2] = decompose_dynamic(Sequence{}, DynConfig{});
    CHECK(p2.parts.empty());

    Sequence inc = iota_seq(32);
    auto [p3, s3] = decompose_dynamic(inc, DynConfig{});
    check_partition(inc, p3);
    CHECK(partition_count_bound_check(p3, 12.0));
}

TEST_CASE("parts_count scaling exponent stays near sqrt") {
    for (const char* algo : {"greedy", "byf"}) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t n = 64; n <= 8192; n *= 4) {
            double mean = 0;
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                Sequence seq = testutil::random_permutation(n, seed * 7 + n);
                auto [p, stats] = run_decomposer(algo, seq, DynConfig{});
                mean += static_cast<double>(stats.parts_count);
            }
            pts.push_back({static_cast<double>(n), mean / 3});
        }
        double slope = loglog_slope(pts);
        INFO(algo << " parts slope " << slope);
        CHECK(slope <= 0.55);
    }
}
