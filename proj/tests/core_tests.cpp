#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "espart/core.hpp"
#include "espart/io.hpp"
#include "testutil.hpp"

using namespace espart;

TEST_CASE("rank_normalize maps the running example to itself") {
    Sequence seq{7, 2, 4, 1, 9, 6, 3, 5, 8};
    CHECK(rank_normalize(seq) == seq);
}

TEST_CASE("rank_normalize basics") {
    CHECK(rank_normalize(Sequence{}) == Sequence{});
    CHECK(rank_normalize(Sequence{100, -5, 17}) == Sequence{3, 1, 2});
    CHECK(rank_normalize(Sequence{10}) == Sequence{1});
}

TEST_CASE("rank_normalize rejects duplicates with the offending pair") {
    Sequence seq{5, 9, 5};
    try {
        rank_normalize(seq);
        FAIL("expected DuplicateValueError");
    } catch (const DuplicateValueError& e) {
        CHECK(e.value == 5);
        CHECK(e.pos_a == 1);
        CHECK(e.pos_b == 3);
    }
}

TEST_CASE("rank_normalize is idempotent and order-isomorphic") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Sequence raw;
        Rng rng(seed * 77);
        std::size_t n = rng.below(64);
        for (std::size_t i = 0; i < n; ++i)
            raw.values.push_back(static_cast<Value>(rng.next() % 100000) -
                                 50000 + static_cast<Value>(i) * 100000);
        // shuffle to decouple position from value
        for (std::size_t i = n; i > 1; --i)
            std::swap(raw.values[i - 1], raw.values[rng.below(i)]);
        Sequence norm = rank_normalize(raw);
        REQUIRE(is_permutation_of_1n(norm));
        CHECK(rank_normalize(norm) == norm);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                CHECK((raw.values[i] < raw.values[j]) ==
                      (norm.values[i] < norm.values[j]));
    }
}

TEST_CASE("to_points point layouts") {
    CHECK(to_points(Sequence{}).points.empty());
    PointSet two = to_points(Sequence{2, 1});
    REQUIRE(two.size() == 2);
    CHECK(two.points[0] == Point{1, 2});
    CHECK(two.points[1] == Point{2, 1});

    PointSet fig = to_points(Sequence{7, 2, 4, 1, 9, 6, 3, 5, 8});
    REQUIRE(fig.size() == 9);
    CHECK(fig.points[0] == Point{1, 7});
    CHECK(fig.points[4] == Point{5, 9});
    CHECK(fig.points[8] == Point{9, 8});
}

TEST_CASE("to_points yields a permutation graph") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Sequence seq = testutil::random_permutation(50, seed);
        PointSet ps = to_points(seq);
        std::vector<int> row(51, 0), col(51, 0);
        for (const Point& p : ps.points) {
            ++col[p.x];
            ++row[p.y];
        }
        for (std::size_t i = 1; i <= 50; ++i) {
            CHECK(row[i] == 1);
            CHECK(col[i] == 1);
        }
    }
}

TEST_CASE("validate_partition accepts a full increasing cover") {
    Sequence seq{1, 2, 3};
    Partition p;
    p.n = 3;
    p.parts.push_back({Direction::Increasing, {1, 2, 3}});
    CHECK(validate_partition(seq, p).ok);
}

TEST_CASE("validate_partition flags an uncovered position") {
    Sequence seq{1, 2, 3};
    Partition p;
    p.n = 3;
    p.parts.push_back({Direction::Increasing, {1, 2}});
    ValidationReport rep = validate_partition(seq, p);
    REQUIRE_FALSE(rep.ok);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations[0].what.find("position 3 uncovered") != std::string::npos);
}

TEST_CASE("validate_partition flags a non-monotone part") {
    Sequence seq{3, 1, 2};
    Partition p;
    p.n = 3;
    p.parts.push_back({Direction::Increasing, {1, 3}});  // values 3,2
    p.parts.push_back({Direction::Increasing, {2}});
    ValidationReport rep = validate_partition(seq, p);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].what.find("not increasing") != std::string::npos);
}

TEST_CASE("validate_partition ok implies indices sum to n") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Sequence seq = testutil::random_permutation(30, seed);
        Partition p;
        p.n = 30;
        // one singleton part per position is always valid
        for (std::size_t i = 1; i <= 30; ++i)
            p.parts.push_back({Direction::Increasing, {i}});
        ValidationReport rep = validate_partition(seq, p);
        REQUIRE(rep.ok);
        std::size_t total = 0;
        for (const auto& part : p.parts) total += part.indices.size();
        CHECK(total == 30);
    }
}

TEST_CASE("sequence text round trip") {
    Sequence seq{5, -3, 0, 999999};
    std::stringstream ss;
    write_sequence(ss, seq);
    CHECK(read_sequence(ss) == seq);
}

TEST_CASE("sequence text rejects junk") {
    std::stringstream ss("1\ntwo\n3\n");
    CHECK_THROWS_AS(read_sequence(ss), IoError);
}

TEST_CASE("partition json round trip") {
    Partition p;
    p.n = 4;
    p.parts.push_back({Direction::Increasing, {1, 4}});
    p.parts.push_back({Direction::Decreasing, {2, 3}});
    nlohmann::json j = partition_to_json(p);
    CHECK(j["n"] == 4);
    CHECK(j["parts"][0]["direction"] == "inc");
    CHECK(j["parts"][1]["direction"] == "dec");
    Partition q = partition_from_json(j);
    CHECK(q.n == p.n);
    REQUIRE(q.parts.size() == 2);
    CHECK(q.parts[0].indices == p.parts[0].indices);
    CHECK(q.parts[1].direction == Direction::Decreasing);
}

TEST_CASE("table text format is top-row first") {
    // bottom->top rows [2,1,3,0],[0,1,0,2],[2,5,1,1],[3,0,0,1]
    std::string text =
        "4\n"
        "3 0 0 1\n"
        "2 5 1 1\n"
        "0 1 0 2\n"
        "2 1 3 0\n";
    std::stringstream ss(text);
    Table t = read_table(ss);
    CHECK(t.at(0, 0) == 2);
    CHECK(t.at(0, 2) == 3);
    CHECK(t.at(2, 1) == 5);
    CHECK(t.at(3, 0) == 3);
    std::stringstream out;
    write_table(out, t);
    CHECK(out.str() == text);
}
