#include <catch2/catch_amalgamated.hpp>

#include "espart/generators.hpp"
#include "espart/lis.hpp"
#include "testutil.hpp"

using namespace espart;

TEST_CASE("sorted and reversed generators") {
    CHECK(generate({GeneratorKind::Sorted, 5, 0, 0}) == Sequence{1, 2, 3, 4, 5});
    CHECK(generate({GeneratorKind::Reversed, 3, 0, 0}) == Sequence{3, 2, 1});
    CHECK(generate({GeneratorKind::Sorted, 0, 0, 0}).empty());
}

TEST_CASE("generators emit permutations deterministically") {
    for (GeneratorKind kind :
         {GeneratorKind::UniformRandom, GeneratorKind::PlantedLis,
          GeneratorKind::BlockDecreasing, GeneratorKind::Sawtooth}) {
        GeneratorSpec spec{kind, 64, 9, 8};
        Sequence a = generate(spec);
        Sequence b = generate(spec);
        CHECK(a == b);
        CHECK(is_permutation_of_1n(a));
        spec.seed = 10;
        if (kind == GeneratorKind::UniformRandom ||
            kind == GeneratorKind::BlockDecreasing)
            CHECK_FALSE(generate(spec) == a);
    }
}

TEST_CASE("planted_lis plants the exact LIS") {
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{
             {64, 8}, {64, 1}, {64, 64}, {4096, 64}, {256, 16}}) {
        Sequence seq = generate({GeneratorKind::PlantedLis, n, 3, k});
        REQUIRE(is_permutation_of_1n(seq));
        CHECK(lis_patience(seq).length == k);
    }
}

TEST_CASE("block_decreasing guarantees a long decreasing run") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Sequence seq = generate({GeneratorKind::BlockDecreasing, 128, seed, 4});
        REQUIRE(is_permutation_of_1n(seq));
        CHECK(lds(seq).length >= 128 / 4);
    }
}

TEST_CASE("sawtooth structure") {
    Sequence seq = generate({GeneratorKind::Sawtooth, 64, 0, 16});
    REQUIRE(is_permutation_of_1n(seq));
    CHECK(lis_patience(seq).length == 16);
    CHECK(lds(seq).length == 4);
}

TEST_CASE("generator parameter validation") {
    CHECK_THROWS_AS(generate({GeneratorKind::PlantedLis, 10, 0, 3}), BadSpecError);
    CHECK_THROWS_AS(generate({GeneratorKind::Sawtooth, 10, 0, 0}), BadSpecError);
}

TEST_CASE("generator spec parsing") {
    GeneratorSpec a = parse_generator("sorted:8");
    CHECK(a.kind == GeneratorKind::Sorted);
    CHECK(a.n == 8);

    GeneratorSpec b = parse_generator("uniform_random:4096:seed=7");
    CHECK(b.n == 4096);
    CHECK(b.seed == 7);

    GeneratorSpec c = parse_generator("planted_lis:64:k=8:seed=2");
    CHECK(c.param == 8);
    CHECK(c.seed == 2);

    GeneratorSpec d = parse_generator("sawtooth:p=4", false);
    CHECK(d.param == 4);

    CHECK_THROWS_AS(parse_generator("nope:8"), BadSpecError);
    CHECK_THROWS_AS(parse_generator("sorted"), BadSpecError);
    CHECK_THROWS_AS(parse_generator("planted_lis:64"), BadSpecError);
    CHECK_THROWS_AS(parse_generator("sorted:abc"), BadSpecError);
}
