#include <random>

#include "doctest.h"
#include "micromacro/errors.hpp"
#include "micromacro/repro.hpp"
#include "random_systems.hpp"

using namespace micromacro;

TEST_CASE("reproducible graph of a merge chain into a sink") {
    // {0} -> {1,2} -> {3,4,5}; the largest block splits and is a sink.
    System s = validate_system({1, 3, 4, 5, 0, 2}, {0, 1, 1, 2, 2, 2});
    auto g = repro_graph(s);
    CHECK(g.next == std::vector<int>{1, 2, -1});
    CHECK(g.cycles.empty());
    REQUIRE(g.trees.size() == 1);
    CHECK(g.trees[0].root == 2);
    CHECK(g.trees[0].members == std::vector<int>{0, 1, 2});
}

TEST_CASE("pure rotation gives a label cycle") {
    System s = validate_system({1, 2, 3, 0}, {0, 1, 0, 1});
    auto g = repro_graph(s);
    REQUIRE(g.cycles.size() == 1);
    CHECK(g.cycles[0].size() == 2);
    CHECK(g.trees.empty());
}

TEST_CASE("sinks collect the trees") {
    System s = validate_system({1, 2, 3, 0}, {0, 1, 2, 1});
    auto g = repro_graph(s);
    CHECK(g.next[1] == -1);  // {1,3} splits
    CHECK(g.cycles.empty());
    REQUIRE(g.trees.size() == 1);
    CHECK(g.trees[0].root == 1);
    CHECK(g.trees[0].members == std::vector<int>{0, 1, 2});
}

TEST_CASE("inverse structure verifies on random systems") {
    std::mt19937_64 rng(441);
    for (int t = 0; t < 80; ++t)
        CHECK_NOTHROW(inverse_repro_check(testing::random_system(rng, 10)));
}

TEST_CASE("epsilon reproducibility") {
    CHECK_THROWS_AS(epsilon_repro(validate_system({0}, {0}), frac(1, 2)), ValidationError);
    // Near-deterministic system: 7 of 8 microstates of the big block rotate
    // into itself, one leaks into the singleton.
    std::vector<int> alpha{1, 2, 3, 4, 5, 6, 7, 8, 0};
    std::vector<int> macro{0, 0, 0, 0, 0, 0, 0, 0, 1};
    System s = validate_system(alpha, macro);
    auto rep = epsilon_repro(s, frac(1, 4));
    CHECK(rep.sink_free);
    CHECK(rep.gap_condition);
    REQUIRE(rep.decreasing_ratio.has_value());
    CHECK(*rep.decreasing_ratio <= frac(1, 4));
}

TEST_CASE("equivariant pair criterion") {
    // Z4 rotation, blocks {0,2} and {1,3}, r(i) = -i is equivariant here.
    System s = validate_system({1, 2, 3, 0}, {0, 1, 0, 1}, std::vector<int>{0, 3, 2, 1});
    auto rep = p10_check(s);
    CHECK(rep.matched_pairs == 2);
    std::mt19937_64 rng(442);
    for (int t = 0; t < 40; ++t)
        CHECK_NOTHROW(p10_check(testing::random_reversible_system(rng, 3, 7)));
}
