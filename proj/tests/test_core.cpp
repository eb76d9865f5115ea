#include <random>

#include "doctest.h"
#include "micromacro/budget.hpp"
#include "micromacro/errors.hpp"
#include "micromacro/system.hpp"
#include "random_systems.hpp"

using namespace micromacro;

namespace {

// Z4 rotation with blocks {0}, {1,3}, {2} and the reflection r(i) = -i.
System z4_symmetric() {
    return validate_system({1, 2, 3, 0}, {0, 1, 2, 1}, std::vector<int>{0, 3, 2, 1});
}

}  // namespace

TEST_CASE("validation rejects malformed input") {
    CHECK_THROWS_AS(validate_system({0, 0}, {0, 0}), ValidationError);
    CHECK_THROWS_AS(validate_system({1, 0}, {0}), ValidationError);
    CHECK_THROWS_AS(validate_system({0, 1}, {0, 1}, std::vector<int>{1, 1}), ValidationError);
    // r alpha r must be the inverse of alpha.
    CHECK_THROWS_AS(validate_system({1, 2, 0}, {0, 0, 0}, std::vector<int>{0, 1, 2}),
                    ValidationError);
}

TEST_CASE("labels are compacted in first-occurrence order") {
    System s = validate_system({1, 2, 0}, {7, 3, 7});
    CHECK(s.k == 2);
    CHECK(s.macro == std::vector<int>{0, 1, 0});
    CHECK(s.block_size == std::vector<long>{2, 1});
}

TEST_CASE("entropy values on the Z4 example") {
    System s = z4_symmetric();
    CHECK(boltzmann_entropy(s, 0).is_zero());
    CHECK(boltzmann_entropy(s, 1) == LogValue::log_integer(2));
    auto cls = entropy_classes(s);
    CHECK(cls.d_ratio + cls.c_ratio + cls.i_ratio == 1);
    CHECK(cls.decreasing.size() == 2);
    CHECK(cls.increasing.size() == 2);
}

TEST_CASE("equilibrium report brackets the dominant entropy") {
    System s = validate_system({1, 2, 3, 4, 0}, {0, 1, 1, 1, 2});
    auto eq = equilibrium_report(s);
    CHECK(eq.ratio == frac(3, 5));
    CHECK(eq.unique_dominant);
    CHECK(eq.lower_bound <= eq.s_dominant);
    CHECK(eq.s_dominant <= eq.upper_bound);
}

TEST_CASE("coarse graining identity H(cq) = H(q) + S(q)") {
    std::mt19937_64 rng(411);
    for (int t = 0; t < 60; ++t) {
        System s = testing::random_system(rng, 10);
        auto q = testing::random_distribution(rng, s.k);
        CHECK(shannon_entropy_micro(coarse_grain(s, q)) ==
              shannon_entropy(q) + mean_boltzmann(s, q));
    }
}

TEST_CASE("H(p) + S(p) = ln n") {
    std::mt19937_64 rng(412);
    for (int t = 0; t < 40; ++t) {
        System s = testing::random_system(rng, 10);
        auto p = macro_measure(s);
        CHECK(shannon_entropy(p) + mean_boltzmann(s, p) == LogValue::log_integer(s.n));
    }
}

TEST_CASE("arrow of time on the staircase") {
    // Reaching-time labels of the 8-cycle: from state 2 the block sizes run
    // 1 < 3 < 4 and then drop.
    System s = validate_system({1, 2, 3, 4, 5, 6, 7, 0},
                               {0, 0, 2, 1, 0, 1, 0, 1});
    CHECK(arrow_of_time(s, 2) == 2);
    CHECK(arrow_of_time(s, 0) == 0);
    System id2 = validate_system({0, 1}, {0, 1});
    CHECK(arrow_of_time(id2, 0) == 0);
}

TEST_CASE("reversion report on Z4") {
    auto rr = reversion_report(z4_symmetric());
    CHECK(rr.invariant);
    CHECK(rr.equivariant);
    CHECK(rr.entropy_preserving);
    CHECK(rr.descended.has_value());
}

TEST_CASE("monotone runs are symmetric under entropy preserving reversion") {
    std::mt19937_64 rng(413);
    for (int t = 0; t < 40; ++t) {
        System s = testing::random_reversible_system(rng, 3, 8);
        for (int n = 1; n <= 4; ++n) {
            auto [d, i] = monotone_runs(s, n);
            CHECK(d == i);
        }
    }
}

TEST_CASE("budget guard throws") {
    auto saved = enumeration_budget();
    set_enumeration_budget(10);
    CHECK_THROWS_AS(charge_budget(BigInt(11), "test"), BudgetError);
    CHECK(charge_budget(BigInt(10), "test") == 10);
    set_enumeration_budget(saved);
}
