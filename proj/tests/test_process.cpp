#include <algorithm>
#include <random>

#include "doctest.h"
#include "micromacro/errors.hpp"
#include "micromacro/process.hpp"
#include "random_systems.hpp"

using namespace micromacro;

namespace {

System z4_symmetric() {
    return validate_system({1, 2, 3, 0}, {0, 1, 2, 1}, std::vector<int>{0, 3, 2, 1});
}

}  // namespace

TEST_CASE("path counts and cylinder probabilities") {
    System s = z4_symmetric();
    CHECK(path_count(s, {0, 1, 2}) == 1);
    CHECK(path_count(s, {1, 2}) == 1);
    CHECK(path_count(s, {1, 0}) == 1);
    CHECK(path_count(s, {0, 2}) == 0);
    auto p = macro_measure(s);
    CHECK(cylinder_prob(s, p, {1, 2}) == frac(1, 4));
    CHECK(cylinder_prob(s, p, {0}) == frac(1, 4));
}

TEST_CASE("conditioning exposes the hidden microstate") {
    System s = z4_symmetric();
    CHECK(conditional(s, {0, 1}, 2) == 1);
    CHECK(conditional(s, {1}, 2) == frac(1, 2));
    CHECK_THROWS_WITH_AS(conditional(s, {0, 2}, 1), doctest::Contains("ConditioningOnNull"),
                         ValidationError);
}

TEST_CASE("markovianity equals equivariance, with witness") {
    System s = z4_symmetric();
    auto rep = markovianity_check(s, 3);
    CHECK_FALSE(rep.markov);
    CHECK_FALSE(rep.equivariant);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->conditioned != rep.witness->one_step);

    System rotor = validate_system({1, 2, 3, 0}, {0, 1, 0, 1});
    auto rep2 = markovianity_check(rotor, 3);
    CHECK(rep2.markov);
    CHECK_FALSE(rep2.witness.has_value());
}

TEST_CASE("markovianity matches equivariance exhaustively up to n = 4") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        do {
            std::vector<int> rgs(n, 0);
            while (true) {
                System s = validate_system(perm, rgs);
                auto rep = markovianity_check(s, 2);
                CHECK(rep.markov == rep.equivariant);
                CHECK(rep.witness.has_value() == !rep.markov);
                int pos = n - 1;
                for (; pos > 0; --pos) {
                    int cap = *std::max_element(rgs.begin(), rgs.begin() + pos) + 1;
                    if (rgs[pos] < cap) break;
                }
                if (pos == 0) break;
                ++rgs[pos];
                std::fill(rgs.begin() + pos + 1, rgs.end(), 0);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("the stationary start is shift invariant") {
    std::mt19937_64 rng(431);
    for (int t = 0; t < 40; ++t) {
        System s = testing::random_system(rng, 8);
        auto rep = stationarity_check(s, macro_measure(s), 3);
        CHECK(rep.stationary);
    }
}

TEST_CASE("a non-stationary start is detected") {
    System s = validate_system({1, 2, 0}, {0, 0, 1});
    auto rep = stationarity_check(s, point_mass(s, 1), 3);
    CHECK_FALSE(rep.stationary);
    CHECK(rep.witness_tuple.has_value());
}

TEST_CASE("reversal identity on reversible systems") {
    std::mt19937_64 rng(432);
    for (int t = 0; t < 40; ++t) {
        System s = testing::random_reversible_system(rng, 3, 7);
        auto rep = reverse_process_check(s, 3);
        CHECK(rep.reversible);  // the generated reversions are invariant
    }
}

TEST_CASE("marginals agree with the micro pushforward") {
    std::mt19937_64 rng(433);
    for (int t = 0; t < 30; ++t) {
        System s = testing::random_system(rng, 9);
        auto q = testing::random_distribution(rng, s.k);
        CHECK_NOTHROW(marginal(s, q, 3));
    }
}
