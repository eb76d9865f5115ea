#include "doctest.h"
#include "micromacro/errors.hpp"
#include "micromacro/ldev.hpp"

using namespace micromacro;

namespace {

System z4_symmetric() {
    return validate_system({1, 2, 3, 0}, {0, 1, 2, 1}, std::vector<int>{0, 3, 2, 1});
}

const LogValue eps = LogValue::constant(frac(1, 10));

}  // namespace

TEST_CASE("one-fold system reduces to the base measure") {
    auto rep = exact_sanov_identity(z4_symmetric(), 1, eps, 3);
    Rational total = 0;
    for (const auto& m : rep.micro_mass) total += m;
    CHECK(total == 1);
    // Every singleton empirical distribution is a point mass, far from p.
    CHECK(rep.micro_mass[2] == 1);
}

TEST_CASE("exact level identity for small products") {
    for (int N = 2; N <= 4; ++N) CHECK_NOTHROW(exact_sanov_identity(z4_symmetric(), N, eps, 3));
    System pair = validate_system({1, 0}, {0, 1});
    for (int N = 1; N <= 5; ++N) CHECK_NOTHROW(exact_sanov_identity(pair, N, eps, 2));
}

TEST_CASE("single level collapses the rate to zero") {
    System s = validate_system({1, 2, 0}, {0, 0, 0});
    auto rep = rate_estimate(s, {1, 2, 3}, eps, 1);
    for (double r : rep.rate[0]) CHECK(r == 0.0);
    CHECK(rep.limit[0] == 0.0);
}

TEST_CASE("rate gaps are annotated with the level limit") {
    auto rep = rate_estimate(z4_symmetric(), {1, 2, 3}, eps, 3);
    REQUIRE(rep.rate.size() == 3);
    CHECK(rep.limit[1] == doctest::Approx(-0.1));
    for (size_t l = 0; l < rep.gap.size(); ++l)
        REQUIRE(rep.gap[l].size() == rep.horizons.size());
}

TEST_CASE("dominance trend on an entropy preserving base has no decrease") {
    System s = validate_system({1, 0, 3, 2}, {0, 0, 1, 1});
    auto rep = dominance_trend(s, {1, 2, 3}, eps, 2);
    for (const auto& frac : rep.decreasing_fraction) CHECK(frac == 0);
    for (const auto& ratio : rep.equilibrium_ratio) CHECK(ratio > 0);
}
