#include <algorithm>
#include <random>

#include "doctest.h"
#include "micromacro/build.hpp"
#include "micromacro/errors.hpp"
#include "micromacro/system.hpp"

using namespace micromacro;

namespace {

System z4_symmetric() {
    return validate_system({1, 2, 3, 0}, {0, 1, 2, 1}, std::vector<int>{0, 3, 2, 1});
}

}  // namespace

TEST_CASE("disjoint union keeps both dynamics side by side") {
    System a = validate_system({1, 0}, {0, 0});
    System b = validate_system({1, 2, 0}, {0, 0, 1});
    System u = combine(CombineKind::DisjointUnion, a, b);
    CHECK(u.n == 5);
    CHECK(u.k == 3);
    CHECK(u.alpha == std::vector<int>{1, 0, 3, 4, 2});
    CHECK(u.block_size == std::vector<long>{2, 2, 1});
}

TEST_CASE("product runs both systems in lockstep") {
    System a = validate_system({1, 0}, {0, 1});
    System p = combine(CombineKind::Product, a, a);
    CHECK(p.n == 4);
    CHECK(p.k == 4);
    CHECK(order_of_alpha(p) == 2);
}

TEST_CASE("reunion merges label universes by name") {
    System a = validate_system({1, 0}, {0, 0}, std::nullopt, std::nullopt,
                               std::vector<std::string>{"low"});
    System b = validate_system({0, 1}, {0, 1}, std::nullopt, std::nullopt,
                               std::vector<std::string>{"low", "high"});
    System r = combine(CombineKind::Reunion, a, b);
    CHECK(r.k == 2);
    CHECK(r.block_size == std::vector<long>{3, 1});

    System nameless = validate_system({0, 1}, {0, 1});
    CHECK_THROWS_WITH_AS(combine(CombineKind::Reunion, a, nameless),
                         doctest::Contains("LabelUniverseMismatch"), ValidationError);
}

TEST_CASE("extensive joint adds the numeric labels") {
    System a = validate_system({1, 0}, {0, 1}, std::nullopt,
                               std::vector<Rational>{0, 1});
    System j = combine(CombineKind::ExtensiveJoint, a, a);
    CHECK(j.k == 3);  // sums 0, 1, 2
    REQUIRE(j.macro_values.has_value());
    std::vector<long> sizes(j.k);
    for (int l = 0; l < j.k; ++l)
        sizes[static_cast<long>((*j.macro_values)[l].get_num().get_si())] = j.block_size[l];
    CHECK(sizes == std::vector<long>{1, 2, 1});
    CHECK_THROWS_WITH_AS(combine(CombineKind::ExtensiveJoint, a, z4_symmetric()),
                         doctest::Contains("NotNumeric"), ValidationError);
}

TEST_CASE("coarsen composes the labeling") {
    System s = z4_symmetric();
    System c = coarsen(s, {0, 1, 0});
    CHECK(c.k == 2);
    CHECK(c.block_size == std::vector<long>{2, 2});
}

TEST_CASE("restriction is the first-return dynamics") {
    // 4-cycle restricted to {0, 2}: each return takes two steps.
    System s = validate_system({1, 2, 3, 0}, {0, 1, 0, 1});
    System r = restrict_to(s, {0, 2});
    CHECK(r.n == 2);
    CHECK(r.alpha == std::vector<int>{1, 0});
    CHECK_THROWS_AS(restrict_to(s, {}), ValidationError);
}

TEST_CASE("iterated labels refine by observed words") {
    System s = z4_symmetric();
    System it = iterate_labels(s, 2);
    // Words (0,1), (1,2), (2,1), (1,0) are all distinct.
    CHECK(it.k == 4);
    CHECK(iterate_labels(s, 1).k == s.k);
}

TEST_CASE("zones group labels by size") {
    System s = z4_symmetric();
    System z = zones(s);
    CHECK(z.k == 2);
    CHECK(z.block_size == std::vector<long>{2, 2});  // sizes 1 and 2, two states each
    REQUIRE(z.macro_values.has_value());
    std::vector<Rational> values = *z.macro_values;
    std::sort(values.begin(), values.end());
    CHECK(values == std::vector<Rational>{1, 2});
}

TEST_CASE("empirical system levels partition the tuples") {
    System base = validate_system({1, 0}, {0, 1});
    LogValue eps = LogValue::constant(frac(1, 10));
    System emp = empirical_system(base, 3, eps, 3);
    CHECK(emp.n == 8);
    long total = 0;
    for (long b : emp.block_size) total += b;
    CHECK(total == 8);
    REQUIRE(emp.macro_values.has_value());
}

TEST_CASE("group action system rejects a broken inverse pairing") {
    std::vector<std::vector<int>> action{{1, 0}};  // the swap is its own inverse
    LogValue eps = LogValue::constant(frac(1, 10));
    CHECK_NOTHROW(group_action_system(action, {0}, 2, true, eps, 2));
    std::vector<std::vector<int>> bad{{1, 0}, {0, 1}};
    CHECK_THROWS_WITH_AS(group_action_system(bad, {1, 0}, 2, true, eps, 2),
                         doctest::Contains("NotClosedUnderInverse"), ValidationError);
}

TEST_CASE("z2d system builds and keeps its levels") {
    LogValue eps = LogValue::constant(frac(1, 10));
    System s = z2d_system(1, 2, eps, 2);
    CHECK(s.n == 4);  // base 2 * 1 states, squared
    CHECK_NOTHROW(z2d_system(2, 1, eps, 3));
}

TEST_CASE("tableau system attains the prescribed decreasing count") {
    std::map<long, long> parts{{1, 1}, {2, 1}, {3, 4}, {4, 1}, {6, 1}};
    System s = max_decreasing_system(parts);
    CHECK(s.n == 25);
    CHECK(entropy_classes(s).decreasing.size() == 13);
    CHECK_THROWS_AS(max_decreasing_system({{0, 2}}), ValidationError);
}

TEST_CASE("remark system shape") {
    System s = remark_system(3);
    CHECK(s.n == 12);
    CHECK(s.k == 2);
    CHECK(order_of_alpha(s) == 12);
    REQUIRE(s.macro_names.has_value());
    CHECK((*s.macro_names)[0] == "bottom");
}
