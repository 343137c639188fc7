#include <doctest.h>

#include "hglue/errors.hpp"
#include "hglue/invariants.hpp"

using namespace hglue;

namespace {
const Rational kHalf(1, 2);
}

TEST_CASE("model bundles have maximal Toledo degree")
{
    for (int g = 0; g <= 6; ++g)
        for (int s = 0; s <= 6; ++s) {
            if (2 * g - 2 + 2 * s <= 0)
                continue;
            const Rational expected(2 * g - 2 + s);
            CHECK(parabolic_degree(irreducible_model_bundle(g, s)) == expected);
            CHECK(parabolic_degree(diagonal_model_bundle(g, s)) == expected);
            CHECK(parabolic_degree(irreducible_model_bundle_explicit(g, s)) == expected);
            CHECK(parabolic_degree(diagonal_model_bundle_explicit(g, s)) == expected);
            CHECK(irreducible_model_bundle(g, s).rank == 2);
            if (2 * g - 2 + s > 0)
                CHECK(milnor_wood_check(expected, g, s).maximal);
        }
    CHECK_THROWS_AS(irreducible_model_bundle(0, 1), InvalidInput);
    CHECK_THROWS_AS(diagonal_model_bundle(1, 0), InvalidInput);
}

TEST_CASE("parabolic degree")
{
    SUBCASE("no weights")
    {
        for (int d = -3; d <= 3; ++d)
            CHECK(parabolic_degree(uniform_bundle(2, 0, 2, Rational(d), {})) == Rational(d));
    }
    SUBCASE("weights")
    {
        const auto b = uniform_bundle(1, 3, 2, Rational(1), {{Rational(1, 3), 1}, {Rational(2, 3), 1}});
        CHECK(parabolic_degree(b) == Rational(4));
        CHECK(parabolic_degree(uniform_bundle(1, 2, 1, Rational(0), {{kHalf, 1}})) == Rational(1));
    }
    SUBCASE("direct sums add")
    {
        const auto a = uniform_bundle(2, 2, 1, Rational(3), {{Rational(1, 4), 1}});
        const auto b = uniform_bundle(2, 2, 1, Rational(-1), {{Rational(1, 3), 1}});
        const auto sum = direct_sum(a, b);
        CHECK(sum.rank == 2);
        CHECK(parabolic_degree(sum) == parabolic_degree(a) + parabolic_degree(b));
        // equal weights merge into one entry of multiplicity 2
        const auto same = direct_sum(a, a);
        CHECK(same.weights[0].size() == 1);
        CHECK(same.weights[0][0].multiplicity == 2);
        CHECK_THROWS_AS(direct_sum(a, uniform_bundle(3, 2, 1, Rational(0), {{kHalf, 1}})), InvalidInput);
    }
    SUBCASE("dual and twist")
    {
        const auto a = uniform_bundle(1, 2, 1, Rational(2), {{Rational(1, 3), 1}});
        const auto d = parabolic_dual(a);
        CHECK(parabolic_degree(d) == -parabolic_degree(a));
        CHECK(d.baseDegree == Rational(-4));
        CHECK(d.weights[0][0].weight == Rational(2, 3));
        const auto z = uniform_bundle(1, 2, 1, Rational(2), {{Rational(0), 1}});
        CHECK(parabolic_dual(z).baseDegree == Rational(-2));
        const auto t = twist(direct_sum(a, a), 3);
        CHECK(parabolic_degree(t) == Rational(2) * parabolic_degree(a) + Rational(6));
    }
    SUBCASE("validation")
    {
        CHECK_THROWS_AS(uniform_bundle(1, 1, 1, Rational(0), {{Rational(1), 1}}), InvalidInput);
        CHECK_THROWS_AS(uniform_bundle(1, 1, 1, Rational(0), {{Rational(-1, 2), 1}}), InvalidInput);
        CHECK_THROWS_AS(uniform_bundle(1, 1, 2, Rational(0), {{kHalf, 1}}), InvalidInput);
        CHECK_THROWS_AS(uniform_bundle(-1, 1, 1, Rational(0), {{kHalf, 1}}), InvalidInput);
    }
    CHECK(log_canonical_degree(2, 3) == 5);
}

TEST_CASE("Milnor-Wood")
{
    const MilnorWood a = milnor_wood_check(Rational(3), 2, 1);
    CHECK(a.holds);
    CHECK(a.maximal);
    CHECK(a.bound == Rational(3));
    CHECK(milnor_wood_check(Rational(-3), 2, 1).holds);
    CHECK(milnor_wood_check(Rational(-3), 2, 1).maximal);
    CHECK_FALSE(milnor_wood_check(Rational(7, 2), 2, 1).holds);
    CHECK(milnor_wood_check(Rational(5, 2), 2, 1).holds);
    CHECK_FALSE(milnor_wood_check(Rational(5, 2), 2, 1).maximal);
    // closed surfaces
    CHECK(milnor_wood_check(Rational(2), 2, 0).maximal);
    CHECK_FALSE(milnor_wood_check(Rational(3), 2, 0).holds);
    CHECK_THROWS_AS(milnor_wood_check(Rational(0), 1, 0), InvalidInput);
    CHECK_THROWS_AS(milnor_wood_check(Rational(0), 0, 1), InvalidInput);
}

TEST_CASE("connected sum")
{
    CHECK(connected_sum_degree(Rational(3), Rational(5)) == Rational(8));
    CHECK(connected_sum_degree(Rational(1, 2), Rational(-1, 2)) == Rational(0));
    // maximal sides give a maximal sum: (2g1-2+s) + (2g2-2+s) = 2(g1+g2+s-1) - 2
    for (int g1 = 1; g1 <= 4; ++g1)
        for (int g2 = 1; g2 <= 4; ++g2)
            for (int s = 1; s <= 3; ++s)
                CHECK(connected_sum_degree(Rational(2 * g1 - 2 + s), Rational(2 * g2 - 2 + s)) ==
                      Rational(2 * (g1 + g2 + s - 1) - 2));
}

TEST_CASE("hybrid classification")
{
    const ComponentClass a = classify_hybrid(1, 1, 1);
    CHECK(a.genusTotal == 2);
    CHECK(a.toledo == Rational(2));
    CHECK(a.degL == 1);
    CHECK(a.exceptional);

    const ComponentClass b = classify_hybrid(2, 1, 2);
    CHECK(b.genusTotal == 4);
    CHECK(b.degL == 4);
    CHECK(b.toledo == Rational(6));

    // the irreducible side is on the left, so swapping changes degL
    CHECK(classify_hybrid(1, 2, 2).degL != b.degL);
    CHECK(classify_hybrid(1, 2, 2).genusTotal == b.genusTotal);

    for (int g1 = 1; g1 <= 4; ++g1)
        for (int g2 = 1; g2 <= 4; ++g2)
            for (int s = 1; s <= 3; ++s) {
                const ComponentClass c = classify_hybrid(g1, g2, s);
                const int g = c.genusTotal;
                CHECK(g == g1 + g2 + s - 1);
                CHECK(c.toledo == Rational(2 * g - 2));
                CHECK(c.degL >= 1);
                CHECK(c.degL <= 2 * g - 3);
            }
    CHECK_FALSE(admissible_splitting(0, 1, 1));
    CHECK_FALSE(admissible_splitting(1, 1, 0));
    CHECK(admissible_splitting(1, 1, 1));
    CHECK_THROWS_AS(classify_hybrid(0, 1, 1), InvalidInput);
}

TEST_CASE("component census")
{
    const Census c2 = component_census(2);
    CHECK(c2.total == 48);
    CHECK(c2.exceptional == 1);
    const Census c3 = component_census(3);
    CHECK(c3.total == 194);
    CHECK(c3.exceptional == 3);
    CHECK(c3.degMin == 0);
    CHECK(c3.degMax == 4);
    for (int g = 2; g <= 10; ++g) {
        const Census c = component_census(g);
        CHECK(c.total == 3 * (1LL << (2 * g)) + 2 * g - 4);
        CHECK(c.exceptional == 2 * g - 3);
    }
    CHECK_THROWS_AS(component_census(1), InvalidInput);
    CHECK_THROWS_AS(component_census(31), InvalidInput);
}

TEST_CASE("hybrid gluing reaches every exceptional component")
{
    const auto rows = coverage_sweep(8);
    REQUIRE_FALSE(rows.empty());
    CHECK(rows.front().genus == 2);
    for (const auto& r : rows) {
        CHECK(r.covers);
        CHECK(static_cast<long long>(r.attained.size()) == r.exceptional);
        CHECK(r.splittings > 0);
        if (r.genus == 4) {
            const std::set<long long> want{1, 2, 3, 4, 5};
            CHECK(r.attained == want);
        }
    }
}
