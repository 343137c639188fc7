#include <doctest.h>

#include <cmath>
#include <random>

#include "hglue/approximate.hpp"
#include "hglue/errors.hpp"
#include "hglue/solver.hpp"

using namespace hglue;

namespace {

const GluedApprox& approx()
{
    static const GluedApprox ga =
        glued_approximate(make_approx_config(0.1, 0.4, 0.3, 1.0), 96, 2, kFixtureAmplitude, kDefaultSeed);
    return ga;
}

GaugeField scaled(const GaugeField& g, double t)
{
    GaugeField out = g;
    for (auto& m : out.gamma)
        m *= t;
    return out;
}

NodeField minus(const NodeField& a, const NodeField& b)
{
    NodeField out(a.size());
    for (size_t m = 0; m < a.size(); ++m)
        out[m] = a[m] - b[m];
    return out;
}

double remainder_norm(const RemainderTerms& r, const CylinderGrid& g)
{
    return std::sqrt(std::pow(l2_norm(g, r.aTau), 2) + std::pow(l2_norm(g, r.aTheta), 2) +
                     std::pow(l2_norm(g, r.phi), 2));
}

} // namespace

TEST_CASE("remainders")
{
    const HiggsPairField& p = approx().pair;
    const CylinderGrid& g = p.grid;
    std::mt19937_64 rng(4);

    SUBCASE("vanish at zero")
    {
        const RemainderTerms r = remainder_terms(zero_gauge(g), p);
        CHECK(remainder_norm(r, g) == 0.0);
        CHECK(l2_norm(g, q_r(zero_gauge(g), p)) == 0.0);
    }

    SUBCASE("are quadratic")
    {
        const GaugeField dir = random_smooth_gauge(g, rng, false);
        const double a = l2_norm(g, remainder_terms(scaled(dir, 1e-2), p).phi) / 1e-4;
        const double b = l2_norm(g, remainder_terms(scaled(dir, 1e-3), p).phi) / 1e-6;
        CHECK(a > 0.0);
        CHECK(b == doctest::Approx(a).epsilon(0.05));
        const double qa = l2_norm(g, q_r(scaled(dir, 1e-2), p)) / 1e-4;
        const double qb = l2_norm(g, q_r(scaled(dir, 1e-3), p)) / 1e-6;
        CHECK(qb == doctest::Approx(qa).epsilon(0.05));
    }

    SUBCASE("diagonal gauge commutes with a diagonal Higgs field")
    {
        const HiggsPairField m = side_field_from_model(g, sp4_model_left(1.0), Side::left);
        GaugeField d = zero_gauge(g);
        for (int i = 1; i < g.nTau; ++i)
            for (int k = 0; k < g.nTheta(); ++k)
                d.gamma[g.index(i, k)] = Eigen::Vector4cd(0.2 * std::sin(g.tau(i)), 0.1, -0.2 * std::sin(g.tau(i)), -0.1).asDiagonal();
        CHECK(l2_norm(g, remainder_terms(d, m).phi) < 1e-14);
    }

    SUBCASE("Taylor identity")
    {
        const NodeField f0 = orbit_residual(zero_gauge(g), p);
        for (int t = 0; t < 20; ++t) {
            const GaugeField gam = scaled(random_smooth_gauge(g, rng, t % 2 == 0), 1e-3);
            const NodeField lhs = minus(minus(orbit_residual(gam, p), f0), apply_L(p, gam.gamma));
            const NodeField q = q_r(gam, p);
            CHECK(l2_norm(g, minus(lhs, q)) <= 1e-8 * std::max(l2_norm(g, q), 1e-12) + 1e-14);
        }
    }
}

TEST_CASE("smooth gauges")
{
    const CylinderGrid& g = approx().pair.grid;
    std::mt19937_64 rng(5);
    for (bool loc : {false, true}) {
        const GaugeField gam = random_smooth_gauge(g, rng, loc);
        CHECK(l2_norm(g, gam.gamma) == doctest::Approx(1.0));
        for (int k = 0; k < g.nTheta(); ++k)
            CHECK(gam.gamma[g.index(0, k)].isZero(0.0));
        for (const auto& m : gam.gamma)
            CHECK(in_h_pattern(m, 1e-12));
    }
}

TEST_CASE("Lipschitz constant of Q shrinks with the radius")
{
    std::mt19937_64 rng(6);
    const LipschitzFit fit = lipschitz_fit(approx().pair, {0.1, 0.05, 0.025}, 8, rng);
    REQUIRE(fit.rows.size() == 3);
    CHECK(fit.rows[2].maxRatio < fit.rows[0].maxRatio);
    CHECK(fit.slope > 0.5);
    for (const auto& r : fit.rows)
        CHECK(r.maxRatio <= fit.constant * r.r * (1.0 + 1e-12));
    CHECK_THROWS_AS(lipschitz_fit(approx().pair, {}, 8, rng), InvalidInput);
}

TEST_CASE("config validation")
{
    SolverConfig c;
    CHECK_NOTHROW(validate(c));
    c.tol = 0.0;
    CHECK_THROWS_AS(validate(c), InvalidInput);
    c = SolverConfig{};
    c.maxIter = 0;
    CHECK_THROWS_AS(validate(c), InvalidInput);
    c = SolverConfig{};
    c.epsilonBall = -1.0;
    CHECK_THROWS_AS(validate(c), InvalidInput);
}

TEST_CASE("exact input needs no gauge")
{
    const CylinderGrid g = make_grid(0.1, 96, 2);
    const HiggsPairField m = glue_pairs(side_field_from_model(g, sp4_model_left(1.0), Side::left),
                                        side_field_from_model(g, sp4_model_right(1.0), Side::right),
                                        default_plumbing(0.1));
    const SolveResult r = contraction_solve(m, SolverConfig{});
    CHECK(r.iterations == 0);
    CHECK(l2_norm(g, r.gamma.gamma) == 0.0);
}

TEST_CASE("contraction solve")
{
    const HiggsPairField& p = approx().pair;
    const CylinderGrid& g = p.grid;
    const SolverConfig cfg;
    const SolveResult r = contraction_solve(p, cfg);
    const auto& c = r.constants;

    CHECK(r.iterations >= 1);
    CHECK(r.iterations <= 20);
    CHECK(hitchin_residual(r.exact).res1Sup < 1e-8);
    CHECK(hitchin_residual(r.exact).res2Sup / field_scale(r.exact) < 1e-10);
    CHECK(l2_norm(g, r.gamma.gamma) <= c.sigmaR);
    CHECK(c.t0Norm < c.sigmaR / 10.0);
    CHECK(c.contractionBound < 1.0);
    CHECK(c.lambdaMin > 0.0);
    CHECK_FALSE(r.damped);
    for (size_t k = 2; k < r.trace.perStep.size(); ++k)
        CHECK(r.trace.perStep[k].contractionRatio < 1.0);

    SUBCASE("fixed point")
    {
        const LinearOperator op = linearize(p);
        const NodeField f0 = orbit_residual(zero_gauge(g), p);
        const GaugeField t = fixed_point_map(r.gamma, p, op, f0);
        CHECK(l2_norm(g, minus(t.gamma, r.gamma.gamma)) < 1e-7);
    }

    SUBCASE("characteristic polynomial is kept")
    {
        double d = 0;
        for (size_t m = 0; m < p.phi.size(); ++m)
            d = std::max(d, (char_poly_invariants(r.exact.phi[m]) - char_poly_invariants(p.phi[m])).norm());
        CHECK(d < 1e-8);
    }

    SUBCASE("other starts in the ball reach the same solution")
    {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 2; ++t) {
            const GaugeField start = scaled(random_smooth_gauge(g, rng, false), c.sigmaR / 2.0);
            const SolveResult s = contraction_solve(p, cfg, start);
            CHECK(max_pair_diff(s.exact, r.exact) < 1e-7);
        }
        CHECK_THROWS_AS(contraction_solve(p, cfg, zero_gauge(make_grid(0.1, 40, 2))), DimensionError);
    }
}

TEST_CASE("basin failure")
{
    SolverConfig cfg;
    cfg.epsilonBall = 10.0;  // shrinks sigma_R far below ||T(0)||
    CHECK_THROWS_AS(contraction_solve(approx().pair, cfg), BasinError);
    try {
        contraction_solve(approx().pair, cfg);
    } catch (const BasinError& e) {
        CHECK(e.product() >= 1.0);
    }
    cfg.allowDamping = true;
    cfg.maxIter = 1;
    CHECK_THROWS_AS(contraction_solve(approx().pair, cfg), IterationLimitError);
}
