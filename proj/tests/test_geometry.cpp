#include <doctest.h>

#include <cmath>
#include <random>

#include "hglue/errors.hpp"
#include "hglue/geometry.hpp"

using namespace hglue;

TEST_CASE("cylinder grid")
{
    const CylinderGrid g = make_grid(0.1, 64, 3);
    CHECK(std::abs(g.tMax + std::log(0.1)) < 1e-12);
    CHECK(g.nTheta() == 7);
    CHECK(g.dtau() == doctest::Approx(2.0 * g.tMax / 64));
    CHECK(g.tau(0) == doctest::Approx(-g.tMax));
    CHECK(g.tau(64) == doctest::Approx(g.tMax));
    CHECK_THROWS_AS(make_grid(0.1, 63, 3), InvalidInput);
    CHECK_THROWS_AS(make_grid(0.1, 6, 3), InvalidInput);
    CHECK_THROWS_AS(make_grid(1.5, 64, 3), InvalidInput);
    CHECK_THROWS_AS(make_grid(0.1, 64, 0), InvalidInput);

    const CylinderGrid s = make_grid_spacing(0.05, 0.01, 2);
    CHECK(s.nTau % 2 == 0);
    CHECK(std::abs(s.dtau() - 0.01) < 0.01 * 0.01 * s.nTau);
    CHECK(same_grid(s, make_grid_spacing(0.05, 0.01, 2)));
    CHECK_FALSE(same_grid(s, g));
}

TEST_CASE("plumbing data")
{
    const PlumbingData p = default_plumbing(0.2);
    CHECK(p.R1 / p.r1 == doctest::Approx(p.R2 / p.r2).epsilon(1e-12));
    CHECK(std::abs(p.lambda) == doctest::Approx(p.r2 * p.R1).epsilon(1e-12));
    CHECK(std::abs(p.lambda) == doctest::Approx(p.r1 * p.R2).epsilon(1e-12));
    CHECK_THROWS_AS(make_plumbing(1.0, 0.5, 1.0, 0.5, 1.5), InvalidInput);
    CHECK_THROWS_AS(make_plumbing(2.0, 0.5, 1.0, 0.5, 1.0), InvalidInput);
    CHECK_NOTHROW(make_plumbing(cplx(0.0, 0.5), 0.5, 1.0, 0.5, 1.0));
}

TEST_CASE("plumbing map")
{
    const PlumbingData unit = make_plumbing(1.0, 0.5, 2.0, 0.5, 2.0);
    CHECK(std::abs(plumbing_map(unit, 1.0) - 1.0) < 1e-15);

    const PlumbingData p = default_plumbing(0.1);
    for (int k = 0; k < 16; ++k) {
        const double t = 2.0 * M_PI * k / 16;
        CHECK(std::abs(plumbing_map(p, std::polar(p.r1, t))) == doctest::Approx(p.R2));
        CHECK(std::abs(plumbing_map(p, std::polar(p.R1, t))) == doctest::Approx(p.r2));
        const cplx z = std::polar(std::sqrt(p.r1 * p.R1), t);
        CHECK(std::abs(plumbing_map(p, plumbing_map(p, z)) - z) < 1e-15);
    }
    CHECK_THROWS_AS(plumbing_map(p, 0.0), DomainError);
    CHECK_THROWS_AS(plumbing_map(p, 2.0 * p.R1), DomainError);
    CHECK_THROWS_AS(plumbing_map(p, 0.5 * p.r1), DomainError);
}

TEST_CASE("log form relation")
{
    const PlumbingData p = default_plumbing(0.1);
    std::vector<cplx> samples;
    for (int k = 0; k < 16; ++k)
        samples.push_back(std::polar(std::sqrt(p.r1 * p.R1), 2.0 * M_PI * k / 16));
    CHECK(log_form_relation_check(p, samples));
    CHECK(log_form_relation_check(make_plumbing(cplx(0.3, 0.4), 0.5, 1.0, 0.5, 1.0), {0.7, cplx(0.0, 0.9)}));
    CHECK_FALSE(log_form_relation_check(p, samples, [&](cplx z) { return p.lambda / (z * z); }));
}

TEST_CASE("cutoff")
{
    for (double R : {0.2, 0.1, 0.05, 0.025}) {
        CHECK(cutoff_chi(R, R / 2) == 1.0);
        CHECK(cutoff_chi(R, 0.75 * R) == 1.0);
        CHECK(std::abs(cutoff_chi(R, R)) < 1e-14);
        CHECK(cutoff_chi(R, 2 * R) == 0.0);
        double prev = 1.0;
        for (int k = 0; k <= 100; ++k) {
            const double c = cutoff_chi(R, 0.75 * R * std::pow(4.0 / 3.0, k / 100.0));
            CHECK(c <= prev);
            prev = c;
        }
    }
    CHECK_THROWS_AS(cutoff_chi(1.0, 0.5), InvalidInput);
    CHECK_THROWS_AS(cutoff_growth(0.0), InvalidInput);

    double lo = 1e300, hi = 0;
    for (double R : {0.2, 0.1, 0.05, 0.025}) {
        const CutoffProfile c = make_cutoff_profile(R);
        CHECK(c.growthConstant > 0.0);
        lo = std::min(lo, c.growthConstant);
        hi = std::max(hi, c.growthConstant);
    }
    CHECK(hi <= 1.05 * lo);
}

TEST_CASE("smoothstep")
{
    CHECK(smoothstep5(0.0) == 0.0);
    CHECK(smoothstep5(1.0) == 1.0);
    CHECK(smoothstep5(0.5) == doctest::Approx(0.5));
    // first and second derivatives vanish at both ends
    const double h = 1e-4;
    for (double u : {0.0, 1.0}) {
        CHECK(std::abs(smoothstep5(u + h) - smoothstep5(u - h)) / (2 * h) < 1e-6);
        CHECK(std::abs(smoothstep5(u + h) - 2 * smoothstep5(u) + smoothstep5(u - h)) / (h * h) < 1e-2);
    }
}

TEST_CASE("coordinate maps")
{
    const CylinderGrid g = make_grid(0.1, 64, 2);
    const CylinderCoords c = coordinate_maps(g);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau(-g.tMax, g.tMax), th(0.0, 2.0 * M_PI);
    for (int k = 0; k < 100; ++k) {
        const double t = tau(rng), q = th(rng);
        const auto [tl, ql] = c.from_left(c.to_left(t, q));
        const auto [tr, qr] = c.from_right(c.to_right(t, q));
        CHECK(std::abs(tl - t) < 1e-12);
        CHECK(std::abs(ql - q) < 1e-12);
        CHECK(std::abs(tr - t) < 1e-12);
        CHECK(std::abs(qr - q) < 1e-12);
        CHECK(std::abs(c.to_left(t, q + 2.0 * M_PI) - c.to_left(t, q)) < 1e-14);
        CHECK(std::abs(c.to_right(t, q + 2.0 * M_PI) - c.to_right(t, q)) < 1e-14);
        CHECK(std::abs(c.to_left(t, q) * c.to_right(t, q) - std::pow(g.rNeck, 4)) < 1e-14);
    }
    // the ends sit on |z| = R, the midpoint at R e^{-T} = R^2
    CHECK(c.left_radius(-g.tMax) == doctest::Approx(g.rNeck));
    CHECK(c.right_radius(g.tMax) == doctest::Approx(g.rNeck));
    CHECK(c.left_radius(0.0) == doctest::Approx(g.rNeck * g.rNeck));
    CHECK(std::abs(c.to_left(0.0, 0.0)) == doctest::Approx(g.rNeck * g.rNeck));
}
