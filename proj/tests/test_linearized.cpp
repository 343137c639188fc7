#include <doctest.h>

#include <cmath>
#include <random>

#include "hglue/approximate.hpp"
#include "hglue/errors.hpp"
#include "hglue/linearized.hpp"
#include "hglue/solver.hpp"

using namespace hglue;

namespace {

Eigen::VectorXd random_coords(const CylinderGrid& g, std::mt19937_64& rng)
{
    std::normal_distribution<double> n;
    Eigen::VectorXd x(gauge_dofs(g));
    for (auto& v : x)
        v = n(rng);
    return x;
}

const GluedApprox& coarse_approx()
{
    static const GluedApprox ga = glued_approximate(make_approx_config(0.1, 0.4, 0.3, 1.0), 64, 2, kFixtureAmplitude, 7);
    return ga;
}

} // namespace

TEST_CASE("mode blocks")
{
    for (double C : {0.01, 0.5, 1.0, 3.0})
        for (int j = -4; j <= 4; ++j) {
            const ModeBlock mb = mode_block(j, C);
            REQUIRE(mb.blocks.size() == 10);
            for (const auto& ch : mb.blocks) {
                const double det = -(0.25 * j * j + std::norm(ch.weight));
                CHECK(std::abs(ch.system.determinant() - det) < 1e-12 * (1.0 + std::abs(det)));
                CHECK(ch.weight == mb.phiDiag(ch.row) - mb.phiDiag(ch.col));
            }
        }
    CHECK_THROWS_AS(mode_block(1, 0.0), InvalidInput);
}

TEST_CASE("kernel table")
{
    for (double C : {0.01, 0.5, 1.0, 3.0}) {
        const auto k = kernel_dimensions(C, 6);
        REQUIRE(k.size() == 13);
        for (const auto& [j, dim] : k)
            CHECK(dim == (j == 0 ? 4 : 0));
    }
    // the diagonal channels span the kernel at j = 0
    const Eigen::MatrixXcd K = mode_kernel_basis(mode_block(0, 1.0));
    CHECK(K.cols() == 4);
    CHECK(K.bottomRows(16).norm() < 1e-12);

    // general diagonal: extra channels close when p2 = -p1 or p2 = 0
    CHECK(kernel_dimensions_general(cplx(2, 1), cplx(-1, 0.5), 3)[3].second == 4);
    CHECK(kernel_dimensions_general(cplx(1, 0), cplx(-1, 0), 3)[3].second == 8);
    CHECK(kernel_dimensions_general(cplx(1, 0), cplx(0, 0), 3)[3].second == 8);
    CHECK(kernel_dimensions_general(cplx(1, 0), cplx(-1, 0), 3)[2].second == 0);
    CHECK_THROWS_AS(kernel_dimensions(1.0, 0), InvalidInput);
}

TEST_CASE("coordinates")
{
    const CylinderGrid g = make_grid(0.1, 20, 2);
    std::mt19937_64 rng(1);
    const Eigen::VectorXd x = random_coords(g, rng);
    const GaugeField gam = from_coords(g, x);
    CHECK((to_coords(gam) - x).norm() < 1e-12);
    for (int k = 0; k < g.nTheta(); ++k) {
        CHECK(gam.gamma[g.index(0, k)].isZero(0.0));
        CHECK(gam.gamma[g.index(g.nTau, k)].isZero(0.0));
    }
    for (const auto& m : gam.gamma)
        CHECK((m - m.adjoint()).norm() < 1e-14);
    CHECK(dof_index(g, 1, 0, 0) == 0);
    CHECK(dof_index(g, g.nTau - 1, g.nTheta() - 1, 9) == gauge_dofs(g) - 1);
    CHECK_THROWS_AS(from_coords(g, Eigen::VectorXd(3)), DimensionError);
}

TEST_CASE("operator")
{
    const HiggsPairField& p = coarse_approx().pair;
    const CylinderGrid& g = p.grid;
    const LinearOperator op = linearize(p);
    std::mt19937_64 rng(2);

    CHECK(hermiticity_defect(op) < 1e-12);
    CHECK(op.size() == gauge_dofs(g));

    SUBCASE("matrix agrees with the field operator")
    {
        const Eigen::VectorXd x = random_coords(g, rng);
        const NodeField lg = apply_L(p, from_coords(g, x).gamma);
        const Eigen::VectorXd y = to_coords(GaugeField{g, lg});
        CHECK((op.matrix() * x - y).norm() < 1e-10 * y.norm());
    }

    SUBCASE("quadratic form")
    {
        for (int t = 0; t < 50; ++t) {
            const GaugeField gam = from_coords(g, random_coords(g, rng));
            const double q = l2_dot(g, gam.gamma, apply_L(p, gam.gamma));
            const double rhs = dA_norm2(p, gam.gamma) + 2.0 * higgs_norm2(p, gam.gamma);
            CHECK(std::abs(q - rhs) <= 1e-8 * std::abs(rhs));
            CHECK(q > 0.0);
        }
    }

    SUBCASE("linearization of the orbit residual")
    {
        const GaugeField dir = random_smooth_gauge(g, rng, false);
        const NodeField lg = apply_L(p, dir.gamma);
        double err[2];
        const double ts[2] = {1e-2, 5e-3};
        for (int r = 0; r < 2; ++r) {
            GaugeField a = dir, b = dir;
            for (size_t m = 0; m < dir.gamma.size(); ++m) {
                a.gamma[m] *= ts[r];
                b.gamma[m] *= -ts[r];
            }
            const NodeField fa = orbit_residual(a, p), fb = orbit_residual(b, p);
            NodeField d(fa.size());
            for (size_t m = 0; m < fa.size(); ++m)
                d[m] = (fa[m] - fb[m]) / (2.0 * ts[r]) - lg[m];
            err[r] = l2_norm(g, d, true) / l2_norm(g, lg, true);
        }
        CHECK(err[1] < 1e-3);
        CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
    }

    SUBCASE("inverse")
    {
        const Eigen::VectorXd x = random_coords(g, rng);
        const Eigen::VectorXd b = op.matrix() * x;
        CHECK((inverse_apply(op, b) - x).norm() < 1e-8 * x.norm());
        CHECK(inverse_apply(op, Eigen::VectorXd::Zero(op.size())).norm() == 0.0);
        const GaugeField gam = from_coords(g, x);
        const GaugeField back = inverse_apply(op, GaugeField{g, apply_L(p, gam.gamma)});
        CHECK(max_diff(back.gamma, gam.gamma) < 1e-7);
        CHECK_THROWS_AS(inverse_apply(op, Eigen::VectorXd(3)), DimensionError);
    }

    SUBCASE("smallest eigenvalue")
    {
        const EigenEstimate e = smallest_eigenvalue(op);
        CHECK(e.lambdaMin > 0.0);
        CHECK_FALSE(e.zeroMode);
        CHECK(op.eigen().lambdaMin == doctest::Approx(e.lambdaMin));
        // Rayleigh quotients of random vectors stay above it
        for (int t = 0; t < 10; ++t) {
            const Eigen::VectorXd x = random_coords(g, rng);
            CHECK(x.dot(op.matrix() * x) / x.squaredNorm() >= e.lambdaMin * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("iterative and dense eigenvalues agree on a long neck")
{
    const GluedApprox ga =
        glued_approximate(make_approx_config(std::exp(-6.0), 0.4, 0.3, 1.0), 40, 1, kFixtureAmplitude, 3);
    const LinearOperator op = linearize(ga.pair);
    const double dense = dense_smallest_eigenvalue(op);
    CHECK(smallest_eigenvalue(op).lambdaMin == doctest::Approx(dense).epsilon(1e-6));
}

TEST_CASE("a zero mode is flagged and blocks inversion")
{
    const CylinderGrid g = make_grid(0.1, 8, 1);
    const int n = gauge_dofs(g);
    Eigen::SparseMatrix<double> m(n, n);
    for (int i = 1; i < n; ++i)
        m.insert(i, i) = 1.0 + i;
    m.makeCompressed();
    const LinearOperator op(g, m);
    const EigenEstimate e = smallest_eigenvalue(op);
    CHECK(e.lambdaMin <= 1e-9);
    CHECK(e.zeroMode);
    CHECK_THROWS_AS(inverse_apply(op, Eigen::VectorXd::Ones(n)), SingularOperatorError);
}

TEST_CASE("lambda T^2 stays bounded along the neck")
{
    const auto rows = eigen_sweep({2.0, 3.0, 4.0}, 1.0, 96, 1, kFixtureAmplitude, kDefaultSeed);
    double lo = rows[0].lambdaMinTimesT2, hi = lo;
    for (const auto& r : rows) {
        CHECK(r.lambdaMin > 0.0);
        CHECK(r.R == doctest::Approx(std::exp(-r.T)));
        lo = std::min(lo, r.lambdaMinTimesT2);
        hi = std::max(hi, r.lambdaMinTimesT2);
    }
    CHECK(hi / lo <= 10.0);
    CHECK_THROWS_AS(eigen_sweep({-1.0}, 1.0, 20, 1, kFixtureAmplitude, 1), InvalidInput);
}
