#include "hglue/linearized.hpp"

#include <cmath>
#include <mutex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "hglue/approximate.hpp"
#include "hglue/errors.hpp"

namespace hglue {

namespace {

// independent entries of [[A, B], [C, -A^T]] with B, C symmetric
constexpr int kChannels[10][2] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {0, 2}, {0, 3}, {1, 3}, {2, 0}, {3, 0}, {3, 1}};

Eigen::MatrixXcd assembled_system(const ModeBlock& mb)
{
    const int n = static_cast<int>(mb.blocks.size());
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int c = 0; c < n; ++c)
        M.block<2, 2>(2 * c, 2 * c) = mb.blocks[c].system;
    return M;
}

} // namespace

ModeBlock mode_block_general(int j, cplx p1, cplx p2)
{
    ModeBlock mb{j, Eigen::Vector4cd(p1, p2, -p1, -p2), {}};
    for (const auto& ch : kChannels) {
        const cplx d = mb.phiDiag(ch[0]) - mb.phiDiag(ch[1]);
        Eigen::Matrix2cd s;
        s << -0.5 * j, std::conj(d), d, 0.5 * j;
        mb.blocks.push_back({ch[0], ch[1], d, s});
    }
    return mb;
}

ModeBlock mode_block(int j, double C)
{
    if (C == 0.0 || !std::isfinite(C))
        throw InvalidInput("mode_block: C must be nonzero");
    return mode_block_general(j, 3.0 * C, C);
}

int mode_kernel_dimension(const ModeBlock& mb)
{
    const Eigen::MatrixXcd M = assembled_system(mb);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const auto& sv = svd.singularValues();
    const double thr = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thr)
            ++rank;
    return static_cast<int>(M.cols()) - rank;
}

Eigen::MatrixXcd mode_kernel_basis(const ModeBlock& mb)
{
    const Eigen::MatrixXcd M = assembled_system(mb);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const int dim = mode_kernel_dimension(mb);
    return svd.matrixV().rightCols(dim);
}

std::vector<std::pair<int, int>> kernel_dimensions_general(cplx p1, cplx p2, int jMax)
{
    if (jMax < 1)
        throw InvalidInput("kernel_dimensions: jMax must be at least 1");
    std::vector<std::pair<int, int>> out;
    for (int j = -jMax; j <= jMax; ++j)
        out.emplace_back(j, mode_kernel_dimension(mode_block_general(j, p1, p2)));
    return out;
}

std::vector<std::pair<int, int>> kernel_dimensions(double C, int jMax)
{
    if (C == 0.0 || !std::isfinite(C))
        throw InvalidInput("kernel_dimensions: C must be nonzero");
    return kernel_dimensions_general(3.0 * C, C, jMax);
}

CovariantGradient covariant_gradient(const HiggsPairField& pair, const NodeField& gamma)
{
    CovariantGradient g{dtau(pair.grid, gamma), dtheta(pair.grid, gamma)};
    for (size_t n = 0; n < gamma.size(); ++n) {
        g.tau[n] += comm(pair.aTau[n], gamma[n]);
        g.theta[n] += comm(pair.aTheta[n], gamma[n]);
    }
    return g;
}

NodeField apply_L(const HiggsPairField& pair, const NodeField& gamma)
{
    const CylinderGrid& g = pair.grid;
    const CovariantGradient c = covariant_gradient(pair, gamma);
    const NodeField dt = dtau(g, c.tau), dth = dtheta(g, c.theta);
    NodeField out(gamma.size(), Mat4::Zero());
    for (int i = 1; i < g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k) {
            const int n = g.index(i, k);
            const Mat4& phi = pair.phi[n];
            const Mat4 phis = phi.adjoint();
            const Mat4 div = dt[n] + comm(pair.aTau[n], c.tau[n]) + dth[n] + comm(pair.aTheta[n], c.theta[n]);
            out[n] = -div + 2.0 * (comm(phi, comm(phis, gamma[n])) + comm(phis, comm(phi, gamma[n])));
        }
    return out;
}

double dA_norm2(const HiggsPairField& pair, const NodeField& gamma)
{
    const CylinderGrid& g = pair.grid;
    const CovariantGradient c = covariant_gradient(pair, gamma);
    double s = 0.0;
    for (int i = 0; i <= g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k) {
            const int n = g.index(i, k);
            s += node_weight(g, i) * (c.tau[n].squaredNorm() + c.theta[n].squaredNorm());
        }
    return s;
}

double higgs_norm2(const HiggsPairField& pair, const NodeField& gamma)
{
    const CylinderGrid& g = pair.grid;
    double s = 0.0;
    for (int i = 0; i <= g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k) {
            const int n = g.index(i, k);
            s += node_weight(g, i) * 2.0 * comm(pair.phi[n], gamma[n]).squaredNorm();
        }
    return s;
}

int gauge_dofs(const CylinderGrid& grid) { return (grid.nTau - 1) * grid.nTheta() * 10; }

int dof_index(const CylinderGrid& grid, int i, int k, int b) { return ((i - 1) * grid.nTheta() + k) * 10 + b; }

Eigen::VectorXd to_coords(const GaugeField& gamma)
{
    const CylinderGrid& g = gamma.grid;
    if (static_cast<int>(gamma.gamma.size()) != g.size())
        throw DimensionError("to_coords: field size does not match grid");
    const auto& E = hermitian_basis();
    Eigen::VectorXd x(gauge_dofs(g));
    for (int i = 1; i < g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k)
            for (int b = 0; b < 10; ++b)
                x(dof_index(g, i, k, b)) = rdot(gamma.gamma[g.index(i, k)], E[b]);
    return x;
}

GaugeField from_coords(const CylinderGrid& grid, const Eigen::VectorXd& x)
{
    if (x.size() != gauge_dofs(grid))
        throw DimensionError("from_coords: coordinate vector has the wrong length");
    const auto& E = hermitian_basis();
    GaugeField out = zero_gauge(grid);
    for (int i = 1; i < grid.nTau; ++i)
        for (int k = 0; k < grid.nTheta(); ++k) {
            Mat4& m = out.gamma[grid.index(i, k)];
            for (int b = 0; b < 10; ++b)
                m += x(dof_index(grid, i, k, b)) * E[b];
        }
    return out;
}

namespace detail {
struct OperatorCache {
    std::once_flag factorOnce;
    std::once_flag eigenOnce;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::NaturalOrdering<int>> ldlt;
    double shift = 0.0;
    EigenEstimate eig;
};
} // namespace detail

LinearOperator::LinearOperator(CylinderGrid grid, Eigen::SparseMatrix<double> matrix)
    : grid_(grid), matrix_(std::move(matrix)), cache_(std::make_shared<detail::OperatorCache>())
{
    if (matrix_.rows() != matrix_.cols())
        throw DimensionError("LinearOperator: matrix must be square");
    matrix_.makeCompressed();
}

static void ensure_factor(const Eigen::SparseMatrix<double>& m, detail::OperatorCache& c)
{
    std::call_once(c.factorOnce, [&] {
        double dmax = 0.0;
        for (int i = 0; i < m.rows(); ++i)
            dmax = std::max(dmax, std::abs(m.coeff(i, i)));
        c.shift = 1e-10 * std::max(dmax, 1.0);
        Eigen::SparseMatrix<double> s = m;
        for (int i = 0; i < s.rows(); ++i)
            s.coeffRef(i, i) += c.shift;
        c.ldlt.compute(s);
        if (c.ldlt.info() != Eigen::Success)
            throw SingularOperatorError("LinearOperator: factorization of the shifted operator failed");
    });
}

Eigen::VectorXd LinearOperator::shifted_solve(const Eigen::VectorXd& b) const
{
    ensure_factor(matrix_, *cache_);
    return cache_->ldlt.solve(b);
}

double LinearOperator::shift() const
{
    ensure_factor(matrix_, *cache_);
    return cache_->shift;
}

const EigenEstimate& LinearOperator::eigen() const
{
    std::call_once(cache_->eigenOnce, [this] { cache_->eig = smallest_eigenvalue(*this); });
    return cache_->eig;
}

LinearOperator linearize(const HiggsPairField& pair)
{
    const CylinderGrid& g = pair.grid;
    const auto& E = hermitian_basis();
    const int N = g.nTau, nt = g.nTheta();
    std::vector<Eigen::Triplet<double>> trip;
    // L couples rows at distance <= 2, so rows equal mod 5 are probed together
    for (int c = 0; c < 5; ++c)
        for (int k = 0; k < nt; ++k)
            for (int b = 0; b < 10; ++b) {
                NodeField probe(g.size(), Mat4::Zero());
                bool any = false;
                for (int i = 1; i < N; ++i)
                    if (i % 5 == c) {
                        probe[g.index(i, k)] = E[b];
                        any = true;
                    }
                if (!any)
                    continue;
                const NodeField out = apply_L(pair, probe);
                for (int io = 1; io < N; ++io) {
                    int src = -1;
                    for (int off = -2; off <= 2; ++off) {
                        const int s = io + off;
                        if (s >= 1 && s < N && s % 5 == c)
                            src = s;
                    }
                    if (src < 0)
                        continue;
                    const int col = dof_index(g, src, k, b);
                    for (int ko = 0; ko < nt; ++ko)
                        for (int bo = 0; bo < 10; ++bo) {
                            const double v = rdot(out[g.index(io, ko)], E[bo]);
                            if (v != 0.0)
                                trip.emplace_back(dof_index(g, io, ko, bo), col, v);
                        }
                }
            }
    Eigen::SparseMatrix<double> M(gauge_dofs(g), gauge_dofs(g));
    M.setFromTriplets(trip.begin(), trip.end());
    return LinearOperator(g, std::move(M));
}

double hermiticity_defect(const LinearOperator& op)
{
    const Eigen::SparseMatrix<double>& m = op.matrix();
    const Eigen::SparseMatrix<double> d = m - Eigen::SparseMatrix<double>(m.transpose());
    double dm = 0.0, mm = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it)
            dm = std::max(dm, std::abs(it.value()));
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            mm = std::max(mm, std::abs(it.value()));
    return mm > 0.0 ? dm / mm : dm;
}

EigenEstimate smallest_eigenvalue(const LinearOperator& op)
{
    const int n = op.size();
    if (n == 0)
        throw DimensionError("smallest_eigenvalue: empty operator");
    const int p = std::min(12, n);
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXd X(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
            X(i, j) = nd(rng);
    double prev = std::numeric_limits<double>::infinity();
    int stable = 0;
    for (int it = 1; it <= 500; ++it) {
        Eigen::MatrixXd Y(n, p);
        for (int j = 0; j < p; ++j)
            Y.col(j) = op.shifted_solve(X.col(j));
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
        const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
        const Eigen::MatrixXd H = Q.transpose() * (op.matrix() * Q);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (H + H.transpose()));
        X = Q * es.eigenvectors();
        const double lam = es.eigenvalues()(0);
        if (std::abs(lam - prev) <= 1e-12 * std::abs(lam) + 1e-15) {
            if (++stable >= 2)
                return {lam, it, lam <= 1e-9};
        } else {
            stable = 0;
        }
        prev = lam;
    }
    throw ConvergenceError("smallest_eigenvalue: no convergence after 500 iterations");
}

double dense_smallest_eigenvalue(const LinearOperator& op)
{
    const Eigen::MatrixXd M(op.matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

Eigen::VectorXd inverse_apply(const LinearOperator& op, const Eigen::VectorXd& rhs)
{
    if (rhs.size() != op.size())
        throw DimensionError("inverse_apply: right-hand side has the wrong length");
    const EigenEstimate& e = op.eigen();
    if (e.lambdaMin <= 1e-9)
        throw SingularOperatorError("inverse_apply: operator is not strictly positive");
    const double bn = rhs.norm();
    if (bn == 0.0)
        return Eigen::VectorXd::Zero(rhs.size());
    const Eigen::SparseMatrix<double>& M = op.matrix();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
    Eigen::VectorXd r = rhs;
    Eigen::VectorXd z = op.shifted_solve(r);
    Eigen::VectorXd d = z;
    double rz = r.dot(z);
    for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd q = M * d;
        const double alpha = rz / d.dot(q);
        x += alpha * d;
        r -= alpha * q;
        if (r.norm() <= 1e-10 * bn)
            return x;
        z = op.shifted_solve(r);
        const double rzNew = r.dot(z);
        d = z + (rzNew / rz) * d;
        rz = rzNew;
    }
    throw ConvergenceError("inverse_apply: conjugate gradients did not reach 1e-10");
}

GaugeField inverse_apply(const LinearOperator& op, const GaugeField& rhs)
{
    if (!same_grid(op.grid(), rhs.grid))
        throw DimensionError("inverse_apply: grid mismatch");
    return from_coords(op.grid(), inverse_apply(op, to_coords(rhs)));
}

std::vector<EigenSweepRow> eigen_sweep(const std::vector<double>& Ts, double C, int nTau, int nModes,
                                       double amplitude, std::uint64_t seed)
{
    std::vector<EigenSweepRow> rows;
    for (double T : Ts) {
        if (!(T > 0.0))
            throw InvalidInput("eigen_sweep: T must be positive");
        const double R = std::exp(-T);
        const ApproxConfig cfg = make_approx_config(R, 0.4, 0.3, C);
        const GluedApprox ga = glued_approximate(cfg, nTau, nModes, amplitude, seed);
        const LinearOperator op = linearize(ga.pair);
        const double lam = smallest_eigenvalue(op).lambdaMin;
        const double t = ga.pair.grid.tMax;
        rows.push_back({t, R, lam, lam * t * t});
    }
    return rows;
}

} // namespace hglue
