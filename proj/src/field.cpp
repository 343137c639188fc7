#include "hglue/field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "hglue/errors.hpp"

namespace hglue {

namespace {
const cplx kI(0.0, 1.0);

void require_same(const CylinderGrid& g, const NodeField& f)
{
    if (static_cast<int>(f.size()) != g.size())
        throw DimensionError("field size does not match grid");
}
} // namespace

const Eigen::MatrixXd& theta_derivative_matrix(int n)
{
    static std::map<int, Eigen::MatrixXd> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) {
                const int d = j - k;
                const double sign = (d % 2 == 0) ? 1.0 : -1.0;
                D(j, k) = 0.5 * sign / std::sin(d * std::numbers::pi / n);
            }
    return cache.emplace(n, std::move(D)).first->second;
}

NodeField dtau(const CylinderGrid& g, const NodeField& f)
{
    require_same(g, f);
    const int N = g.nTau, nt = g.nTheta();
    const double h = g.dtau();
    NodeField out(f.size());
    for (int k = 0; k < nt; ++k) {
        out[g.index(0, k)] = (f[g.index(1, k)] - f[g.index(0, k)]) / h;
        out[g.index(N, k)] = (f[g.index(N, k)] - f[g.index(N - 1, k)]) / h;
        for (int i = 1; i < N; ++i)
            out[g.index(i, k)] = (f[g.index(i + 1, k)] - f[g.index(i - 1, k)]) / (2.0 * h);
    }
    return out;
}

NodeField dtheta(const CylinderGrid& g, const NodeField& f)
{
    require_same(g, f);
    const int nt = g.nTheta();
    const Eigen::MatrixXd& D = theta_derivative_matrix(nt);
    NodeField out(f.size(), Mat4::Zero());
    for (int i = 0; i <= g.nTau; ++i)
        for (int j = 0; j < nt; ++j) {
            Mat4 acc = Mat4::Zero();
            for (int k = 0; k < nt; ++k)
                if (k != j)
                    acc += D(j, k) * f[g.index(i, k)];
            out[g.index(i, j)] = acc;
        }
    return out;
}

NodeField dbar_phi_direct(const HiggsPairField& p)
{
    const NodeField dt = dtau(p.grid, p.phi), dth = dtheta(p.grid, p.phi);
    NodeField out(p.phi.size());
    for (size_t n = 0; n < out.size(); ++n) {
        const Mat4 a01 = 0.5 * (p.aTau[n] + kI * p.aTheta[n]);
        out[n] = 0.5 * (dt[n] + kI * dth[n]) + comm(a01, p.phi[n]);
    }
    return out;
}

HiggsPairField make_pair_field(const CylinderGrid& grid, NodeField aTau, NodeField aTheta, NodeField phi)
{
    require_same(grid, aTau);
    require_same(grid, aTheta);
    require_same(grid, phi);
    HiggsPairField p{grid, std::move(aTau), std::move(aTheta), std::move(phi), NodeField(grid.size(), Mat4::Identity()),
                     {}};
    p.dbarPhi = dbar_phi_direct(p);
    return p;
}

HiggsPairField constant_pair_field(const CylinderGrid& grid, const Mat4& phi)
{
    return make_pair_field(grid, NodeField(grid.size(), Mat4::Zero()), NodeField(grid.size(), Mat4::Zero()),
                           NodeField(grid.size(), phi));
}

GaugeField zero_gauge(const CylinderGrid& grid) { return {grid, NodeField(grid.size(), Mat4::Zero())}; }

NodeField first_residual_field(const HiggsPairField& p)
{
    const NodeField dAth = dtau(p.grid, p.aTheta), dAt = dtheta(p.grid, p.aTau);
    NodeField out(p.phi.size());
    for (size_t n = 0; n < out.size(); ++n) {
        const Mat4 curv = dAth[n] - dAt[n] + comm(p.aTau[n], p.aTheta[n]);
        out[n] = -kI * curv - 2.0 * comm(p.phi[n], p.phi[n].adjoint());
    }
    return out;
}

double node_weight(const CylinderGrid& g, int i)
{
    const double end = (i == 0 || i == g.nTau) ? 0.5 : 1.0;
    return end * g.dtau() * g.dtheta();
}

double l2_norm(const CylinderGrid& g, const NodeField& f, bool interiorOnly)
{
    require_same(g, f);
    double s = 0.0;
    for (int i = interiorOnly ? 1 : 0; i <= (interiorOnly ? g.nTau - 1 : g.nTau); ++i)
        for (int k = 0; k < g.nTheta(); ++k)
            s += node_weight(g, i) * f[g.index(i, k)].squaredNorm();
    return std::sqrt(s);
}

double sup_norm(const CylinderGrid& g, const NodeField& f, bool interiorOnly)
{
    require_same(g, f);
    double s = 0.0;
    for (int i = interiorOnly ? 1 : 0; i <= (interiorOnly ? g.nTau - 1 : g.nTau); ++i)
        for (int k = 0; k < g.nTheta(); ++k)
            s = std::max(s, f[g.index(i, k)].norm());
    return s;
}

double l2_dot(const CylinderGrid& g, const NodeField& a, const NodeField& b)
{
    require_same(g, a);
    require_same(g, b);
    double s = 0.0;
    for (int i = 0; i <= g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k)
            s += node_weight(g, i) * rdot(a[g.index(i, k)], b[g.index(i, k)]);
    return s;
}

HitchinResidual hitchin_residual(const HiggsPairField& p)
{
    HitchinResidual r;
    r.res1Field = first_residual_field(p);
    r.res2Field = p.dbarPhi;
    r.res1Sup = sup_norm(p.grid, r.res1Field, true);
    r.res1L2 = l2_norm(p.grid, r.res1Field, true);
    r.res2Sup = sup_norm(p.grid, r.res2Field, true);
    r.res2L2 = l2_norm(p.grid, r.res2Field, true);
    return r;
}

HiggsPairField apply_gauge(const NodeField& g, const HiggsPairField& p)
{
    require_same(p.grid, g);
    const size_t n = g.size();
    NodeField ct = dtau(p.grid, g), cth = dtheta(p.grid, g);
    HiggsPairField out = p;
    for (size_t m = 0; m < n; ++m) {
        const Mat4 gi = g[m].inverse();
        ct[m] += comm(p.aTau[m], g[m]);
        cth[m] += comm(p.aTheta[m], g[m]);
        const Mat4 X = 0.5 * gi * (ct[m] + kI * cth[m]);
        const Mat4 Xt = -kI * X;
        out.aTau[m] = p.aTau[m] + X - X.adjoint();
        out.aTheta[m] = p.aTheta[m] + Xt - Xt.adjoint();
        out.phi[m] = gi * p.phi[m] * g[m];
        out.metric[m] = gi * p.metric[m] * gi.adjoint();
        out.dbarPhi[m] = gi * p.dbarPhi[m] * g[m];
    }
    return out;
}

NodeField exp_field(const NodeField& gamma)
{
    NodeField g(gamma.size());
    for (size_t m = 0; m < gamma.size(); ++m) {
        if (gamma[m].isZero(0.0))
            g[m] = Mat4::Identity();
        else
            g[m] = gamma[m].exp();
    }
    return g;
}

ComplexGaugeData complex_gauge_data(const GaugeField& gamma, const HiggsPairField& p)
{
    if (!same_grid(gamma.grid, p.grid))
        throw DimensionError("complex gauge: grid mismatch");
    require_same(p.grid, gamma.gamma);
    const NodeField dt = dtau(p.grid, gamma.gamma), dth = dtheta(p.grid, gamma.gamma);
    const size_t n = gamma.gamma.size();
    ComplexGaugeData d{NodeField(n), NodeField(n), NodeField(n), NodeField(n)};
    Eigen::Matrix<cplx, 12, 12> big;
    for (size_t m = 0; m < n; ++m) {
        const Mat4& x = gamma.gamma[m];
        Mat4 wt = dt[m], wth = dth[m];
        if (x.isZero(0.0)) {
            d.g[m] = d.gInv[m] = Mat4::Identity();
        } else {
            // exp of [[x, Dt, Dth], [0, x, 0], [0, 0, x]]: the top row holds exp(x)
            // and the derivatives of exp at x along the two directions
            big.setZero();
            for (int b = 0; b < 3; ++b)
                big.block<4, 4>(4 * b, 4 * b) = x;
            big.block<4, 4>(0, 4) = dt[m];
            big.block<4, 4>(0, 8) = dth[m];
            const Eigen::Matrix<cplx, 12, 12> e = big.exp();
            d.g[m] = e.block<4, 4>(0, 0);
            d.gInv[m] = (-x).exp();
            wt = d.gInv[m] * e.block<4, 4>(0, 4);
            wth = d.gInv[m] * e.block<4, 4>(0, 8);
        }
        wt += d.gInv[m] * p.aTau[m] * d.g[m] - p.aTau[m];
        wth += d.gInv[m] * p.aTheta[m] * d.g[m] - p.aTheta[m];
        const Mat4 X = 0.5 * (wt + kI * wth);
        const Mat4 Xt = -kI * X;
        d.omegaTau[m] = X - X.adjoint();
        d.omegaTheta[m] = Xt - Xt.adjoint();
    }
    return d;
}

HiggsPairField apply_complex_gauge(const GaugeField& gamma, const HiggsPairField& p)
{
    const ComplexGaugeData d = complex_gauge_data(gamma, p);
    HiggsPairField out = p;
    for (size_t m = 0; m < d.g.size(); ++m) {
        const Mat4& g = d.g[m];
        const Mat4& gi = d.gInv[m];
        out.aTau[m] = p.aTau[m] + d.omegaTau[m];
        out.aTheta[m] = p.aTheta[m] + d.omegaTheta[m];
        out.phi[m] = gi * p.phi[m] * g;
        out.metric[m] = gi * p.metric[m] * gi.adjoint();
        out.dbarPhi[m] = gi * p.dbarPhi[m] * g;
    }
    return out;
}

double field_scale(const HiggsPairField& p)
{
    double s = 0.0;
    for (const auto& x : p.phi)
        s = std::max(s, x.norm());
    return s;
}

double max_diff(const NodeField& a, const NodeField& b)
{
    if (a.size() != b.size())
        throw DimensionError("max_diff: size mismatch");
    double s = 0.0;
    for (size_t m = 0; m < a.size(); ++m)
        s = std::max(s, (a[m] - b[m]).cwiseAbs().maxCoeff());
    return s;
}

double max_pair_diff(const HiggsPairField& a, const HiggsPairField& b)
{
    return std::max({max_diff(a.aTau, b.aTau), max_diff(a.aTheta, b.aTheta), max_diff(a.phi, b.phi)});
}

Eigen::Vector2cd char_poly_invariants(const Mat4& phi)
{
    const Mat4 p2 = phi * phi;
    return Eigen::Vector2cd(p2.trace(), (p2 * p2).trace());
}

} // namespace hglue
