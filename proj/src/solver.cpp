#include "hglue/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hglue {

namespace {
const cplx kI(0.0, 1.0);

NodeField interior_only(const CylinderGrid& g, NodeField f)
{
    for (int k = 0; k < g.nTheta(); ++k) {
        f[g.index(0, k)].setZero();
        f[g.index(g.nTau, k)].setZero();
    }
    return f;
}

NodeField sub(const NodeField& a, const NodeField& b)
{
    NodeField out(a.size());
    for (size_t n = 0; n < a.size(); ++n)
        out[n] = a[n] - b[n];
    return out;
}

void require_grid(const GaugeField& gamma, const HiggsPairField& pair)
{
    if (!same_grid(gamma.grid, pair.grid) || static_cast<int>(gamma.gamma.size()) != pair.grid.size())
        throw DimensionError("gauge and pair live on different grids");
}

struct OrbitPieces {
    NodeField omegaTau, omegaTheta;  // full connection change
    NodeField linTau, linTheta;      // (dbar_A - d_A) gamma
    NodeField phiG;                  // exp(-gamma) phi exp(gamma)
};

OrbitPieces orbit_pieces(const GaugeField& gamma, const HiggsPairField& p)
{
    const CylinderGrid& grid = p.grid;
    ComplexGaugeData d = complex_gauge_data(gamma, p);
    NodeField lt = dtau(grid, gamma.gamma), lth = dtheta(grid, gamma.gamma);
    OrbitPieces o{std::move(d.omegaTau), std::move(d.omegaTheta), NodeField(lt.size()), NodeField(lt.size()),
                  NodeField(lt.size())};
    for (size_t m = 0; m < lt.size(); ++m) {
        lt[m] += comm(p.aTau[m], gamma.gamma[m]);
        lth[m] += comm(p.aTheta[m], gamma.gamma[m]);
        o.linTau[m] = kI * lth[m];
        o.linTheta[m] = -kI * lt[m];
        o.phiG[m] = d.gInv[m] * p.phi[m] * d.g[m];
    }
    return o;
}
} // namespace

void validate(const SolverConfig& cfg)
{
    if (!(cfg.tol > 0.0))
        throw InvalidInput("solver: tol must be positive");
    if (cfg.maxIter < 1)
        throw InvalidInput("solver: maxIter must be at least 1");
    if (!(cfg.epsilonBall > 0.0))
        throw InvalidInput("solver: epsilon must be positive");
}

RemainderTerms remainder_terms(const GaugeField& gamma, const HiggsPairField& pair)
{
    require_grid(gamma, pair);
    const OrbitPieces o = orbit_pieces(gamma, pair);
    RemainderTerms r;
    r.aTau = sub(o.omegaTau, o.linTau);
    r.aTheta = sub(o.omegaTheta, o.linTheta);
    r.phi.resize(o.phiG.size());
    for (size_t m = 0; m < o.phiG.size(); ++m)
        r.phi[m] = o.phiG[m] - comm(pair.phi[m], gamma.gamma[m]) - pair.phi[m];
    return r;
}

NodeField q_r(const GaugeField& gamma, const HiggsPairField& pair)
{
    require_grid(gamma, pair);
    const CylinderGrid& g = pair.grid;
    const OrbitPieces o = orbit_pieces(gamma, pair);
    const NodeField raTau = sub(o.omegaTau, o.linTau), raTheta = sub(o.omegaTheta, o.linTheta);
    const NodeField dRt = dtau(g, raTheta), dRth = dtheta(g, raTau);
    NodeField out(g.size(), Mat4::Zero());
    for (int i = 1; i < g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k) {
            const int m = g.index(i, k);
            const Mat4& phi = pair.phi[m];
            const Mat4 phis = phi.adjoint();
            const Mat4 psi = o.phiG[m] - phi;
            const Mat4 rPhi = psi - comm(phi, gamma.gamma[m]);
            const Mat4 dA = dRt[m] - dRth[m] + comm(pair.aTau[m], raTheta[m]) - comm(pair.aTheta[m], raTau[m]);
            out[m] = -kI * dA - 2.0 * (comm(phi, rPhi.adjoint()) + comm(rPhi, phis)) -
                     kI * comm(o.omegaTau[m], o.omegaTheta[m]) - 2.0 * comm(psi, psi.adjoint());
        }
    return out;
}

NodeField orbit_residual(const GaugeField& gamma, const HiggsPairField& pair)
{
    return interior_only(pair.grid, first_residual_field(apply_complex_gauge(gamma, pair)));
}

GaugeField random_smooth_gauge(const CylinderGrid& grid, std::mt19937_64& rng, bool localized)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    const double T = grid.tMax, ell = 0.5 * mixing_width();
    GaugeField out = zero_gauge(grid);
    const auto& E = hermitian_basis();
    for (int b : kHermitianHIndices)
        for (int m = 1; m <= 3; ++m)
            for (int trig = 0; trig < 3; ++trig) {
                const double c = nd(rng), cr = nd(rng);
                for (int i = 1; i < grid.nTau; ++i) {
                    const double t = grid.tau(i);
                    double f;
                    if (localized) {
                        // bumps of width m * ell sitting on the two mixing zones
                        const double sl = (t + T) / (m * ell), sr = (T - t) / (m * ell);
                        f = c * sl * std::exp(-sl) + cr * sr * std::exp(-sr);
                    } else {
                        f = c * std::sin(m * std::numbers::pi * (t + T) / (2.0 * T));
                    }
                    for (int k = 0; k < grid.nTheta(); ++k) {
                        const double th = grid.theta(k);
                        const double w = trig == 0 ? 1.0 : (trig == 1 ? std::cos(th) : std::sin(th));
                        out.gamma[grid.index(i, k)] += (f * w) * E[b];
                    }
                }
            }
    const double n = l2_norm(grid, out.gamma);
    for (auto& x : out.gamma)
        x /= n;
    return out;
}

static GaugeField scaled(const GaugeField& g, double s)
{
    GaugeField out = g;
    for (auto& x : out.gamma)
        x *= s;
    return out;
}

LipschitzFit lipschitz_fit(const HiggsPairField& pair, const std::vector<double>& radii, int samples,
                           std::mt19937_64& rng)
{
    if (radii.empty() || samples < 1)
        throw InvalidInput("lipschitz_fit: need radii and samples");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LipschitzFit fit{{}, 0.0, std::numeric_limits<double>::quiet_NaN()};
    std::vector<double> xs, ys;
    for (double r : radii) {
        double best = 0.0;
        for (int s = 0; s < samples; ++s) {
            const bool loc = s % 2 == 1;
            const GaugeField g0 = scaled(random_smooth_gauge(pair.grid, rng, loc), r * u(rng));
            const GaugeField g1 = scaled(random_smooth_gauge(pair.grid, rng, loc), r * u(rng));
            const double dq = l2_norm(pair.grid, sub(q_r(g1, pair), q_r(g0, pair)));
            const double dg = l2_norm(pair.grid, sub(g1.gamma, g0.gamma));
            if (dg > 0.0)
                best = std::max(best, dq / dg);
        }
        fit.rows.push_back({r, best});
        fit.constant = std::max(fit.constant, best / r);
        xs.push_back(r);
        ys.push_back(best);
    }
    if (radii.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) {
            const double lx = std::log(xs[i]), ly = std::log(ys[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return fit;
}

GaugeField fixed_point_map(const GaugeField& gamma, const HiggsPairField& pair, const LinearOperator& op,
                           const NodeField& f0)
{
    NodeField rhs = q_r(gamma, pair);
    for (size_t m = 0; m < rhs.size(); ++m)
        rhs[m] = -(rhs[m] + f0[m]);
    return inverse_apply(op, GaugeField{pair.grid, std::move(rhs)});
}

FittedConstants fit_constants(const HiggsPairField& approx, const LinearOperator& op, const SolverConfig& cfg)
{
    validate(cfg);
    const double logR = std::abs(std::log(approx.grid.rNeck));
    FittedConstants c{};
    c.lambdaMin = op.eigen().lambdaMin;
    c.cG = 1.0 / (c.lambdaMin * logR * logR);
    std::mt19937_64 rng(cfg.seed);
    c.cQ = lipschitz_fit(approx, {0.1}, 16, rng).constant;
    c.sigmaR = std::pow(logR, -2.0 - cfg.epsilonBall) / (c.cG * c.cQ);
    const NodeField f0 = interior_only(approx.grid, first_residual_field(approx));
    c.t0Norm = l2_norm(approx.grid, fixed_point_map(zero_gauge(approx.grid), approx, op, f0).gamma);
    c.contractionBound = c.cG * c.cQ * logR * logR * c.sigmaR;
    return c;
}

SolveResult contraction_solve(const HiggsPairField& approx, const SolverConfig& cfg,
                              const std::optional<GaugeField>& start)
{
    validate(cfg);
    const CylinderGrid& grid = approx.grid;
    const LinearOperator op = linearize(approx);
    SolveResult out;
    out.constants = fit_constants(approx, op, cfg);
    const FittedConstants& c = out.constants;
    if (!(c.t0Norm < c.sigmaR / 10.0)) {
        if (!cfg.allowDamping)
            throw BasinError("contraction_solve: ||T(0)|| is not below sigma_R / 10", c.t0Norm / (c.sigmaR / 10.0));
        out.damped = true;
    }

    const NodeField f0 = interior_only(grid, first_residual_field(approx));
    GaugeField gamma = zero_gauge(grid);
    if (start) {
        if (!same_grid(start->grid, grid))
            throw DimensionError("contraction_solve: start gauge on a different grid");
        gamma = *start;
    }
    double res = sup_norm(grid, start ? orbit_residual(gamma, approx) : f0, true);
    out.trace.perStep.push_back({0, l2_norm(grid, gamma.gamma), res, 0.0});
    if (!start && res < cfg.tol) {
        out.gamma = gamma;
        out.exact = approx;
        return out;
    }

    double prevStep = 0.0;
    for (int n = 1; n <= cfg.maxIter; ++n) {
        GaugeField next = fixed_point_map(gamma, approx, op, f0);
        if (out.damped)
            for (size_t m = 0; m < next.gamma.size(); ++m)
                next.gamma[m] = gamma.gamma[m] + 0.5 * (next.gamma[m] - gamma.gamma[m]);
        const double step = l2_norm(grid, sub(next.gamma, gamma.gamma));
        gamma = std::move(next);
        res = sup_norm(grid, orbit_residual(gamma, approx), true);
        out.trace.perStep.push_back({n, l2_norm(grid, gamma.gamma), res, n > 1 && prevStep > 0 ? step / prevStep : 0.0});
        prevStep = step;
        if (res < cfg.tol && step < 10.0 * cfg.tol) {
            out.gamma = gamma;
            out.exact = apply_complex_gauge(gamma, approx);
            out.iterations = n;
            return out;
        }
    }
    throw IterationLimitError("contraction_solve: iteration cap reached", out.trace);
}

} // namespace hglue
