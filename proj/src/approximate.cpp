#include "hglue/approximate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hglue/errors.hpp"

namespace hglue {

ApproxConfig make_approx_config(double R, double deltaPrime, double deltaDoublePrime, double C)
{
    if (!(R > 0.0 && R < 1.0))
        throw InvalidInput("approx config: R must lie in (0,1)");
    if (!(deltaPrime > 0.0 && deltaPrime < 0.5))
        throw InvalidInput("approx config: delta' must lie in (0, 1/2)");
    if (!(deltaDoublePrime > 0.0 && deltaDoublePrime < deltaPrime))
        throw InvalidInput("approx config: delta'' must lie in (0, delta')");
    if (C == 0.0 || !std::isfinite(C))
        throw InvalidInput("approx config: C must be nonzero");
    return {R, deltaPrime, deltaDoublePrime, C};
}

double chart_sign(Side side) { return side == Side::left ? -1.0 : 1.0; }

double side_radius(const CylinderGrid& grid, Side side, int i)
{
    const CylinderCoords c = coordinate_maps(grid);
    return side == Side::left ? c.left_radius(grid.tau(i)) : c.right_radius(grid.tau(i));
}

HiggsPairField side_field_from_model(const CylinderGrid& grid, const ModelHiggsPair& model, Side side)
{
    if (model.dim() != 4)
        throw DimensionError("side field: model must be 4x4");
    const Mat4 phi = chart_sign(side) * Mat4(model.higgsCoeff);
    return constant_pair_field(grid, phi);
}

Mat4 random_gauge_direction(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Mat4 p = Mat4::Zero();
    for (int b : kHermitianHIndices)
        p += n(rng) * hermitian_basis()[b];
    return p / p.norm();
}

SideData synthesize_side(const CylinderGrid& grid, const ModelHiggsPair& model, Side side, double amplitude,
                         double deltaPrime, std::mt19937_64& rng)
{
    if (!(amplitude >= 0.0) || !(deltaPrime > 0.0))
        throw InvalidInput("fixture: amplitude >= 0 and delta' > 0 required");
    const Mat4 P = random_gauge_direction(rng);
    SideData s{side, side_field_from_model(grid, model, side), zero_gauge(grid), {}};
    NodeField inv(grid.size());
    for (int i = 0; i <= grid.nTau; ++i) {
        const double f = amplitude * std::pow(side_radius(grid, side, i), deltaPrime);
        for (int k = 0; k < grid.nTheta(); ++k) {
            s.gamma.gamma[grid.index(i, k)] = f * P;
            inv[grid.index(i, k)] = -f * P;
        }
    }
    s.field = apply_complex_gauge(GaugeField{grid, std::move(inv)}, s.base);
    return s;
}

SideData model_side(const CylinderGrid& grid, const ModelHiggsPair& model, Side side)
{
    HiggsPairField base = side_field_from_model(grid, model, side);
    return {side, base, zero_gauge(grid), base};
}

HiggsPairField build_side_approx(const SideData& exactSide, const ModelHiggsPair& model, const ApproxConfig& cfg)
{
    make_approx_config(cfg.R, cfg.deltaPrime, cfg.deltaDoublePrime, cfg.C);
    const CylinderGrid& g = exactSide.base.grid;
    if (std::abs(g.rNeck - cfg.R) > 1e-12 * cfg.R)
        throw InvalidInput("build_side_approx: grid neck parameter differs from config R");
    if (!same_grid(g, exactSide.gamma.grid) || !same_grid(g, exactSide.field.grid))
        throw DimensionError("build_side_approx: side data on different grids");
    const HiggsPairField m = side_field_from_model(g, model, exactSide.side);
    if (max_pair_diff(m, exactSide.base) > 1e-12)
        throw InvalidInput("build_side_approx: exact side is not an orbit point over this model");

    NodeField gauge(g.size());
    for (int i = 0; i <= g.nTau; ++i) {
        const double c = cutoff_chi(cfg.R, side_radius(g, exactSide.side, i)) - 1.0;
        for (int k = 0; k < g.nTheta(); ++k) {
            const int n = g.index(i, k);
            gauge[n] = c * exactSide.gamma.gamma[n];
        }
    }
    HiggsPairField out = apply_complex_gauge(GaugeField{g, std::move(gauge)}, exactSide.base);

    const int end = exactSide.side == Side::left ? 0 : g.nTau;
    for (int k = 0; k < g.nTheta(); ++k) {
        const int n = g.index(end, k);
        out.aTau[n] = exactSide.field.aTau[n];
        out.aTheta[n] = exactSide.field.aTheta[n];
        out.phi[n] = exactSide.field.phi[n];
        out.metric[n] = exactSide.field.metric[n];
        out.dbarPhi[n] = exactSide.field.dbarPhi[n];
    }
    return out;
}

bool in_model_plateau(const CylinderGrid& grid, Side side, int i, int pad)
{
    const double eps = 1e-9 * grid.dtau();
    const double edge = grid.tMax - mixing_width();
    const double t = grid.tau(i), reach = pad * grid.dtau();
    return side == Side::left ? t - reach >= -edge - eps : t + reach <= edge + eps;
}

bool near_mixing_zone(const CylinderGrid& grid, int i, int pad)
{
    return !(in_model_plateau(grid, Side::left, i, pad) && in_model_plateau(grid, Side::right, i, pad));
}

HiggsPairField glue_pairs(const HiggsPairField& left, const HiggsPairField& right, const PlumbingData& p)
{
    if (!same_grid(left.grid, right.grid))
        throw DimensionError("glue_pairs: grids differ");
    const double rm = std::sqrt(p.r1 * p.R1);
    std::vector<cplx> samples;
    for (int k = 0; k < 16; ++k)
        samples.push_back(std::polar(rm, 2.0 * std::numbers::pi * k / 16));
    if (!log_form_relation_check(p, samples))
        throw GluingError("glue_pairs: plumbing map does not relate dz/z and -dw/w", 0.0);

    const CylinderGrid& g = left.grid;
    double mismatch = 0.0;
    int overlap = 0;
    for (int i = 0; i <= g.nTau; ++i) {
        if (!in_model_plateau(g, Side::left, i, 1) || !in_model_plateau(g, Side::right, i, 1))
            continue;
        ++overlap;
        for (int k = 0; k < g.nTheta(); ++k) {
            const int n = g.index(i, k);
            mismatch = std::max({mismatch, (left.aTau[n] - right.aTau[n]).cwiseAbs().maxCoeff(),
                                 (left.aTheta[n] - right.aTheta[n]).cwiseAbs().maxCoeff(),
                                 (left.phi[n] - right.phi[n]).cwiseAbs().maxCoeff()});
        }
    }
    if (overlap == 0)
        throw InvalidInput("glue_pairs: the cylinder is too short for a common plateau");
    if (mismatch > 1e-10)
        throw GluingError("glue_pairs: side models are not opposite on the overlap", mismatch);

    HiggsPairField out = left;
    for (int i = g.nTau / 2; i <= g.nTau; ++i)
        for (int k = 0; k < g.nTheta(); ++k) {
            const int n = g.index(i, k);
            out.aTau[n] = right.aTau[n];
            out.aTheta[n] = right.aTheta[n];
            out.phi[n] = right.phi[n];
            out.metric[n] = right.metric[n];
            out.dbarPhi[n] = right.dbarPhi[n];
        }
    return out;
}

HiggsPairField reflect_field(const HiggsPairField& pair)
{
    const CylinderGrid& g = pair.grid;
    const int nt = g.nTheta();
    HiggsPairField out = pair;
    for (int i = 0; i <= g.nTau; ++i)
        for (int k = 0; k < nt; ++k) {
            const int src = g.index(g.nTau - i, (nt - k) % nt), dst = g.index(i, k);
            out.aTau[dst] = -pair.aTau[src];
            out.aTheta[dst] = -pair.aTheta[src];
            out.phi[dst] = -pair.phi[src];
            out.metric[dst] = pair.metric[src];
            out.dbarPhi[dst] = pair.dbarPhi[src];
        }
    return out;
}

static GluedApprox glue_on(const CylinderGrid& grid, const ApproxConfig& cfg, double amplitude,
                           std::uint64_t seed)
{
    make_approx_config(cfg.R, cfg.deltaPrime, cfg.deltaDoublePrime, cfg.C);
    std::mt19937_64 rng(seed);
    const ModelHiggsPair ml = sp4_model_left(cfg.C), mr = sp4_model_right(cfg.C);
    GluedApprox ga{cfg, synthesize_side(grid, ml, Side::left, amplitude, cfg.deltaPrime, rng),
                   synthesize_side(grid, mr, Side::right, amplitude, cfg.deltaPrime, rng), {}, {}, {}};
    ga.leftApprox = build_side_approx(ga.left, ml, cfg);
    ga.rightApprox = build_side_approx(ga.right, mr, cfg);
    ga.pair = glue_pairs(ga.leftApprox, ga.rightApprox, default_plumbing(cfg.R));
    return ga;
}

GluedApprox glued_approximate(const ApproxConfig& cfg, int nTau, int nModes, double amplitude, std::uint64_t seed)
{
    return glue_on(make_grid(cfg.R, nTau, nModes), cfg, amplitude, seed);
}

GluedApprox glued_approximate_spacing(const ApproxConfig& cfg, double dtauTarget, int nModes, double amplitude,
                                      std::uint64_t seed)
{
    return glue_on(make_grid_spacing(cfg.R, dtauTarget, nModes), cfg, amplitude, seed);
}

double residual_outside_mixing(const HiggsPairField& pair, int pad)
{
    const NodeField r = first_residual_field(pair);
    const CylinderGrid& g = pair.grid;
    double s = 0.0;
    for (int i = 1; i < g.nTau; ++i) {
        if (near_mixing_zone(g, i, pad))
            continue;
        for (int k = 0; k < g.nTheta(); ++k)
            s = std::max(s, r[g.index(i, k)].norm());
    }
    return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidInput("loglog_slope: need at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw DomainError("loglog_slope: values must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ApproxSweep approximate_error_sweep(const std::vector<double>& Rs, double deltaPrime, double deltaDoublePrime,
                                    double C, int nModes, double amplitude, std::uint64_t seed)
{
    ApproxSweep sw;
    std::vector<double> xs, ys;
    for (double R : Rs) {
        const ApproxConfig cfg = make_approx_config(R, deltaPrime, deltaDoublePrime, C);
        const GluedApprox ga =
            glued_approximate_spacing(cfg, mixing_width() / kSweepZoneNodes, nModes, amplitude, seed);
        const HitchinResidual res = hitchin_residual(ga.pair);
        sw.rows.push_back({R, ga.pair.grid.tMax, res.res1Sup, res.res1L2, res.res2Sup, field_scale(ga.pair)});
        xs.push_back(R);
        ys.push_back(res.res1Sup);
    }
    sw.fittedSlope = Rs.size() >= 2 ? loglog_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
    return sw;
}

} // namespace hglue
