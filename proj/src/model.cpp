#include "hglue/model.hpp"

#include <cmath>

#include "hglue/errors.hpp"

namespace hglue {

ModelFamilyParam::ModelFamilyParam(double s) : sNeck(s)
{
    if (!(s > 0.0 && s < 1.0))
        throw InvalidInput("model family parameter s must lie in (0,1)");
}

double b_s(const ModelFamilyParam& p, double y)
{
    if (!(y >= 1.0))
        throw DomainError("b_s: y < 1");
    const double s = p.sNeck;
    return (1.0 - s) / (1.0 + s) * std::exp(2.0 * s * (1.0 - y));
}

double h_1s(const ModelFamilyParam& p, double y)
{
    const double r = std::sqrt(b_s(p, y));
    return 2.0 / p.sNeck * (1.0 - r) / (1.0 + r);
}

HarmonicMapValue harmonic_map_model(const ModelFamilyParam& p, double x, double y)
{
    const double B = b_s(p, y);
    const double arg = (1.0 - B) / (1.0 + B);
    if (arg < -1.0 || arg > 1.0)
        throw DomainError("harmonic_map_model: arcsin argument out of range");
    return {std::asin(arg) / p.sNeck, x};
}

double harmonic_map_u_min(const ModelFamilyParam& p) { return std::asin(p.sNeck) / p.sNeck; }

static void require_nonzero(double C)
{
    if (C == 0.0 || !std::isfinite(C))
        throw InvalidInput("model constant C must be a nonzero real");
}

ModelHiggsPair sl2_model_pair(double C)
{
    require_nonzero(C);
    MatrixC h = MatrixC::Zero(2, 2);
    h(0, 0) = C;
    h(1, 1) = -C;
    return {MatrixC::Zero(2, 2), h, C};
}

ModelHiggsPair sp4_model_left(double C)
{
    require_nonzero(C);
    Mat2 m = Mat2::Zero();
    m(0, 0) = C;
    m(1, 1) = -C;
    return {MatrixC::Zero(4, 4), MatrixC(phi_irr_star(m).m()), C};
}

ModelHiggsPair sp4_model_right(double C)
{
    require_nonzero(C);
    Mat2 a = Mat2::Zero(), b = Mat2::Zero();
    a(0, 0) = -3.0 * C;
    a(1, 1) = 3.0 * C;
    b(0, 0) = -C;
    b(1, 1) = C;
    return {MatrixC::Zero(4, 4), MatrixC(psi_star(a, b).m()), C};
}

ModelHiggsPair negate(const ModelHiggsPair& p) { return {-p.connectionCoeff, -p.higgsCoeff, -p.cParam}; }

bool models_opposite(const ModelHiggsPair& a, const ModelHiggsPair& b)
{
    if (a.dim() != b.dim())
        throw DimensionError("models_opposite: dimension mismatch");
    const double da = (a.higgsCoeff + b.higgsCoeff).cwiseAbs().maxCoeff();
    const double dc = (a.connectionCoeff + b.connectionCoeff).cwiseAbs().maxCoeff();
    return da <= 1e-12 && dc <= 1e-12;
}

YGrid y_grid(double spacing, double yMax)
{
    if (!(spacing > 0.0))
        throw InvalidInput("y_grid: spacing must be positive");
    const double y0 = 1.0 + kYMargin;
    const int n = static_cast<int>(std::floor((yMax - y0) / spacing));
    if (n < 2)
        throw InvalidInput("y_grid: fewer than three nodes");
    return {y0, spacing, n};
}

double reduced_equation_residual(const std::function<double(double)>& h, double q, double p, const YGrid& g)
{
    if (g.y0 < 1.0)
        throw DomainError("reduced_equation_residual: grid touches y < 1");
    if (!(g.spacing > 0.0) || g.n < 2)
        throw InvalidInput("reduced_equation_residual: degenerate grid");
    std::vector<double> l(g.n + 1), hv(g.n + 1);
    for (int i = 0; i <= g.n; ++i) {
        hv[i] = h(g.y(i));
        l[i] = std::log(hv[i]);
    }
    const double dy2 = g.spacing * g.spacing;
    double sup = 0.0;
    for (int i = 1; i < g.n; ++i) {
        const double lhs = (l[i + 1] - 2.0 * l[i] + l[i - 1]) / dy2;
        const double rhs = q * q * hv[i] * hv[i] - p * p / (hv[i] * hv[i]);
        sup = std::max(sup, std::abs(lhs - rhs));
    }
    return sup;
}

double model_quadratic_differential(const ModelFamilyParam& s) { return s.sNeck * s.sNeck / 4.0; }

double scalar_reduction_residual(const ModelFamilyParam& s, const YGrid& grid)
{
    if (grid.y0 < 1.0)
        throw DomainError("scalar_reduction_residual: grid touches y < 1");
    return reduced_equation_residual([&](double y) { return h_1s(s, y); }, model_quadratic_differential(s), 1.0,
                                     grid);
}

} // namespace hglue
