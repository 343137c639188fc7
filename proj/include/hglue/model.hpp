#pragma once

#include <functional>
#include <vector>

#include "hglue/algebra.hpp"

namespace hglue {

// Geodesic-length parameter of the harmonic-map model family, in (0, 1).
struct ModelFamilyParam {
    double sNeck;
    explicit ModelFamilyParam(double s);
};

struct ModelHiggsPair {
    MatrixC connectionCoeff;  // always zero
    MatrixC higgsCoeff;       // coefficient of dz/z
    double cParam;
    int dim() const { return static_cast<int>(higgsCoeff.rows()); }
};

double b_s(const ModelFamilyParam& s, double y);
double h_1s(const ModelFamilyParam& s, double y);

struct HarmonicMapValue {
    double u;
    double v;
};
HarmonicMapValue harmonic_map_model(const ModelFamilyParam& s, double x, double y);
// the u-range [s^-1 csc^-1(s^-1), pi/(2s)] covered for y >= 1
double harmonic_map_u_min(const ModelFamilyParam& s);

ModelHiggsPair sl2_model_pair(double C);
ModelHiggsPair sp4_model_left(double C);
ModelHiggsPair sp4_model_right(double C);
ModelHiggsPair negate(const ModelHiggsPair& p);
bool models_opposite(const ModelHiggsPair& a, const ModelHiggsPair& b);

// Uniform grid y_i = y0 + i*spacing, i = 0..n.
struct YGrid {
    double y0;
    double spacing;
    int n;
    double y(int i) const { return y0 + spacing * i; }
};
// grid on [1 + kYMargin, yMax] with the given spacing
YGrid y_grid(double spacing, double yMax = 5.0);
constexpr double kYMargin = 1e-6;

// Reduced first equation for H = diag(h, 1/h), Phi = (0 q; p 0) dz with
// unnormalized Wirtinger operators (dbar d = Laplacian):
//     (log h)'' = |q|^2 h^2 - |p|^2 h^-2
// Returns the sup over interior nodes of the three-point residual.
double reduced_equation_residual(const std::function<double(double)>& h, double q, double p, const YGrid& grid);

// The residual above for h = h_{1,s}, q = s^2/4, p = 1.
double scalar_reduction_residual(const ModelFamilyParam& s, const YGrid& grid);
double model_quadratic_differential(const ModelFamilyParam& s);

} // namespace hglue
