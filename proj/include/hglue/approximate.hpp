#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hglue/field.hpp"
#include "hglue/geometry.hpp"
#include "hglue/model.hpp"

namespace hglue {

struct ApproxConfig {
    double R;
    double deltaPrime;
    double deltaDoublePrime;
    double C;
};
// validates 0 < R < 1, 0 < delta'' < delta' < 1/2, C != 0
ApproxConfig make_approx_config(double R, double deltaPrime, double deltaDoublePrime, double C);

enum class Side { left, right };

// Pairs on the cylinder store coefficients of dzeta. The left puncture
// coordinate has dz/z = -dzeta and the right one dw/w = +dzeta.
double chart_sign(Side side);
double side_radius(const CylinderGrid& grid, Side side, int i);
// model pair of one side written on the cylinder
HiggsPairField side_field_from_model(const CylinderGrid& grid, const ModelHiggsPair& model, Side side);

// Exact side data near a puncture, as an orbit point over the model:
// field = exp(-gamma)^* base, so exp(gamma) brings it back to the model.
struct SideData {
    Side side;
    HiggsPairField base;
    GaugeField gamma;
    HiggsPairField field;
};

constexpr double kFixtureAmplitude = 0.005;
constexpr std::uint64_t kDefaultSeed = 20240611;

// random unit hermitian element of i u(2), the complex gauge directions
// that keep phi in m^C
Mat4 random_gauge_direction(std::mt19937_64& rng);

// fixture standing in for decaying exact data: gamma = a r^deltaPrime P
SideData synthesize_side(const CylinderGrid& grid, const ModelHiggsPair& model, Side side, double amplitude,
                         double deltaPrime, std::mt19937_64& rng);
// gamma = 0, field = model
SideData model_side(const CylinderGrid& grid, const ModelHiggsPair& model, Side side);

// exp(chi_R gamma)^* field, evaluated as the single gauge exp((chi_R - 1) gamma)
// on the base. The end row at |z| = R carries the exact side values.
HiggsPairField build_side_approx(const SideData& exactSide, const ModelHiggsPair& model, const ApproxConfig& cfg);

// Rows where the field of a side must equal its model: tau at least `pad`
// nodes inside the plateau of that side.
bool in_model_plateau(const CylinderGrid& grid, Side side, int i, int pad);
// interior rows within `pad` nodes of a mixing zone (or inside it)
bool near_mixing_zone(const CylinderGrid& grid, int i, int pad);

// Left rows for tau < 0, right rows for tau >= 0. The two fields must agree
// on the common model plateau to 1e-10, otherwise GluingError.
HiggsPairField glue_pairs(const HiggsPairField& left, const HiggsPairField& right, const PlumbingData& p);
// (tau, theta) -> (-tau, -theta), i.e. zeta -> -zeta
HiggsPairField reflect_field(const HiggsPairField& pair);

struct GluedApprox {
    ApproxConfig cfg;
    SideData left, right;
    HiggsPairField leftApprox, rightApprox;
    HiggsPairField pair;
};
// Sweep grids keep dtau close to mixing_width() / kSweepZoneNodes.
constexpr int kSweepZoneNodes = 20;
GluedApprox glued_approximate(const ApproxConfig& cfg, int nTau, int nModes, double amplitude, std::uint64_t seed);
GluedApprox glued_approximate_spacing(const ApproxConfig& cfg, double dtauTarget, int nModes, double amplitude,
                                      std::uint64_t seed);

// sup of res1 over interior rows away from the mixing zones by `pad` nodes
double residual_outside_mixing(const HiggsPairField& pair, int pad);

struct ApproxSweepRow {
    double R, T;
    double res1Sup, res1L2, res2Sup;
    double fieldScale;
};
struct ApproxSweep {
    std::vector<ApproxSweepRow> rows;
    double fittedSlope;
};
ApproxSweep approximate_error_sweep(const std::vector<double>& Rs, double deltaPrime, double deltaDoublePrime,
                                    double C, int nModes, double amplitude, std::uint64_t seed);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace hglue
