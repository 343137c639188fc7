#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hglue {

using cplx = std::complex<double>;

// [-T, T] x S^1 with nTau intervals in tau (nTau + 1 nodes) and
// 2*nModes + 1 collocation points in theta.
struct CylinderGrid {
    double tMax = 0.0;
    int nTau = 0;
    int nModes = 0;
    double rNeck = 0.0;

    int nTheta() const { return 2 * nModes + 1; }
    int nodesTau() const { return nTau + 1; }
    int size() const { return nodesTau() * nTheta(); }
    double dtau() const { return 2.0 * tMax / nTau; }
    double dtheta() const;
    double tau(int i) const { return -tMax + dtau() * i; }
    double theta(int k) const;
    int index(int i, int k) const { return i * nTheta() + k; }
};

CylinderGrid make_grid(double rNeck, int nTau, int nModes);
// grid whose tau spacing is as close as possible to dtauTarget (nTau even)
CylinderGrid make_grid_spacing(double rNeck, double dtauTarget, int nModes);
bool same_grid(const CylinderGrid& a, const CylinderGrid& b);

struct PlumbingData {
    cplx lambda;
    double r1, R1, r2, R2;
};
PlumbingData make_plumbing(cplx lambda, double r1, double R1, double r2, double R2);
// r1 = r2 = 3R/4, R1 = R2 = R, lambda = r2*R1 > 0
PlumbingData default_plumbing(double R);

cplx plumbing_map(const PlumbingData& p, cplx z);
// checks that the pullback of dw/w is -dz/z at every sample (to 1e-8);
// `map` defaults to lambda/z
bool log_form_relation_check(const PlumbingData& p, const std::vector<cplx>& samples,
                             const std::function<cplx(cplx)>& map = {});

double smoothstep5(double u);
double cutoff_chi(double R, double r);
double cutoff_growth(double R);
// width in t = log r of the mixing annulus [3R/4, R]
double mixing_width();

struct CutoffProfile {
    double R;
    double growthConstant;
};
CutoffProfile make_cutoff_profile(double R);

// Left chart z = R exp(-(zeta + T)), right chart w = R exp(zeta - T),
// zeta = tau + i theta; so dz/z = -dzeta = -dw/w and zw = R^4.
struct CylinderCoords {
    double R;
    double T;
    cplx to_left(double tau, double theta) const;
    cplx to_right(double tau, double theta) const;
    std::pair<double, double> from_left(cplx z) const;
    std::pair<double, double> from_right(cplx w) const;
    double left_radius(double tau) const;
    double right_radius(double tau) const;
};
CylinderCoords coordinate_maps(const CylinderGrid& grid);

} // namespace hglue
