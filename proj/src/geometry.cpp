#include "hglue/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hglue/errors.hpp"

namespace hglue {

double CylinderGrid::dtheta() const { return 2.0 * std::numbers::pi / nTheta(); }
double CylinderGrid::theta(int k) const { return dtheta() * k; }

CylinderGrid make_grid(double rNeck, int nTau, int nModes)
{
    if (!(rNeck > 0.0 && rNeck < 1.0))
        throw InvalidInput("grid: rNeck must lie in (0,1)");
    if (nTau < 8 || nTau % 2 != 0)
        throw InvalidInput("grid: nTau must be even and >= 8");
    if (nModes < 1)
        throw InvalidInput("grid: nModes must be >= 1");
    return {-std::log(rNeck), nTau, nModes, rNeck};
}

CylinderGrid make_grid_spacing(double rNeck, double dtauTarget, int nModes)
{
    if (!(rNeck > 0.0 && rNeck < 1.0))
        throw InvalidInput("grid: rNeck must lie in (0,1)");
    const double T = -std::log(rNeck);
    int n = static_cast<int>(std::lround(2.0 * T / dtauTarget));
    n += n % 2;
    return make_grid(rNeck, std::max(n, 8), nModes);
}

bool same_grid(const CylinderGrid& a, const CylinderGrid& b)
{
    return a.nTau == b.nTau && a.nModes == b.nModes && std::abs(a.tMax - b.tMax) <= 1e-12;
}

static bool rel_eq(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

PlumbingData make_plumbing(cplx lambda, double r1, double R1, double r2, double R2)
{
    if (!(r1 > 0 && R1 > r1 && r2 > 0 && R2 > r2))
        throw InvalidInput("plumbing: radii must satisfy 0 < r < R");
    if (!rel_eq(R1 / r1, R2 / r2))
        throw InvalidInput("plumbing: R1/r1 != R2/r2");
    if (!rel_eq(std::abs(lambda), r2 * R1) || !rel_eq(std::abs(lambda), r1 * R2))
        throw InvalidInput("plumbing: |lambda| != r2 R1 = r1 R2");
    return {lambda, r1, R1, r2, R2};
}

PlumbingData default_plumbing(double R)
{
    if (!(R > 0.0 && R < 1.0))
        throw InvalidInput("plumbing: R must lie in (0,1)");
    const double r = 0.75 * R;
    return make_plumbing(cplx(r * R, 0.0), r, R, r, R);
}

cplx plumbing_map(const PlumbingData& p, cplx z)
{
    const double a = std::abs(z);
    if (a == 0.0)
        throw DomainError("plumbing_map: z = 0");
    const double slack = 1e-12 * p.R1;
    if (a < p.r1 - slack || a > p.R1 + slack)
        throw DomainError("plumbing_map: z outside the annulus r1 <= |z| <= R1");
    return p.lambda / z;
}

bool log_form_relation_check(const PlumbingData& p, const std::vector<cplx>& samples,
                             const std::function<cplx(cplx)>& map)
{
    const auto f = map ? map : [&p](cplx z) { return p.lambda / z; };
    for (const cplx z : samples) {
        const double h = 1e-5 * std::abs(z);
        // holomorphic derivative by central differences along the real axis
        const cplx dw = (f(z + h) - f(z - h)) / (2.0 * h);
        const cplx pull = dw / f(z);  // (dw/w) / dz
        if (std::abs(pull * z + 1.0) > 1e-8)
            return false;
    }
    return true;
}

double smoothstep5(double u)
{
    if (u <= 0.0)
        return 0.0;
    if (u >= 1.0)
        return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double mixing_width() { return std::log(4.0 / 3.0); }

static void require_R(double R)
{
    if (!(R > 0.0 && R < 1.0))
        throw InvalidInput("cutoff: R must lie in (0,1)");
}

double cutoff_chi(double R, double r)
{
    require_R(R);
    if (r <= 0.0)
        return 1.0;
    const double u = (std::log(r) - std::log(0.75 * R)) / mixing_width();
    return 1.0 - smoothstep5(u);
}

double cutoff_growth(double R)
{
    require_R(R);
    // sup of |d chi/dt| + |d^2 chi/dt^2| in t = log r, by central differences
    const double w = mixing_width();
    const double t0 = std::log(0.75 * R) - 0.25 * w, t1 = std::log(R) + 0.25 * w;
    const int n = 6000;
    const double h = (t1 - t0) / n;
    double sup = 0.0;
    for (int i = 1; i < n; ++i) {
        const double t = t0 + h * i;
        const double cm = cutoff_chi(R, std::exp(t - h)), c0 = cutoff_chi(R, std::exp(t)),
                     cp = cutoff_chi(R, std::exp(t + h));
        sup = std::max(sup, std::abs((cp - cm) / (2 * h)) + std::abs((cp - 2 * c0 + cm) / (h * h)));
    }
    return sup;
}

CutoffProfile make_cutoff_profile(double R) { return {R, cutoff_growth(R)}; }

cplx CylinderCoords::to_left(double tau, double theta) const { return R * std::exp(cplx(-(tau + T), -theta)); }
cplx CylinderCoords::to_right(double tau, double theta) const { return R * std::exp(cplx(tau - T, theta)); }

static double wrap(double theta)
{
    const double tp = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, tp);
    return t < 0 ? t + tp : t;
}

std::pair<double, double> CylinderCoords::from_left(cplx z) const
{
    return {-std::log(std::abs(z) / R) - T, wrap(-std::arg(z))};
}

std::pair<double, double> CylinderCoords::from_right(cplx w) const
{
    return {std::log(std::abs(w) / R) + T, wrap(std::arg(w))};
}

double CylinderCoords::left_radius(double tau) const { return R * std::exp(-(tau + T)); }
double CylinderCoords::right_radius(double tau) const { return R * std::exp(tau - T); }

CylinderCoords coordinate_maps(const CylinderGrid& g) { return {g.rNeck, g.tMax}; }

} // namespace hglue
