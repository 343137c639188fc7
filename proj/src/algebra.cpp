#include "hglue/algebra.hpp"

#include <cmath>

#include "hglue/errors.hpp"

namespace hglue {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

const Mat4& symplectic_form()
{
    static const Mat4 J = [] {
        Mat4 j = Mat4::Zero();
        j.topRightCorner<2, 2>() = Mat2::Identity();
        j.bottomLeftCorner<2, 2>() = -Mat2::Identity();
        return j;
    }();
    return J;
}

double sp4_defect(const Mat4& x)
{
    const Mat4& J = symplectic_form();
    return (x.transpose() * J + J * x).cwiseAbs().maxCoeff();
}

bool in_sp4(const Mat4& x, double tol) { return sp4_defect(x) <= tol * std::max(1.0, x.cwiseAbs().maxCoeff()); }

double symplectic_group_defect(const Mat4& g)
{
    const Mat4& J = symplectic_form();
    return (g.transpose() * J * g - J).cwiseAbs().maxCoeff();
}

Sp4Element::Sp4Element(const Mat4& m, double tol) : m_(m)
{
    if (!in_sp4(m, tol))
        throw InvalidInput("matrix violates x^T J + J x = 0 (defect " + std::to_string(sp4_defect(m)) + ")");
}

MatrixC bracket(const MatrixC& a, const MatrixC& b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols())
        throw DimensionError("bracket: non-square operand");
    if (a.rows() != b.rows())
        throw DimensionError("bracket: dimension mismatch " + std::to_string(a.rows()) + " vs " +
                             std::to_string(b.rows()));
    return a * b - b * a;
}

Sp4Element compact_tau(const Sp4Element& x) { return Sp4Element(Mat4(-x.m().adjoint())); }

Mat4 phi_irr_group(const Mat2& g)
{
    if (std::abs(g.determinant() - 1.0) > 1e-10)
        throw InvalidInput("phi_irr_group: det(g) != 1");
    const cplx a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    Mat4 m;
    m << a * a * a, -kSqrt3 * a * a * b, -b * b * b, -kSqrt3 * a * b * b,
        -kSqrt3 * a * a * c, 2.0 * a * b * c + a * a * d, kSqrt3 * b * b * d, 2.0 * a * b * d + b * b * c,
        -c * c * c, kSqrt3 * c * c * d, d * d * d, kSqrt3 * c * d * d,
        -kSqrt3 * a * c * c, 2.0 * a * c * d + b * c * c, kSqrt3 * b * d * d, 2.0 * b * c * d + a * d * d;
    return m;
}

static void require_traceless(const Mat2& m, const char* who)
{
    if (std::abs(m.trace()) > 1e-12)
        throw InvalidInput(std::string(who) + ": input is not traceless");
}

Sp4Element phi_irr_star(const Mat2& m)
{
    require_traceless(m, "phi_irr_star");
    const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0);
    Mat4 x;
    x << 3.0 * a, -kSqrt3 * b, 0.0, 0.0,
        -kSqrt3 * c, a, 0.0, 2.0 * b,
        0.0, 0.0, -3.0 * a, kSqrt3 * c,
        0.0, 2.0 * c, kSqrt3 * b, -a;
    return Sp4Element(x);
}

Sp4Element psi_star(const Mat2& l, const Mat2& r)
{
    require_traceless(l, "psi_star");
    require_traceless(r, "psi_star");
    const cplx a = l(0, 0), b = l(0, 1), c = l(1, 0);
    const cplx e = r(0, 0), f = r(0, 1), g = r(1, 0);
    Mat4 x;
    x << a, 0.0, b, 0.0,
        0.0, e, 0.0, f,
        c, 0.0, -a, 0.0,
        0.0, g, 0.0, -e;
    return Sp4Element(x);
}

CartanSplit cartan_split(const Sp4Element& x)
{
    const Mat4& m = x.m();
    CartanSplit s;
    s.hPart = 0.5 * (m - m.transpose());
    s.mPart = m - s.hPart;
    return s;
}

bool in_h_pattern(const Mat4& x, double tol)
{
    const Mat2 A = x.topLeftCorner<2, 2>(), B = x.topRightCorner<2, 2>();
    const Mat2 C = x.bottomLeftCorner<2, 2>(), D = x.bottomRightCorner<2, 2>();
    return (D - A).cwiseAbs().maxCoeff() <= tol && (C + B).cwiseAbs().maxCoeff() <= tol &&
           (A + A.transpose()).cwiseAbs().maxCoeff() <= tol && (B - B.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool in_m_pattern(const Mat4& x, double tol)
{
    const Mat2 A = x.topLeftCorner<2, 2>(), B = x.topRightCorner<2, 2>();
    const Mat2 C = x.bottomLeftCorner<2, 2>(), D = x.bottomRightCorner<2, 2>();
    return (D + A).cwiseAbs().maxCoeff() <= tol && (C - B).cwiseAbs().maxCoeff() <= tol &&
           (A - A.transpose()).cwiseAbs().maxCoeff() <= tol && (B - B.transpose()).cwiseAbs().maxCoeff() <= tol;
}

const std::array<Mat4, 10>& hermitian_basis()
{
    // i * X for X = [[A, B], [-conj(B), conj(A)]] in the compact form sp(2)
    static const std::array<Mat4, 10> basis = [] {
        const cplx I(0.0, 1.0);
        auto fromAB = [&](const Mat2& A, const Mat2& B) {
            Mat4 x;
            x.topLeftCorner<2, 2>() = A;
            x.topRightCorner<2, 2>() = B;
            x.bottomLeftCorner<2, 2>() = -B.conjugate();
            x.bottomRightCorner<2, 2>() = A.conjugate();
            x *= I;
            return Mat4(x / x.norm());
        };
        Mat2 e11 = Mat2::Zero(), e22 = Mat2::Zero(), e12 = Mat2::Zero(), z = Mat2::Zero();
        e11(0, 0) = 1.0;
        e22(1, 1) = 1.0;
        e12(0, 1) = 1.0;
        const Mat2 skew = e12 - e12.transpose(), sym = e12 + e12.transpose();
        return std::array<Mat4, 10>{
            fromAB(I * e11, z), fromAB(I * e22, z), fromAB(skew, z), fromAB(I * sym, z),
            fromAB(z, e11), fromAB(z, I * e11), fromAB(z, e22), fromAB(z, I * e22),
            fromAB(z, sym), fromAB(z, I * sym)};
    }();
    return basis;
}

double hermitian_basis_weight(int b)
{
    static const double w[10] = {0, 0, 2, 2, 6, 6, 2, 2, 4, 4};
    return w[b];
}

} // namespace hglue
