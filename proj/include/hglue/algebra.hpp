#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace hglue {

using cplx = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;  // generic square carrier, dim 2 or 4
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// J = [[0, I2], [-I2, 0]]
const Mat4& symplectic_form();

// max-entry size of x^T J + J x
double sp4_defect(const Mat4& x);
bool in_sp4(const Mat4& x, double tol = 1e-12);
// max-entry size of g^T J g - J
double symplectic_group_defect(const Mat4& g);

// An sp(4,C) element; the Lie-algebra relation is checked on construction.
class Sp4Element {
public:
    Sp4Element() : m_(Mat4::Zero()) {}
    explicit Sp4Element(const Mat4& m, double tol = 1e-12);
    const Mat4& m() const { return m_; }
    operator const Mat4&() const { return m_; }

private:
    Mat4 m_;
};

MatrixC bracket(const MatrixC& a, const MatrixC& b);
inline Mat4 comm(const Mat4& a, const Mat4& b) { return a * b - b * a; }

Sp4Element compact_tau(const Sp4Element& x);

Mat4 phi_irr_group(const Mat2& g);
Sp4Element phi_irr_star(const Mat2& m);
Sp4Element psi_star(const Mat2& a, const Mat2& b);

struct CartanSplit {
    Mat4 hPart;  // complexified u(2): skew-symmetric elements
    Mat4 mPart;  // m^C: symmetric elements
};
CartanSplit cartan_split(const Sp4Element& x);

bool in_h_pattern(const Mat4& x, double tol = 1e-12);
bool in_m_pattern(const Mat4& x, double tol = 1e-12);

// Orthonormal (for Re tr(X Y^*)) basis of the hermitian elements of
// sp(4,C). Indices 2, 4, 6, 8 span i*u(2); the rest are hermitian m^C.
const std::array<Mat4, 10>& hermitian_basis();
constexpr std::array<int, 4> kHermitianHIndices{2, 4, 6, 8};

// |phi_k - phi_l| for the model diagonal diag(3C, C, -3C, -C) on the
// entries touched by hermitian_basis()[b], in units of |C|.
double hermitian_basis_weight(int b);

inline double frob2(const Mat4& x) { return x.squaredNorm(); }
inline double rdot(const Mat4& x, const Mat4& y) { return (x.cwiseProduct(y.conjugate())).sum().real(); }

} // namespace hglue
