#pragma once

#include <vector>

#include "hglue/algebra.hpp"
#include "hglue/geometry.hpp"

namespace hglue {

using NodeField = std::vector<Mat4>;  // one matrix per grid node, index grid.index(i, k)

// A unitary-frame pair on the cylinder. The connection is the 1-form
// aTau dtau + aTheta dtheta (skew-hermitian coefficients); phi is the
// coefficient of dzeta, zeta = tau + i theta.
//
// dbarPhi is the second-equation field. It is evaluated directly when a
// pair is built from coefficients and afterwards transported along complex
// gauge transformations, where it transforms by conjugation. metric is the
// frame metric (G^* G)^{-1} of the accumulated complex gauge G.
struct HiggsPairField {
    CylinderGrid grid;
    NodeField aTau, aTheta, phi;
    NodeField metric;
    NodeField dbarPhi;
};

// Builds a pair and evaluates dbarPhi from the coefficients.
HiggsPairField make_pair_field(const CylinderGrid& grid, NodeField aTau, NodeField aTheta, NodeField phi);
HiggsPairField constant_pair_field(const CylinderGrid& grid, const Mat4& phi);

struct GaugeField {
    CylinderGrid grid;
    NodeField gamma;
};
GaugeField zero_gauge(const CylinderGrid& grid);

// Discrete derivatives. tau: central differences inside, one-sided at the
// two ends (summation by parts with end weights dtau/2). theta: Fourier
// collocation on the odd point count.
NodeField dtau(const CylinderGrid& g, const NodeField& f);
NodeField dtheta(const CylinderGrid& g, const NodeField& f);
const Eigen::MatrixXd& theta_derivative_matrix(int nTheta);

// Direct evaluation of dbar_A phi = (1/2)(D_tau + i D_theta) phi + [A^{0,1}, phi],
// A^{0,1} = (aTau + i aTheta)/2.
NodeField dbar_phi_direct(const HiggsPairField& p);

// res1 = -i *(F_A - [Phi, tau(Phi)]) = -i F_{tau theta} - 2 [phi, phi^*]
NodeField first_residual_field(const HiggsPairField& p);

struct HitchinResidual {
    double res1Sup = 0, res1L2 = 0;
    double res2Sup = 0, res2L2 = 0;
    NodeField res1Field, res2Field;
};
// Norms run over the interior tau nodes; the two end rows carry Dirichlet data.
HitchinResidual hitchin_residual(const HiggsPairField& p);

// g^*(A, Phi) for pointwise invertible g:
//     A' = A + g^{-1} dbar_A g - (d_A g^*) g^{-*},  phi' = g^{-1} phi g.
// For hermitian g this is A + g^{-1} dbar_A g - (d_A g) g^{-1}; for unitary g
// it is the usual u^{-1} A u + u^{-1} du.
HiggsPairField apply_gauge(const NodeField& g, const HiggsPairField& p);
// Pieces of the complex gauge g = exp(gamma) acting on p. exp(-gamma) D_mu exp(gamma)
// is taken as the derivative of exp at gamma along the discrete D_mu gamma, so
// W_mu = exp(-gamma) D_mu exp(gamma) + exp(-gamma) A_mu exp(gamma) - A_mu stays
// in the Lie algebra generated by gamma, D gamma and A.
struct ComplexGaugeData {
    NodeField g, gInv;
    NodeField omegaTau, omegaTheta;  // connection change X - X^*, X_tau = (W_tau + i W_theta)/2
};
ComplexGaugeData complex_gauge_data(const GaugeField& gamma, const HiggsPairField& p);
// exp(gamma)^* p with the connection change above
HiggsPairField apply_complex_gauge(const GaugeField& gamma, const HiggsPairField& p);
NodeField exp_field(const NodeField& gamma);

// Weighted norms: end tau rows weigh 1/2, theta measure 2 pi / nTheta.
double node_weight(const CylinderGrid& g, int i);
double l2_norm(const CylinderGrid& g, const NodeField& f, bool interiorOnly = false);
double sup_norm(const CylinderGrid& g, const NodeField& f, bool interiorOnly = false);
double l2_dot(const CylinderGrid& g, const NodeField& a, const NodeField& b);
double field_scale(const HiggsPairField& p);  // max |phi|
double max_diff(const NodeField& a, const NodeField& b);
double max_pair_diff(const HiggsPairField& a, const HiggsPairField& b);

// coefficients of det(x - phi): (tr phi^2, tr phi^4) up to the odd ones,
// which vanish in sp(4,C)
Eigen::Vector2cd char_poly_invariants(const Mat4& phi);

} // namespace hglue
