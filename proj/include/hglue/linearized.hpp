#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "hglue/field.hpp"

namespace hglue {

// Per Fourier mode j and matrix-entry channel (row, col) of sp(4,C): the
// 2x2 system [[-j/2, conj(d)], [d, j/2]] acting on (psi_1, psi_2), with
// d = phi_row - phi_col the channel weight. Its determinant is -((j/2)^2 + |d|^2).
struct ModeChannel {
    int row, col;
    cplx weight;
    Eigen::Matrix2cd system;
};
struct ModeBlock {
    int j;
    Eigen::Vector4cd phiDiag;
    std::vector<ModeChannel> blocks;
};
// phi = diag(3C, C, -3C, -C)
ModeBlock mode_block(int j, double C);
// phi = diag(p1, p2, -p1, -p2)
ModeBlock mode_block_general(int j, cplx p1, cplx p2);
// complex kernel dimension of the whole mode system, SVD rank with
// threshold 1e-10 * largest singular value
int mode_kernel_dimension(const ModeBlock& mb);
std::vector<std::pair<int, int>> kernel_dimensions(double C, int jMax);
std::vector<std::pair<int, int>> kernel_dimensions_general(cplx p1, cplx p2, int jMax);
// kernel vectors of the mode system; row 2c + m is component psi_{m+1} of channel c
Eigen::MatrixXcd mode_kernel_basis(const ModeBlock& mb);

// Covariant gradient (D_tau + ad A_tau, D_theta + ad A_theta) at every node.
struct CovariantGradient {
    NodeField tau, theta;
};
CovariantGradient covariant_gradient(const HiggsPairField& pair, const NodeField& gamma);

// L gamma = -div_A grad_A gamma + 2([phi, [phi^*, gamma]] + [phi^*, [phi, gamma]])
// on interior rows; end rows of the result are zero.
NodeField apply_L(const HiggsPairField& pair, const NodeField& gamma);
// ||d_A gamma||^2 and ||[Phi, gamma]||^2 in the weighted L^2 norm; |dzeta|^2 = 2
double dA_norm2(const HiggsPairField& pair, const NodeField& gamma);
double higgs_norm2(const HiggsPairField& pair, const NodeField& gamma);

// Gauge parameters: hermitian sp(4,C) values on interior rows, coordinates in
// hermitian_basis(), index ((i - 1) * nTheta + k) * 10 + b.
int gauge_dofs(const CylinderGrid& grid);
int dof_index(const CylinderGrid& grid, int i, int k, int b);
Eigen::VectorXd to_coords(const GaugeField& gamma);
GaugeField from_coords(const CylinderGrid& grid, const Eigen::VectorXd& x);

struct EigenEstimate {
    double lambdaMin = 0.0;
    int iterations = 0;
    bool zeroMode = false;
};

namespace detail {
struct OperatorCache;
}

class LinearOperator {
public:
    LinearOperator(CylinderGrid grid, Eigen::SparseMatrix<double> matrix);

    const CylinderGrid& grid() const { return grid_; }
    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
    // rows 0 and nTau carry Dirichlet data and are not part of the unknowns
    std::vector<int> boundaryRows() const { return {0, grid_.nTau}; }
    int size() const { return static_cast<int>(matrix_.rows()); }

    // factorization of matrix + shift I, built on first use
    Eigen::VectorXd shifted_solve(const Eigen::VectorXd& b) const;
    double shift() const;
    const EigenEstimate& eigen() const;

private:
    CylinderGrid grid_;
    Eigen::SparseMatrix<double> matrix_;
    std::shared_ptr<detail::OperatorCache> cache_;
};

LinearOperator linearize(const HiggsPairField& pair);
double hermiticity_defect(const LinearOperator& op);  // max |M - M^T| / max |M|

// block inverse iteration with Rayleigh-Ritz; flags zeroMode when the
// value is <= 1e-9; ConvergenceError after 500 iterations
EigenEstimate smallest_eigenvalue(const LinearOperator& op);
double dense_smallest_eigenvalue(const LinearOperator& op);

// preconditioned conjugate gradients to relative residual 1e-10;
// SingularOperatorError unless the operator is strictly positive
Eigen::VectorXd inverse_apply(const LinearOperator& op, const Eigen::VectorXd& rhs);
GaugeField inverse_apply(const LinearOperator& op, const GaugeField& rhs);

struct EigenSweepRow {
    double T, R;
    double lambdaMin, lambdaMinTimesT2;
};
std::vector<EigenSweepRow> eigen_sweep(const std::vector<double>& Ts, double C, int nTau, int nModes,
                                       double amplitude, std::uint64_t seed);

} // namespace hglue
