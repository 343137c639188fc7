#pragma once

#include <optional>
#include <random>
#include <vector>

#include "hglue/errors.hpp"
#include "hglue/linearized.hpp"

namespace hglue {

struct SolverConfig {
    double tol = 1e-8;
    int maxIter = 20;
    double epsilonBall = 0.1;
    bool allowDamping = false;  // step halving when the basin check fails
    std::uint64_t seed = 20240611;
};
void validate(const SolverConfig& cfg);

struct RemainderTerms {
    NodeField aTau, aTheta;  // R_A
    NodeField phi;           // R_Phi
};
// R_A = exp(-g) dbar_A exp(g) - (d_A exp(g)) exp(-g) - (dbar_A - d_A) gamma,
// R_Phi = exp(-g) phi exp(g) - [phi, gamma] - phi
RemainderTerms remainder_terms(const GaugeField& gamma, const HiggsPairField& pair);
// F(gamma) - F(0) - L gamma written through the remainders; end rows zero
NodeField q_r(const GaugeField& gamma, const HiggsPairField& pair);
// F(gamma): first residual of the orbit point exp(gamma)^* pair
NodeField orbit_residual(const GaugeField& gamma, const HiggsPairField& pair);

struct TraceStep {
    int step;
    double gammaNorm, res1Sup, contractionRatio;
};
struct IterationTrace {
    std::vector<TraceStep> perStep;
};

class IterationLimitError : public ConvergenceError {
public:
    IterationLimitError(const std::string& what, IterationTrace trace)
        : ConvergenceError(what), trace_(std::move(trace)) {}
    const IterationTrace& trace() const { return trace_; }

private:
    IterationTrace trace_;
};

// Smooth gauge directions in i u(2), zero on the end rows, unit L^2 norm.
// `localized` concentrates them next to the mixing zones.
GaugeField random_smooth_gauge(const CylinderGrid& grid, std::mt19937_64& rng, bool localized);

struct LipschitzRow {
    double r;
    double maxRatio;  // max ||Q(g1) - Q(g0)|| / ||g1 - g0|| over the samples
};
struct LipschitzFit {
    std::vector<LipschitzRow> rows;
    double constant;  // max maxRatio / r
    double slope;     // log-log slope of maxRatio against r
};
LipschitzFit lipschitz_fit(const HiggsPairField& pair, const std::vector<double>& radii, int samples,
                           std::mt19937_64& rng);

struct FittedConstants {
    double lambdaMin;
    double cG;      // ||G_R|| <= cG (log R)^2
    double cQ;      // Lipschitz constant of Q_R at radius 0.1
    double sigmaR;  // |log R|^(-2-eps) / (cG cQ)
    double t0Norm;  // ||T(0)||
    double contractionBound;  // cG cQ (log R)^2 sigmaR
};

struct SolveResult {
    GaugeField gamma;
    HiggsPairField exact;
    IterationTrace trace;
    FittedConstants constants;
    bool damped = false;
    int iterations = 0;
};

// gamma -> -G_R(F(0) + Q_R(gamma))
GaugeField fixed_point_map(const GaugeField& gamma, const HiggsPairField& pair, const LinearOperator& op,
                           const NodeField& f0);

FittedConstants fit_constants(const HiggsPairField& approx, const LinearOperator& op, const SolverConfig& cfg);

// Picard iteration of the fixed-point map from `start` (zero by default).
SolveResult contraction_solve(const HiggsPairField& approx, const SolverConfig& cfg,
                              const std::optional<GaugeField>& start = std::nullopt);

} // namespace hglue
