#pragma once

#include "amoeba/polycore.hpp"
#include "amoeba/rng.hpp"

#include <Eigen/Dense>

#include <vector>

namespace amoeba {

/// Largest number of affine unknowns the solver handles.
inline constexpr int kMaxUnknowns = 7;

using HVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxUnknowns + 1, 1>;
using HMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxUnknowns + 1, kMaxUnknowns + 1>;

/// A homogeneous polynomial flattened for repeated evaluation with gradient.
class CompiledPoly {
public:
    /// `f` must be homogeneous.
    explicit CompiledPoly(const MultiPoly& f);

    std::size_t nvars() const { return nvars_; }
    int degree() const { return degree_; }

    /// Value at x, gradient into `grad` (size nvars), and optionally
    /// sum |c| |x^alpha| into `scale`.
    cplx evaluate(const cplx* x, cplx* grad, double* scale = nullptr) const;

private:
    std::size_t nvars_;
    int degree_;
    std::vector<cplx> coefs_;
    std::vector<int> exps_;  // row-major, nvars_ per term
};

/// Square system of n equations in n unknowns.
class PolySystem {
public:
    /// Throws ArgumentError if not square, if nvars differ, or if an equation
    /// is identically zero or constant.
    explicit PolySystem(std::vector<MultiPoly> equations);

    std::size_t nvars() const { return nvars_; }
    const std::vector<MultiPoly>& equations() const { return equations_; }
    std::vector<int> degrees() const;

private:
    std::vector<MultiPoly> equations_;
    std::size_t nvars_;
};

/// Target system seen through its homogenization: X[0] is the homogenizing
/// coordinate and X[1..n] the affine unknowns.
class HomogeneousTarget {
public:
    virtual ~HomogeneousTarget() = default;

    virtual std::size_t nvars() const = 0;
    virtual const std::vector<int>& degrees() const = 0;

    /// Fills values (n) and jac (n x (n+1)); fills scales (n) when non-null.
    virtual void evaluate(const HVec& x, HVec& values, HMat& jac, double* scales) const = 0;
};

/// Homogenized view of a PolySystem.
class SystemTarget : public HomogeneousTarget {
public:
    explicit SystemTarget(const PolySystem& system);

    std::size_t nvars() const override { return n_; }
    const std::vector<int>& degrees() const override { return degrees_; }
    void evaluate(const HVec& x, HVec& values, HMat& jac, double* scales) const override;

private:
    std::size_t n_;
    std::vector<int> degrees_;
    std::vector<CompiledPoly> polys_;
};

struct SolverOptions {
    double residual_tol = 1e-8;
    double dedupe_radius = 1e-6;
    double divergence_norm = 1e8;
    double max_failed_fraction = 0.05;
    double initial_step = 0.02;
    double max_step = 0.1;
    double min_step = 1e-14;
    double corrector_tol = 1e-9;
    /// Tracking stops this far short of t = 1; Newton at t = 1 finishes each path.
    double end_gap = 1e-8;
    int endgame_iterations = 100;
    bool throw_on_unreliable = true;
};

struct SolveReport {
    std::vector<std::vector<cplx>> solutions;
    std::vector<double> residuals;
    int paths_tracked = 0;
    int paths_failed = 0;
    int paths_diverged = 0;
    int dedupe_merges = 0;

    double failed_fraction() const {
        return paths_tracked == 0 ? 0.0 : static_cast<double>(paths_failed) / paths_tracked;
    }
};

/// Total-degree homotopy from {x_i^{d_i} - c_i} with the gamma trick, tracked
/// on a random affine patch of projective space. Throws UnreliableSolveError
/// when too many paths fail (unless disabled in the options).
SolveReport solve_target(const HomogeneousTarget& target, const SeedContext& seed,
                         const SolverOptions& options = {});

SolveReport solve_all(const PolySystem& system, const SeedContext& seed, const SolverOptions& options = {});

struct RealSolutions {
    std::vector<std::vector<double>> points;
    int excluded_near_zero = 0;
};

/// Real solutions (imaginary parts within real_tol relative) projected to their
/// real parts, excluding those with a coordinate within exclude_zero_tol of 0.
/// Throws AmbiguousClassificationError for a solution in the band (tol, 10 tol].
RealSolutions real_solutions(const SolveReport& report, double real_tol = 1e-8,
                             double exclude_zero_tol = 1e-8);

}  // namespace amoeba
