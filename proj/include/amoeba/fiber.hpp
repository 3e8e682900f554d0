#pragma once

#include "amoeba/polycore.hpp"
#include "amoeba/rng.hpp"
#include "amoeba/sysolve.hpp"

#include <span>
#include <string>

namespace amoeba {

struct FiberOptions {
    double real_tol = 1e-8;
    double exclude_zero_tol = 1e-8;
    /// An equation counts as identically zero when its largest coefficient is
    /// below this fraction of its sibling's.
    double degenerate_ratio = 1e-12;
    SolverOptions solver{};
};

struct SolveSummary {
    int paths_tracked = 0;
    int paths_failed = 0;
    int paths_diverged = 0;
    int dedupe_merges = 0;
};

/// Number of points of V = {f_1 = ... = f_n = 0} in (C^x)^{2n} whose
/// coordinatewise arguments mod pi equal theta.
struct FiberCount {
    ThetaPoint theta{std::vector<double>{}};
    int count = 0;
    int excluded_near_zero = 0;
    SolveSummary solve{};
    bool discarded = false;
    std::string reason;
};

/// Rotates each f_i by theta, splits into real and imaginary parts, and counts
/// the real solutions of the resulting 2n x 2n real system with no zero
/// coordinate. Trial-level failures (critical theta, unreliable solve,
/// ambiguous classification) come back as a discarded FiberCount.
FiberCount count_fiber(std::span<const MultiPoly> polys, const ThetaPoint& theta, const SeedContext& seed,
                       const FiberOptions& options = {});

/// Cross-check route: evaluates the unrotated polynomials at r_j e^{i theta_j}
/// inside the solver instead of twisting coefficients.
FiberCount count_fiber_direct(std::span<const MultiPoly> polys, const ThetaPoint& theta,
                              const SeedContext& seed, const FiberOptions& options = {});

}  // namespace amoeba
