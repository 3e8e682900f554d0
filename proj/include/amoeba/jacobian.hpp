#pragma once

#include "amoeba/polycore.hpp"
#include "amoeba/rng.hpp"

#include <vector>

namespace amoeba {

/// Smooth point of a plane curve f(z1, z2) = 0 in (C^x)^2, charted over z1.
struct CurvePoint {
    cplx z1;
    cplx z2;
    /// dz2/dz1 = -(df/dz1) / (df/dz2).
    cplx branch_derivative;
};

/// All valid curve points above a fixed z1 (roots of the z2-slice that pass
/// the residual, chart and nonzero-coordinate checks).
std::vector<CurvePoint> curve_points_at(const MultiPoly& f, cplx z1);

/// Random points: z1 standard complex Gaussian (|z1| >= 0.1), z2 from the
/// slice roots. Throws SamplingFailure when the rejection cap is reached.
std::vector<CurvePoint> sample_curve_points(const MultiPoly& f, int count, const SeedContext& seed);

struct JacobianDeterminants {
    double det_log;
    double det_arg;
};

/// Determinants of Log and Arg restricted to the curve, in the z1 chart.
JacobianDeterminants jacobian_determinants(const CurvePoint& p);

/// Same determinants by central differences of step h along the chart,
/// with argument differences unwrapped modulo pi.
JacobianDeterminants finite_difference_determinants(const MultiPoly& f, const CurvePoint& p, double h = 1e-6);

}  // namespace amoeba
