#pragma once

#include "amoeba/amoebaviz.hpp"
#include "amoeba/estimate.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/sampler.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amoeba {

enum class ThetaMode { uniform, fixed };

struct ExperimentConfig {
    /// Half-dimension: n polynomials in 2n variables.
    int n = 1;
    std::vector<int> degrees{1};
    ThetaMode theta_mode = ThetaMode::uniform;
    std::vector<double> theta;
    int n_trials = 1000;
    std::uint64_t master_seed = 0;
    int workers = 1;
    FiberOptions fiber{};
    double max_discard_rate = 0.02;
    /// Prefix for every stream label, so two runs on one seed stay independent.
    std::string stream_prefix;

    /// Throws ArgumentError on an inconsistent config.
    void validate() const;
};

/// One Monte Carlo trial; `value` is the quantity averaged (fiber count or real zero count).
struct TrialRecord {
    int trial = 0;
    std::vector<double> theta;
    int count = 0;
    int excluded_near_zero = 0;
    SolveSummary solve{};
    bool discarded = false;
    std::string reason;
};

struct FiberRun {
    /// Mean fiber count; target prod d_i (or the sparse analogue when known).
    MCEstimate count;
    /// count scaled by pi^{2n}.
    MCEstimate multivolume;
    std::vector<TrialRecord> trials;
};

/// Fiber-count Monte Carlo over arbitrary ensembles in 2n variables (one spec
/// per polynomial; dense specs are sampled homogeneously and dehomogenized at X0).
FiberRun run_fiber_experiment(const std::vector<EnsembleSpec>& specs, const ExperimentConfig& config,
                              std::optional<double> count_target);

/// Complex Kostlan polynomials of degrees d_i; target pi^{2n} prod d_i.
FiberRun run_multivolume(const ExperimentConfig& config);

struct ThetaInvarianceResult {
    FiberRun first;
    FiberRun second;
    double z = 0.0;
};

/// Two fiber-count runs on independent streams; each theta is fixed, or uniform when empty.
ThetaInvarianceResult run_theta_invariance(const ExperimentConfig& config, const std::vector<double>& theta_a,
                                           const std::vector<double>& theta_b);

struct ShubSmaleRun {
    MCEstimate estimate;
    std::vector<TrialRecord> trials;
};

/// Real Kostlan polynomials in k variables; counts common real zeros with no
/// zero coordinate. Target sqrt(prod d_i).
ShubSmaleRun run_shub_smale(int k, const std::vector<int>& degrees, int n_trials, std::uint64_t master_seed,
                            int workers = 1, const FiberOptions& options = {});

struct ToricScalingResult {
    FiberRun base;
    FiberRun dilated;
    int dilation = 1;
    double ratio = 0.0;
    double ratio_se = 0.0;
    bool within(double k = 4.0) const;
};

/// Every polynomial uses `support` (in 2n variables) with `variances`; the
/// second run dilates the support by d through convolution.
ToricScalingResult run_toric_scaling(const std::vector<ExponentVector>& support, const std::vector<double>& variances,
                                     int dilation, const ExperimentConfig& config);

struct BoundsReport {
    FiberRun multivolume;
    double alpha = 0.0;
    double mikhalkin_bound = 0.0;
    bool multivolume_ok = false;
    /// Present for n = 1.
    std::optional<MCEstimate> raster_area;
    double lebesgue_bound = 0.0;
    bool area_vs_lebesgue_ok = true;
    bool area_vs_multivolume_ok = true;
    bool pass() const { return multivolume_ok && area_vs_lebesgue_ok && area_vs_multivolume_ok; }
};

/// Multivolume estimate vs pi^{2n} alpha, and for n = 1 the mean raster area
/// vs pi^2 d / 2 and vs half the multivolume estimate. All with 4-SE slack.
BoundsReport check_bounds(const ExperimentConfig& config, int n_curves, const RasterParams& raster);

struct JacobianCheckReport {
    int points = 0;
    double max_rel_err_analytic = 0.0;
    double max_rel_err_fd = 0.0;
};

/// Curves of degrees 1..4 in turn, `points_per_curve` smooth points each.
JacobianCheckReport run_jacobian_check(int n_curves, int points_per_curve, std::uint64_t master_seed,
                                       int workers = 1);

}  // namespace amoeba
