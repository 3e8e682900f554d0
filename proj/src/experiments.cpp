#include "amoeba/experiments.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/jacobian.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/sysolve.hpp"
#include "amoeba/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace amoeba {

void ExperimentConfig::validate() const {
    if (n != 1 && n != 2) throw ArgumentError("n must be 1 or 2");
    if (degrees.size() != static_cast<std::size_t>(n)) {
        throw ArgumentError("expected " + std::to_string(n) + " degrees, got " + std::to_string(degrees.size()));
    }
    for (int d : degrees) {
        if (d < 1) throw ArgumentError("degrees must be positive");
    }
    if (n_trials < 1) throw ArgumentError("number of trials must be positive");
    if (workers < 1) throw ArgumentError("worker count must be positive");
    if (theta_mode == ThetaMode::fixed) {
        if (theta.size() != static_cast<std::size_t>(2 * n)) {
            throw ArgumentError("fixed theta needs " + std::to_string(2 * n) + " angles");
        }
        ThetaPoint check(theta);
    }
}

namespace {

double pi_power(int k) {
    return std::pow(std::numbers::pi, k);
}

std::vector<double> draw_theta(const SeedContext& seed, std::size_t m) {
    CounterRng rng(seed);
    std::vector<double> angles(m);
    for (double& a : angles) a = std::numbers::pi * rng.uniform();
    return angles;
}

MultiPoly draw_polynomial(const EnsembleSpec& spec, const SeedContext& seed) {
    MultiPoly f = sample(spec, seed);
    if (spec.kind == EnsembleKind::dense_kostlan) f = dehomogenize(f, 0);
    return f;
}

/// Values of the valid trials in trial order, plus the discard count.
std::pair<std::vector<double>, int> collect(const std::vector<TrialRecord>& trials) {
    std::vector<double> values;
    int discarded = 0;
    for (const auto& t : trials) {
        if (t.discarded) ++discarded;
        else values.push_back(t.count);
    }
    return {values, discarded};
}

}  // namespace

FiberRun run_fiber_experiment(const std::vector<EnsembleSpec>& specs, const ExperimentConfig& config,
                              std::optional<double> count_target) {
    if (config.n_trials < 1) throw ArgumentError("number of trials must be positive");
    if (specs.size() != static_cast<std::size_t>(config.n)) {
        throw ArgumentError("need one ensemble per polynomial");
    }
    const std::size_t m = 2 * specs.size();
    for (const auto& s : specs) {
        s.validate();
        const std::size_t vars = s.kind == EnsembleKind::dense_kostlan ? s.nvars_ambient - 1 : s.nvars_ambient;
        if (vars != m) throw ArgumentError("ensemble must live in " + std::to_string(m) + " variables");
    }
    if (config.theta_mode == ThetaMode::fixed && config.theta.size() != m) {
        throw ArgumentError("fixed theta needs " + std::to_string(m) + " angles");
    }
    const std::string& prefix = config.stream_prefix;

    FiberRun run;
    run.trials = run_indexed<TrialRecord>(config.n_trials, config.workers, [&](int t) {
        const SeedContext base{config.master_seed, static_cast<std::uint64_t>(t), ""};
        std::vector<MultiPoly> polys;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            polys.push_back(draw_polynomial(specs[i], base.with_label(prefix + "poly" + std::to_string(i))));
        }
        const std::vector<double> angles = config.theta_mode == ThetaMode::fixed
                                               ? config.theta
                                               : draw_theta(base.with_label(prefix + "theta"), m);
        const FiberCount fc = count_fiber(polys, ThetaPoint(angles), base.with_label(prefix + "solve"), config.fiber);
        TrialRecord r;
        r.trial = t;
        r.theta = angles;
        r.count = fc.count;
        r.excluded_near_zero = fc.excluded_near_zero;
        r.solve = fc.solve;
        r.discarded = fc.discarded;
        r.reason = fc.reason;
        return r;
    });
    const auto [values, discarded] = collect(run.trials);
    run.count = aggregate(values, discarded, count_target, config.master_seed, config.max_discard_rate);
    run.multivolume = scaled(run.count, pi_power(static_cast<int>(m)));
    return run;
}

FiberRun run_multivolume(const ExperimentConfig& config) {
    config.validate();
    std::vector<EnsembleSpec> specs;
    double prod = 1.0;
    for (int d : config.degrees) {
        specs.push_back(EnsembleSpec::dense(static_cast<std::size_t>(2 * config.n + 1), d, Field::complex));
        prod *= d;
    }
    return run_fiber_experiment(specs, config, prod);
}

ThetaInvarianceResult run_theta_invariance(const ExperimentConfig& config, const std::vector<double>& theta_a,
                                           const std::vector<double>& theta_b) {
    auto variant = [&](const std::vector<double>& theta, const char* tag) {
        ExperimentConfig c = config;
        c.theta_mode = theta.empty() ? ThetaMode::uniform : ThetaMode::fixed;
        c.theta = theta;
        c.stream_prefix = config.stream_prefix + tag;
        return run_multivolume(c);
    };
    ThetaInvarianceResult r;
    r.first = variant(theta_a, "a/");
    r.second = variant(theta_b, "b/");
    r.z = two_sample_z(r.first.count, r.second.count);
    return r;
}

ShubSmaleRun run_shub_smale(int k, const std::vector<int>& degrees, int n_trials, std::uint64_t master_seed,
                            int workers, const FiberOptions& options) {
    if (k < 1 || k > 3) throw ArgumentError("k must be 1, 2 or 3");
    if (degrees.size() != static_cast<std::size_t>(k)) throw ArgumentError("need k degrees");
    if (n_trials < 1) throw ArgumentError("number of trials must be positive");
    double prod = 1.0;
    for (int d : degrees) {
        if (d < 1) throw ArgumentError("degrees must be positive");
        prod *= d;
    }
    SolverOptions so = options.solver;
    so.throw_on_unreliable = false;

    ShubSmaleRun run;
    run.trials = run_indexed<TrialRecord>(n_trials, workers, [&](int t) {
        const SeedContext base{master_seed, static_cast<std::uint64_t>(t), ""};
        std::vector<MultiPoly> polys;
        for (int i = 0; i < k; ++i) {
            const auto spec = EnsembleSpec::dense(static_cast<std::size_t>(k + 1), degrees[static_cast<std::size_t>(i)],
                                                  Field::real);
            polys.push_back(dehomogenize(sample_dense_real(spec, base.with_label("poly" + std::to_string(i))), 0));
        }
        TrialRecord r;
        r.trial = t;
        try {
            if (k == 1) {
                r.count = sturm_count_real_roots(to_unipoly(polys[0]));
            } else {
                const SolveReport report = solve_all(PolySystem(polys), base.with_label("solve"), so);
                r.solve = {report.paths_tracked, report.paths_failed, report.paths_diverged, report.dedupe_merges};
                if (report.failed_fraction() > so.max_failed_fraction) {
                    r.discarded = true;
                    r.reason = "unreliable solve";
                    return r;
                }
                const RealSolutions real = real_solutions(report, options.real_tol, options.exclude_zero_tol);
                r.count = static_cast<int>(real.points.size());
                r.excluded_near_zero = real.excluded_near_zero;
            }
        } catch (const UnreliableCountError&) {
            r.discarded = true;
            r.reason = "unreliable count";
        } catch (const AmbiguousClassificationError&) {
            r.discarded = true;
            r.reason = "ambiguous classification";
        }
        return r;
    });
    const auto [values, discarded] = collect(run.trials);
    run.estimate = aggregate(values, discarded, std::sqrt(prod), master_seed);
    return run;
}

bool ToricScalingResult::within(double k) const {
    return std::abs(ratio - dilation) <= k * ratio_se + 1e-9 * dilation;
}

ToricScalingResult run_toric_scaling(const std::vector<ExponentVector>& support, const std::vector<double>& variances,
                                     int dilation, const ExperimentConfig& config) {
    if (dilation < 1) throw ArgumentError("dilation must be positive");
    if (config.n_trials < 1) throw ArgumentError("number of trials must be positive");
    auto variant = [&](int d, const char* tag) {
        ExperimentConfig c = config;
        c.stream_prefix = config.stream_prefix + tag;
        std::vector<EnsembleSpec> specs(static_cast<std::size_t>(config.n),
                                        EnsembleSpec::sparse(support, variances, d, Field::complex));
        return run_fiber_experiment(specs, c, std::nullopt);
    };
    ToricScalingResult r;
    r.dilation = dilation;
    r.base = variant(1, "base/");
    r.dilated = variant(dilation, "dilated/");
    const MCEstimate& a = r.base.multivolume;
    const MCEstimate& b = r.dilated.multivolume;
    if (a.mean <= 0.0) throw InvalidRunError("base ensemble has zero mean multivolume");
    r.ratio = b.mean / a.mean;
    r.ratio_se = std::abs(r.ratio) * std::hypot(a.std_error / a.mean, b.mean == 0.0 ? 0.0 : b.std_error / b.mean);
    return r;
}

BoundsReport check_bounds(const ExperimentConfig& config, int n_curves, const RasterParams& raster) {
    config.validate();
    BoundsReport r;
    r.multivolume = run_multivolume(config);
    const std::size_t m = static_cast<std::size_t>(2 * config.n);
    std::vector<LatticePolytope> deltas;
    double prod = 1.0;
    for (int d : config.degrees) {
        deltas.push_back(standard_simplex(m, d));
        prod *= d;
    }
    r.alpha = mikhalkin_alpha(deltas).alpha;
    const double pim = pi_power(static_cast<int>(m));
    r.mikhalkin_bound = pim * r.alpha;
    const MCEstimate& mv = r.multivolume.multivolume;
    r.multivolume_ok = mv.mean <= r.mikhalkin_bound + 4.0 * mv.std_error + 1e-9 * r.mikhalkin_bound;
    r.lebesgue_bound = pim * prod / 2.0;
    if (config.n == 1) {
        const MCEstimate area = mean_amoeba_area(config.degrees[0], n_curves, raster, config.master_seed,
                                                 config.workers);
        r.raster_area = area;
        r.area_vs_lebesgue_ok = area.mean <= r.lebesgue_bound + 4.0 * area.std_error;
        r.area_vs_multivolume_ok =
            area.mean <= mv.mean / 2.0 + 4.0 * std::hypot(area.std_error, mv.std_error / 2.0);
    }
    return r;
}

JacobianCheckReport run_jacobian_check(int n_curves, int points_per_curve, std::uint64_t master_seed, int workers) {
    if (n_curves < 1 || points_per_curve < 1) throw ArgumentError("need at least one curve and one point");
    struct CurveResult {
        int points = 0;
        double analytic = 0.0;
        double fd = 0.0;
    };
    const auto per_curve = run_indexed<CurveResult>(n_curves, workers, [&](int c) {
        const int d = 1 + c % 4;
        const SeedContext seed{master_seed, static_cast<std::uint64_t>(c), "curve"};
        const MultiPoly f = dehomogenize(sample_dense_complex(EnsembleSpec::dense(3, d, Field::complex), seed), 0);
        CurveResult out;
        for (const CurvePoint& p : sample_curve_points(f, points_per_curve, seed.with_label("points"))) {
            const JacobianDeterminants a = jacobian_determinants(p);
            const JacobianDeterminants fd = finite_difference_determinants(f, p);
            const double denom = std::max(std::abs(a.det_log), 1e-12);
            out.analytic = std::max(out.analytic, std::abs(a.det_log - a.det_arg) / denom);
            out.fd = std::max({out.fd, std::abs(fd.det_log - a.det_log) / denom, std::abs(fd.det_arg - a.det_log) / denom});
            ++out.points;
        }
        return out;
    });
    JacobianCheckReport r;
    for (const auto& c : per_curve) {
        r.points += c.points;
        r.max_rel_err_analytic = std::max(r.max_rel_err_analytic, c.analytic);
        r.max_rel_err_fd = std::max(r.max_rel_err_fd, c.fd);
    }
    return r;
}

}  // namespace amoeba
