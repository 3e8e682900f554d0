#include "amoeba/errors.hpp"
#include "amoeba/estimate.hpp"
#include "amoeba/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace amoeba;

namespace {

const double kPi = std::numbers::pi;

ExperimentConfig config(int n, std::vector<int> degrees, int trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.n = n;
    c.degrees = std::move(degrees);
    c.n_trials = trials;
    c.master_seed = seed;
    return c;
}

}  // namespace

TEST_CASE("aggregate: mean, standard error and interval") {
    const MCEstimate e = aggregate({1.0, 2.0, 3.0, 4.0}, 0, 2.5, 9);
    CHECK(e.mean == doctest::Approx(2.5));
    // Sample SD of 1..4 is sqrt(5/3).
    CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
    CHECK(e.ci95.first == doctest::Approx(2.5 - 1.96 * e.std_error));
    CHECK(e.ci95.second == doctest::Approx(2.5 + 1.96 * e.std_error));
    CHECK(e.n_trials == 4);
    CHECK(e.seed == 9);
    CHECK(e.within());
}

TEST_CASE("aggregate: discard cap and empty runs") {
    std::vector<double> values(98, 1.0);
    CHECK_NOTHROW(aggregate(values, 1, std::nullopt, 0));
    CHECK_THROWS_AS(aggregate(values, 2, std::nullopt, 0), InvalidRunError);
    CHECK_THROWS_AS(aggregate({}, 0, std::nullopt, 0), InvalidRunError);
    const MCEstimate e = aggregate(values, 1, std::nullopt, 0);
    CHECK(e.discard_rate() == doctest::Approx(1.0 / 99.0));
}

TEST_CASE("two-sample z and scaling") {
    const MCEstimate a = aggregate({1.0, 1.0}, 0, 1.0, 0);
    CHECK(two_sample_z(a, a) == 0.0);
    const MCEstimate b = aggregate({1.0, 3.0, 2.0, 2.0}, 0, std::nullopt, 0);
    const MCEstimate s = scaled(b, 10.0);
    CHECK(s.mean == doctest::Approx(20.0));
    CHECK(s.std_error == doctest::Approx(10.0 * b.std_error));
    CHECK(two_sample_z(b, scaled(b, 1.0)) == 0.0);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(config(1, {1, 2}, 10, 0).validate(), ArgumentError);
    CHECK_THROWS_AS(config(1, {0}, 10, 0).validate(), ArgumentError);
    CHECK_THROWS_AS(config(1, {1}, 0, 0).validate(), ArgumentError);
    ExperimentConfig c = config(1, {1}, 10, 0);
    c.theta_mode = ThetaMode::fixed;
    c.theta = {0.1};
    CHECK_THROWS_AS(c.validate(), ArgumentError);
}

TEST_CASE("a line fiber holds exactly one point") {
    const FiberRun run = run_multivolume(config(1, {1}, 200, 3));
    CHECK(run.count.mean == 1.0);
    CHECK(run.count.std_error == 0.0);
    CHECK(run.multivolume.mean == doctest::Approx(kPi * kPi));
    CHECK(run.count.within());
}

TEST_CASE("runs are identical across worker counts") {
    ExperimentConfig c = config(1, {2}, 120, 17);
    const FiberRun a = run_multivolume(c);
    c.workers = 4;
    const FiberRun b = run_multivolume(c);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].count == b.trials[i].count);
        CHECK(a.trials[i].theta == b.trials[i].theta);
        CHECK(a.trials[i].discarded == b.trials[i].discarded);
    }
    CHECK(a.count.mean == b.count.mean);
    CHECK(a.count.std_error == b.count.std_error);
}

TEST_CASE("discard accounting") {
    const FiberRun run = run_multivolume(config(1, {2}, 300, 23));
    int discarded = 0;
    for (const auto& t : run.trials) {
        if (t.discarded) {
            ++discarded;
            CHECK_FALSE(t.reason.empty());
        }
    }
    CHECK(run.count.n_discarded == discarded);
    CHECK(run.count.n_trials + run.count.n_discarded == 300);

    ExperimentConfig starved = config(1, {2}, 20, 23);
    starved.fiber.solver.corrector_tol = 1e-30;
    CHECK_THROWS_AS(run_multivolume(starved), InvalidRunError);
}

TEST_CASE("standard error shrinks like one over root n") {
    const FiberRun small = run_multivolume(config(1, {2}, 600, 31));
    const FiberRun large = run_multivolume(config(1, {2}, 1200, 31));
    const double ratio = large.count.std_error / small.count.std_error;
    CHECK(ratio >= 0.6);
    CHECK(ratio <= 0.8);
}

TEST_CASE("degree-2 curves average two fiber points") {
    const FiberRun run = run_multivolume(config(1, {2}, 1500, 42));
    CHECK(run.count.within());
}

TEST_CASE("dilation by one leaves the sparse ensemble unchanged") {
    const std::vector<ExponentVector> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const ToricScalingResult r = run_toric_scaling(square, {1.0, 1.0, 1.0, 1.0}, 1, config(1, {1}, 600, 5));
    CHECK(std::abs(r.ratio - 1.0) <= 4.0 * r.ratio_se);
    CHECK(r.within());
}

TEST_CASE("dilated simplex support matches the dense Kostlan ensemble") {
    const std::vector<ExponentVector> simplex{{0, 0}, {1, 0}, {0, 1}};
    const EnsembleSpec sparse = EnsembleSpec::sparse(simplex, {1.0, 1.0, 1.0}, 2, Field::complex);
    const FiberRun a = run_fiber_experiment({sparse}, config(1, {2}, 1000, 8), 2.0);
    const FiberRun b = run_multivolume(config(1, {2}, 1000, 9));
    CHECK(two_sample_z(a.count, b.count) < 4.0);
    CHECK(a.count.within());
}

TEST_CASE("fixed theta runs") {
    ExperimentConfig c = config(1, {2}, 800, 12);
    const ThetaInvarianceResult r = run_theta_invariance(c, {0.7, 0.2}, {2.1, 1.3});
    for (const auto& t : r.first.trials) CHECK(t.theta == std::vector<double>{0.7, 0.2});
    CHECK(r.z < 4.0);
}

TEST_CASE("real zeros of univariate Kostlan polynomials") {
    const ShubSmaleRun r = run_shub_smale(1, {4}, 2000, 4);
    CHECK(r.estimate.target.value() == doctest::Approx(2.0));
    CHECK(r.estimate.within());
}

TEST_CASE("jacobian check on a few curves") {
    const JacobianCheckReport r = run_jacobian_check(8, 20, 1);
    CHECK(r.points == 160);
    CHECK(r.max_rel_err_analytic <= 1e-8);
    CHECK(r.max_rel_err_fd <= 1e-4);
}
