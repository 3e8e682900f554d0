// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "amoeba/amoebaviz.hpp"
#include "amoeba/errors.hpp"
#include "amoeba/estimate.hpp"
#include "amoeba/experiments.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/report.hpp"
#include "amoeba/sampler.hpp"
#include "amoeba/sysolve.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace amoeba;

namespace {

const double kPi = std::numbers::pi;

int default_workers() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Every estimate produced by a statistical criterion, for the discard audit.
std::vector<std::pair<std::string, MCEstimate>> g_estimates;

void record(const std::string& name, const MCEstimate& e) {
    g_estimates.emplace_back(name, e);
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAIL]");
    }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

ExperimentConfig config(int n, std::vector<int> degrees, int trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.n = n;
    c.degrees = std::move(degrees);
    c.n_trials = trials;
    c.master_seed = seed;
    c.workers = default_workers();
    return c;
}

bool all_counts_equal(const FiberRun& run, int value) {
    for (const auto& t : run.trials) {
        if (!t.discarded && t.count != value) return false;
    }
    return true;
}

Outcome criterion1() {
    Outcome o;
    for (int d = 1; d <= 3; ++d) {
        const FiberRun run = run_multivolume(config(1, {d}, 5000, 42));
        record("multivolume n=1 d=" + std::to_string(d), run.count);
        const auto& mv = run.multivolume;
        o.check(mv.within(), fmt("d=%g: %.4f +- %.4f", d, mv.mean, mv.std_error) +
                                 fmt(" vs %.4f", mv.target.value_or(0.0)));
        if (d == 1) o.check(all_counts_equal(run, 1), "d=1 every fiber count is 1");
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    const FiberRun lines = run_multivolume(config(2, {1, 1}, 500, 42));
    record("multivolume n=2 (1,1)", lines.count);
    o.check(all_counts_equal(lines, 1) && lines.count.std_error == 0.0,
            fmt("(1,1): count %.4f, multivolume %.4f", lines.count.mean, lines.multivolume.mean));
    const FiberRun run = run_multivolume(config(2, {2, 1}, 2000, 42));
    record("multivolume n=2 (2,1)", run.count);
    o.check(run.count.within(), fmt("(2,1): count %.4f +- %.4f vs 2", run.count.mean, run.count.std_error));
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (int d : {4, 9}) {
        const ShubSmaleRun r = run_shub_smale(1, {d}, 20000, 42, default_workers());
        record("shub-smale k=1 d=" + std::to_string(d), r.estimate);
        o.check(r.estimate.within(), fmt("k=1 d=%g: %.4f +- %.4f", d, r.estimate.mean, r.estimate.std_error) +
                                         fmt(" vs %.4f", *r.estimate.target));
    }
    const ShubSmaleRun r = run_shub_smale(2, {2, 2}, 5000, 42, default_workers());
    record("shub-smale k=2 (2,2)", r.estimate);
    o.check(r.estimate.within(), fmt("k=2 (2,2): %.4f +- %.4f vs 2", r.estimate.mean, r.estimate.std_error));
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto fixed = run_theta_invariance(config(1, {2}, 5000, 42), {0.7, 0.2}, {2.1, 1.3});
    record("theta (0.7,0.2)", fixed.first.count);
    record("theta (2.1,1.3)", fixed.second.count);
    o.check(fixed.z < 4.0, fmt("(0.7,0.2) %.4f vs (2.1,1.3) %.4f, z=%.3f", fixed.first.count.mean,
                               fixed.second.count.mean, fixed.z));
    const auto fubini = run_theta_invariance(config(1, {2}, 5000, 43), {0.0, 0.0}, {});
    record("theta 0", fubini.first.count);
    record("theta uniform", fubini.second.count);
    o.check(fubini.z < 4.0, fmt("theta=0 %.4f vs uniform %.4f, z=%.3f", fubini.first.count.mean,
                                fubini.second.count.mean, fubini.z));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const std::vector<ExponentVector> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const auto r = run_toric_scaling(square, {1.0, 1.0, 1.0, 1.0}, 2, config(1, {1}, 4000, 42));
    record("toric base", r.base.count);
    record("toric dilated", r.dilated.count);
    o.check(r.within(), fmt("square ratio %.4f +- %.4f vs 2", r.ratio, r.ratio_se));

    const std::vector<ExponentVector> simplex{{0, 0}, {1, 0}, {0, 1}};
    const EnsembleSpec sparse = EnsembleSpec::sparse(simplex, {1.0, 1.0, 1.0}, 2, Field::complex);
    ExperimentConfig sc = config(1, {2}, 4000, 44);
    sc.stream_prefix = "sparse/";
    const FiberRun a = run_fiber_experiment({sparse}, sc, 2.0);
    const FiberRun b = run_multivolume(config(1, {2}, 4000, 45));
    record("simplex d=2 sparse", a.count);
    record("simplex d=2 dense", b.count);
    const double z = two_sample_z(a.count, b.count);
    o.check(z < 4.0, fmt("simplex d=2 sparse %.4f vs dense %.4f, z=%.3f", a.count.mean, b.count.mean, z));
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto exact = [](double x, double want) { return std::abs(x - want) <= 1e-9; };
    for (int d = 1; d <= 3; ++d) {
        const LatticePolytope tri = standard_simplex(2, d);
        const double a = mikhalkin_alpha(std::vector<LatticePolytope>{tri}).alpha;
        o.check(exact(a, d * d), fmt("alpha(triangle d=%g) = %.12g", d, a));
    }
    const LatticePolytope square = LatticePolytope::hull(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const double sq = mikhalkin_alpha(std::vector<LatticePolytope>{square}).alpha;
    o.check(exact(sq, 2.0), fmt("alpha(square) = %.12g", sq));
    for (std::size_t m = 2; m <= 4; ++m) {
        const std::vector<LatticePolytope> ks(m, standard_simplex(m, 1));
        const double mv = mixed_volume(ks);
        o.check(exact(mv, 1.0), fmt("MV(%g unit simplices) = %.12g", static_cast<double>(m), mv));
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    const RasterParams raster{6.0, 600, 1200, RasterMode::center_coverage};
    for (int d = 1; d <= 2; ++d) {
        const BoundsReport b = check_bounds(config(1, {d}, 2000, 42), 50, raster);
        record("bounds multivolume d=" + std::to_string(d), b.multivolume.count);
        o.check(b.multivolume_ok, fmt("d=%g multivolume %.3f <= pi^2 alpha = %.3f", d, b.multivolume.multivolume.mean,
                                      b.mikhalkin_bound));
        o.check(b.area_vs_lebesgue_ok && b.raster_area.has_value(),
                fmt("d=%g mean area %.3f <= %.3f", d, b.raster_area ? b.raster_area->mean : -1.0, b.lebesgue_bound));
        o.check(b.area_vs_multivolume_ok, fmt("d=%g area <= multivolume / 2", d));
    }
    const MultiPoly line(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, -1.0}}, Field::real);
    const RasterGrid g = raster_amoeba(line, 6.0, 600, 1200, default_workers());
    const double target = kPi * kPi / 2.0;
    o.check(std::abs(g.area_estimate - target) <= 0.1 * target,
            fmt("line area %.4f vs %.4f", g.area_estimate, target));
    return o;
}

Outcome criterion8() {
    Outcome o;
    const JacobianCheckReport r = run_jacobian_check(20, 50, 42, default_workers());
    o.check(r.points == 1000, fmt("%g points", r.points));
    o.check(r.max_rel_err_analytic <= 1e-10, fmt("analytic %.3g", r.max_rel_err_analytic));
    o.check(r.max_rel_err_fd <= 1e-4, fmt("finite differences %.3g", r.max_rel_err_fd));
    return o;
}

std::string dump_run(const FiberRun& run) {
    Json j;
    j["count"] = to_json(run.count);
    j["trials"] = json_lines(run.trials);
    return j.dump();
}

Outcome criterion9() {
    Outcome o;
    {
        ExperimentConfig c = config(1, {3}, 400, 7);
        c.workers = 1;
        const std::string a = dump_run(run_multivolume(c));
        c.workers = 4;
        const std::string b = dump_run(run_multivolume(c));
        o.check(a == b, "multivolume identical for workers 1 and 4");
    }
    {
        const ShubSmaleRun a = run_shub_smale(2, {2, 3}, 300, 7, 1);
        const ShubSmaleRun b = run_shub_smale(2, {2, 3}, 300, 7, 4);
        o.check(to_json(a.estimate).dump() == to_json(b.estimate).dump() &&
                    json_lines(a.trials) == json_lines(b.trials),
                "shub-smale identical for workers 1 and 4");
    }
    {
        const MultiPoly f =
            dehomogenize(sample_dense_complex(EnsembleSpec::dense(3, 3, Field::complex), {7, 0, "curve"}), 0);
        const RasterGrid a = raster_amoeba(f, 6.0, 200, 400, 1);
        const RasterGrid b = raster_amoeba(f, 6.0, 200, 400, 4);
        o.check(a.occupancy == b.occupancy && raster_sidecar(a).dump() == raster_sidecar(b).dump(),
                "raster identical for workers 1 and 4");
    }

    double worst = 0.0;
    std::string worst_name = "none";
    for (const auto& [name, e] : g_estimates) {
        if (e.discard_rate() >= worst) {
            worst = e.discard_rate();
            worst_name = name;
        }
    }
    o.check(!g_estimates.empty() && worst < 0.02,
            fmt("max discard rate %.4f over %g runs", worst, static_cast<double>(g_estimates.size())) + " (" +
                worst_name + ")");

    int exact = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        // n = 2 with degrees cycling through 1..3, and n = 3 every fifth system.
        const std::size_t n = t % 5 == 4 ? 3 : 2;
        std::vector<MultiPoly> eqs;
        int bezout = 1;
        for (std::size_t i = 0; i < n; ++i) {
            const int d = 1 + static_cast<int>((t + 2 * i) % 3);
            bezout *= d;
            const SeedContext s{2024, t, "eq" + std::to_string(i)};
            eqs.push_back(dehomogenize(sample_dense_complex(EnsembleSpec::dense(n + 1, d, Field::complex), s), 0));
        }
        const SolveReport r = solve_all(PolySystem(eqs), {2024, t, "solve"});
        bool ok = r.paths_tracked == bezout && r.paths_failed == 0 && r.dedupe_merges == 0 &&
                  r.paths_diverged == 0 && static_cast<int>(r.solutions.size()) == bezout;
        for (double res : r.residuals) ok = ok && res <= 1e-8;
        exact += ok;
    }
    o.check(exact == 100, fmt("Bezout accounting exact on %g / 100 systems", exact));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
    };
    int failures = 0;
    for (const auto& [id, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            Outcome o = run();
            pass = o.pass;
            detail = o.detail.str();
        } catch (const std::exception& e) {
            detail = std::string("error: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("CRITERION %d %s (%.1fs): %s\n", id, pass ? "PASS" : "FAIL", secs, detail.c_str());
        std::fflush(stdout);
        failures += !pass;
    }
    return failures == 0 ? 0 : 1;
}
