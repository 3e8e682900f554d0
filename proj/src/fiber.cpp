#include "amoeba/fiber.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace amoeba {

namespace {

void check_shapes(std::span<const MultiPoly> polys, const ThetaPoint& theta) {
    if (polys.empty()) throw ArgumentError("count_fiber: no polynomials");
    const std::size_t m = 2 * polys.size();
    for (const auto& f : polys) {
        if (f.nvars() != m) {
            throw ArgumentError("count_fiber: each polynomial needs " + std::to_string(m) + " variables");
        }
        if (f.degree() < 1) throw ArgumentError("count_fiber: polynomials must be non-constant");
    }
    if (theta.size() != m) throw ArgumentError("count_fiber: theta needs " + std::to_string(m) + " angles");
}

SolveSummary summarize(const SolveReport& r) {
    return {r.paths_tracked, r.paths_failed, r.paths_diverged, r.dedupe_merges};
}

/// Shared tail: solve, classify, and fill the count.
void solve_and_count(const HomogeneousTarget& target, const SeedContext& seed, const FiberOptions& options,
                     FiberCount& out) {
    SolverOptions so = options.solver;
    so.throw_on_unreliable = false;
    const SolveReport report = solve_target(target, seed, so);
    out.solve = summarize(report);
    if (report.failed_fraction() > so.max_failed_fraction) {
        out.discarded = true;
        out.reason = "unreliable solve";
        return;
    }
    try {
        const RealSolutions real = real_solutions(report, options.real_tol, options.exclude_zero_tol);
        out.count = static_cast<int>(real.points.size());
        out.excluded_near_zero = real.excluded_near_zero;
    } catch (const AmbiguousClassificationError&) {
        out.discarded = true;
        out.reason = "ambiguous classification";
    }
}

/// Re and Im parts of f(r o e^{i theta}) evaluated without touching coefficients:
/// Re = (F(w) + conj F(u)) / 2, Im = (F(w) - conj F(u)) / 2i with w = r o e^{i theta}
/// and u = conj(r) o e^{i theta}, F the homogenization of f.
class DirectFiberTarget : public HomogeneousTarget {
public:
    DirectFiberTarget(std::span<const MultiPoly> polys, const ThetaPoint& theta) : n_(2 * polys.size()) {
        phases_.push_back(1.0);
        for (double a : theta.angles()) phases_.push_back(std::polar(1.0, a));
        for (const auto& f : polys) {
            homogenized_.emplace_back(homogenize(f, 0, f.degree()));
            degrees_.push_back(f.degree());
            degrees_.push_back(f.degree());
        }
    }

    std::size_t nvars() const override { return n_; }
    const std::vector<int>& degrees() const override { return degrees_; }

    void evaluate(const HVec& x, HVec& values, HMat& jac, double* scales) const override {
        const auto m = static_cast<Eigen::Index>(n_);
        values.resize(m);
        jac.resize(m, m + 1);
        std::array<cplx, kMaxUnknowns + 1> w;
        std::array<cplx, kMaxUnknowns + 1> u;
        for (Eigen::Index j = 0; j <= m; ++j) {
            w[static_cast<std::size_t>(j)] = x[j] * phases_[static_cast<std::size_t>(j)];
            u[static_cast<std::size_t>(j)] = std::conj(x[j]) * phases_[static_cast<std::size_t>(j)];
        }
        std::array<cplx, kMaxUnknowns + 1> gw;
        std::array<cplx, kMaxUnknowns + 1> gu;
        const cplx half_i_inv(0.0, -0.5);  // 1 / (2i)
        for (std::size_t k = 0; k < homogenized_.size(); ++k) {
            double scale = 0.0;
            const cplx fw = homogenized_[k].evaluate(w.data(), gw.data(), scales ? &scale : nullptr);
            const cplx fu = std::conj(homogenized_[k].evaluate(u.data(), gu.data(), nullptr));
            const auto re_row = static_cast<Eigen::Index>(2 * k);
            const auto im_row = re_row + 1;
            values[re_row] = 0.5 * (fw + fu);
            values[im_row] = half_i_inv * (fw - fu);
            for (Eigen::Index j = 0; j <= m; ++j) {
                const cplx a = phases_[static_cast<std::size_t>(j)] * gw[static_cast<std::size_t>(j)];
                const cplx b = std::conj(phases_[static_cast<std::size_t>(j)] * gu[static_cast<std::size_t>(j)]);
                jac(re_row, j) = 0.5 * (a + b);
                jac(im_row, j) = half_i_inv * (a - b);
            }
            if (scales) {
                scales[2 * k] = scale;
                scales[2 * k + 1] = scale;
            }
        }
    }

private:
    std::size_t n_;
    std::vector<cplx> phases_;
    std::vector<CompiledPoly> homogenized_;
    std::vector<int> degrees_;
};

}  // namespace

FiberCount count_fiber(std::span<const MultiPoly> polys, const ThetaPoint& theta, const SeedContext& seed,
                       const FiberOptions& options) {
    check_shapes(polys, theta);
    FiberCount out;
    out.theta = theta;
    std::vector<MultiPoly> equations;
    for (const auto& f : polys) {
        auto [re, im] = re_im_split(rotate_arguments(f, theta));
        const double a = re.max_abs_coefficient();
        const double b = im.max_abs_coefficient();
        if (std::min(a, b) <= options.degenerate_ratio * std::max(a, b) || re.degree() < 1 || im.degree() < 1) {
            out.discarded = true;
            out.reason = "critical theta";
            return out;
        }
        equations.push_back(std::move(re));
        equations.push_back(std::move(im));
    }
    const SystemTarget target{PolySystem(std::move(equations))};
    solve_and_count(target, seed, options, out);
    return out;
}

FiberCount count_fiber_direct(std::span<const MultiPoly> polys, const ThetaPoint& theta, const SeedContext& seed,
                              const FiberOptions& options) {
    check_shapes(polys, theta);
    FiberCount out;
    out.theta = theta;
    const DirectFiberTarget target(polys, theta);

    // Degeneracy probe: compare |Re| and |Im| at a few fixed real points.
    CounterRng probe(seed.with_label(seed.stream_label + "/probe"));
    const auto m = static_cast<Eigen::Index>(target.nvars());
    std::vector<double> re_max(polys.size(), 0.0);
    std::vector<double> im_max(polys.size(), 0.0);
    HVec values;
    HMat jac;
    for (int s = 0; s < 4; ++s) {
        HVec x(m + 1);
        x[0] = 1.0;
        for (Eigen::Index j = 1; j <= m; ++j) x[j] = probe.standard_normal();
        target.evaluate(x, values, jac, nullptr);
        for (std::size_t k = 0; k < polys.size(); ++k) {
            re_max[k] = std::max(re_max[k], std::abs(values[static_cast<Eigen::Index>(2 * k)]));
            im_max[k] = std::max(im_max[k], std::abs(values[static_cast<Eigen::Index>(2 * k + 1)]));
        }
    }
    for (std::size_t k = 0; k < polys.size(); ++k) {
        if (std::min(re_max[k], im_max[k]) <= options.degenerate_ratio * std::max(re_max[k], im_max[k])) {
            out.discarded = true;
            out.reason = "critical theta";
            return out;
        }
    }
    solve_and_count(target, seed, options, out);
    return out;
}

}  // namespace amoeba
