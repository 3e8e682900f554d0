#include "amoeba/sysolve.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace amoeba {

namespace {

constexpr int kMaxDegree = 32;

double inf_norm(const HVec& v) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

cplx ipow(cplx z, int k) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

bool all_finite(const HVec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    }
    return true;
}

}  // namespace

CompiledPoly::CompiledPoly(const MultiPoly& f) : nvars_(f.nvars()), degree_(std::max(f.degree(), 0)) {
    if (!f.is_homogeneous()) throw ContractViolation("CompiledPoly: polynomial must be homogeneous");
    if (nvars_ > static_cast<std::size_t>(kMaxUnknowns + 1)) throw ArgumentError("CompiledPoly: too many variables");
    if (degree_ > kMaxDegree) throw ArgumentError("CompiledPoly: degree too large");
    for (const auto& [e, c] : f.terms()) {
        coefs_.push_back(c);
        exps_.insert(exps_.end(), e.begin(), e.end());
    }
}

cplx CompiledPoly::evaluate(const cplx* x, cplx* grad, double* scale) const {
    const std::size_t n = nvars_;
    const int d = degree_;
    std::array<cplx, (kMaxUnknowns + 1) * (kMaxDegree + 1)> pw;
    for (std::size_t j = 0; j < n; ++j) {
        cplx* row = &pw[j * (kMaxDegree + 1)];
        row[0] = 1.0;
        for (int k = 1; k <= d; ++k) row[k] = row[k - 1] * x[j];
        grad[j] = 0.0;
    }
    std::array<double, (kMaxUnknowns + 1) * (kMaxDegree + 1)> apw;
    if (scale) {
        *scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double* row = &apw[j * (kMaxDegree + 1)];
            const double a = std::abs(x[j]);
            row[0] = 1.0;
            for (int k = 1; k <= d; ++k) row[k] = row[k - 1] * a;
        }
    }
    cplx value = 0.0;
    std::array<cplx, kMaxUnknowns + 2> prefix;
    std::array<cplx, kMaxUnknowns + 2> suffix;
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
        const int* e = &exps_[t * n];
        prefix[0] = 1.0;
        for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * pw[j * (kMaxDegree + 1) + e[j]];
        suffix[n] = 1.0;
        for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * pw[j * (kMaxDegree + 1) + e[j]];
        const cplx c = coefs_[t];
        value += c * prefix[n];
        for (std::size_t j = 0; j < n; ++j) {
            if (e[j] == 0) continue;
            grad[j] += c * static_cast<double>(e[j]) * pw[j * (kMaxDegree + 1) + e[j] - 1] * prefix[j] *
                       suffix[j + 1];
        }
        if (scale) {
            double m = std::abs(c);
            for (std::size_t j = 0; j < n; ++j) m *= apw[j * (kMaxDegree + 1) + e[j]];
            *scale += m;
        }
    }
    return value;
}

PolySystem::PolySystem(std::vector<MultiPoly> equations) : equations_(std::move(equations)) {
    if (equations_.empty()) throw ArgumentError("PolySystem: no equations");
    nvars_ = equations_.front().nvars();
    if (equations_.size() != nvars_) {
        throw ArgumentError("PolySystem: " + std::to_string(equations_.size()) + " equations in " +
                            std::to_string(nvars_) + " unknowns is not square");
    }
    if (nvars_ > static_cast<std::size_t>(kMaxUnknowns)) throw ArgumentError("PolySystem: too many unknowns");
    for (const auto& f : equations_) {
        if (f.nvars() != nvars_) throw ArgumentError("PolySystem: equations disagree on nvars");
        if (f.is_zero()) throw ArgumentError("PolySystem: equation is identically zero");
        if (f.degree() < 1) throw ArgumentError("PolySystem: equation is constant");
    }
}

std::vector<int> PolySystem::degrees() const {
    std::vector<int> d;
    for (const auto& f : equations_) d.push_back(f.degree());
    return d;
}

SystemTarget::SystemTarget(const PolySystem& system) : n_(system.nvars()), degrees_(system.degrees()) {
    for (const auto& f : system.equations()) polys_.emplace_back(homogenize(f, 0, f.degree()));
}

void SystemTarget::evaluate(const HVec& x, HVec& values, HMat& jac, double* scales) const {
    values.resize(static_cast<Eigen::Index>(n_));
    jac.resize(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_ + 1));
    std::array<cplx, kMaxUnknowns + 1> grad;
    for (std::size_t i = 0; i < n_; ++i) {
        values[static_cast<Eigen::Index>(i)] = polys_[i].evaluate(x.data(), grad.data(), scales ? scales + i : nullptr);
        for (std::size_t j = 0; j <= n_; ++j) jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = grad[j];
    }
}

namespace {

/// gamma (1 - t) G + t F on the patch a . X = 1, with G_i = X_i^{d_i} - c_i X_0^{d_i}.
class Homotopy {
public:
    Homotopy(const HomogeneousTarget& target, CounterRng& rng) : target_(target), n_(target.nvars()) {
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        gamma_ = std::polar(1.0, phase);
        for (std::size_t i = 0; i < n_; ++i) start_const_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()));
        patch_.resize(static_cast<Eigen::Index>(n_ + 1));
        for (std::size_t j = 0; j <= n_; ++j) patch_[static_cast<Eigen::Index>(j)] = rng.standard_complex_normal();
    }

    std::size_t n() const { return n_; }

    /// Start points: every combination of d_i-th roots of c_i, scaled onto the patch.
    std::vector<HVec> start_points() const {
        const auto& deg = target_.degrees();
        std::vector<HVec> out;
        std::vector<int> idx(n_, 0);
        while (true) {
            HVec x(static_cast<Eigen::Index>(n_ + 1));
            x[0] = 1.0;
            for (std::size_t i = 0; i < n_; ++i) {
                const double d = deg[i];
                const double arg = (std::arg(start_const_[i]) + 2.0 * std::numbers::pi * idx[i]) / d;
                x[static_cast<Eigen::Index>(i + 1)] = std::polar(1.0, arg);
            }
            x /= patch_.cwiseProduct(x).sum();
            out.push_back(x);
            std::size_t k = 0;
            while (k < n_ && ++idx[k] == deg[k]) idx[k++] = 0;
            if (k == n_) break;
        }
        return out;
    }

    /// H, dH/dX and (optionally) dH/dt at (x, t).
    void eval(const HVec& x, double t, HVec& h, HMat& jac, HVec* ht) const {
        const auto m = static_cast<Eigen::Index>(n_);
        target_.evaluate(x, f_, jf_, nullptr);
        h.resize(m + 1);
        jac.resize(m + 1, m + 1);
        if (ht) ht->resize(m + 1);
        const auto& deg = target_.degrees();
        const cplx s = (1.0 - t) * gamma_;
        for (Eigen::Index i = 0; i < m; ++i) {
            const int d = deg[static_cast<std::size_t>(i)];
            const cplx xi = x[i + 1];
            const cplx x0 = x[0];
            const cplx xi_dm1 = ipow(xi, d - 1);
            const cplx x0_dm1 = ipow(x0, d - 1);
            const cplx c = start_const_[static_cast<std::size_t>(i)];
            const cplx g = xi_dm1 * xi - c * x0_dm1 * x0;
            h[i] = s * g + t * f_[i];
            for (Eigen::Index j = 0; j <= m; ++j) jac(i, j) = t * jf_(i, j);
            jac(i, 0) += s * (-c * static_cast<double>(d) * x0_dm1);
            jac(i, i + 1) += s * (static_cast<double>(d) * xi_dm1);
            if (ht) (*ht)[i] = f_[i] - gamma_ * g;
        }
        h[m] = patch_.cwiseProduct(x).sum() - cplx(1.0);
        for (Eigen::Index j = 0; j <= m; ++j) jac(m, j) = patch_[j];
        if (ht) (*ht)[m] = 0.0;
    }

    const HVec& patch() const { return patch_; }

private:
    const HomogeneousTarget& target_;
    std::size_t n_;
    cplx gamma_;
    std::vector<cplx> start_const_;
    HVec patch_;
    mutable HVec f_;
    mutable HMat jf_;
};

enum class PathStatus { finite, diverged, failed };

struct PathEnd {
    PathStatus status = PathStatus::failed;
    std::vector<cplx> point;
    double residual = 0.0;
};

class Tracker {
public:
    Tracker(const Homotopy& hom, const HomogeneousTarget& target, const SolverOptions& opt)
        : hom_(hom), target_(target), opt_(opt) {}

    PathEnd run(HVec x) const {
        if (!track(x)) return {};
        return finish(x);
    }

private:
    bool velocity(const HVec& x, double t, HVec& v) const {
        hom_.eval(x, t, h_, j_, &ht_);
        Eigen::PartialPivLU<HMat> lu(j_);
        v = -(lu.solve(ht_));
        return all_finite(v);
    }

    bool correct(HVec& x, double t) const {
        for (int it = 0; it < 3; ++it) {
            hom_.eval(x, t, h_, j_, nullptr);
            Eigen::PartialPivLU<HMat> lu(j_);
            const HVec dx = lu.solve(h_);
            if (!all_finite(dx)) return false;
            x -= dx;
            if (inf_norm(dx) <= opt_.corrector_tol * (1.0 + inf_norm(x))) return true;
        }
        return false;
    }

    bool track(HVec& x) const {
        const double t_stop = 1.0 - opt_.end_gap;
        double t = 0.0;
        double h = opt_.initial_step;
        int streak = 0;
        HVec k1, k2, k3, k4;
        while (t < t_stop) {
            const double step = std::min(h, t_stop - t);
            HVec y = x;
            bool ok = velocity(x, t, k1) && velocity(x + 0.5 * step * k1, t + 0.5 * step, k2) &&
                      velocity(x + 0.5 * step * k2, t + 0.5 * step, k3) &&
                      velocity(x + step * k3, t + step, k4);
            if (ok) {
                y = x + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                ok = correct(y, t + step);
            }
            if (ok) {
                x = y;
                t += step;
                if (++streak >= 5) {
                    h = std::min(2.0 * h, opt_.max_step);
                    streak = 0;
                }
            } else {
                h *= 0.5;
                streak = 0;
                if (h < opt_.min_step) return false;
            }
        }
        return true;
    }

    /// Newton on the target (t = 1); linear convergence toward singular
    /// endpoints is allowed for up to endgame_iterations steps.
    PathEnd finish(HVec x) const {
        PathEnd end;
        for (int it = 0; it < opt_.endgame_iterations; ++it) {
            if (std::abs(x[0]) * opt_.divergence_norm <= inf_norm(x)) {
                end.status = PathStatus::diverged;
                return end;
            }
            hom_.eval(x, 1.0, h_, j_, nullptr);
            Eigen::PartialPivLU<HMat> lu(j_);
            const HVec dx = lu.solve(h_);
            if (!all_finite(dx)) break;
            x -= dx;
            if (inf_norm(dx) <= 1e-14 * (1.0 + inf_norm(x))) break;
        }
        if (std::abs(x[0]) * opt_.divergence_norm <= inf_norm(x)) {
            end.status = PathStatus::diverged;
            return end;
        }
        if (!all_finite(x)) return end;

        const auto n = static_cast<Eigen::Index>(target_.nvars());
        HVec y(n + 1);
        y[0] = 1.0;
        for (Eigen::Index j = 1; j <= n; ++j) y[j] = x[j] / x[0];
        double res = residual(y);
        // Affine polish; steps that do not lower the residual are rejected.
        for (int it = 0; it < 3 && res > 0.0; ++it) {
            target_.evaluate(y, f_, jf_, nullptr);
            const HMat ja = jf_.rightCols(n);
            Eigen::PartialPivLU<HMat> lu(ja);
            const HVec dx = lu.solve(f_);
            if (!all_finite(dx)) break;
            HVec cand = y;
            cand.tail(n) -= dx;
            const double r = residual(cand);
            if (!(r < res)) break;
            y = cand;
            res = r;
        }
        if (inf_norm(y) > opt_.divergence_norm) {
            end.status = PathStatus::diverged;
            return end;
        }
        if (!(res <= opt_.residual_tol)) return end;
        end.status = PathStatus::finite;
        end.residual = res;
        end.point.assign(y.data() + 1, y.data() + 1 + n);
        return end;
    }

    /// max_i |F_i(y)| / sum |c| m^{|alpha|} with m = max(1, |y|_inf): a normwise
    /// backward error that stays meaningful when coordinates vanish.
    double residual(const HVec& y) const {
        const auto n = target_.nvars();
        std::array<double, kMaxUnknowns> scales;
        HVec envelope = HVec::Constant(y.size(), std::max(1.0, inf_norm(y)));
        envelope[0] = 1.0;
        target_.evaluate(envelope, f_, jf_, scales.data());
        target_.evaluate(y, f_, jf_, nullptr);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = std::max(scales[i], 1e-300);
            r = std::max(r, std::abs(f_[static_cast<Eigen::Index>(i)]) / s);
        }
        return r;
    }

    const Homotopy& hom_;
    const HomogeneousTarget& target_;
    const SolverOptions& opt_;
    mutable HVec h_, ht_, f_;
    mutable HMat j_, jf_;
};

bool canonical_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    // Lexicographic on coordinates rounded to 1e-9, so near-equal points sort together.
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = std::round(a[i].real() * 1e9);
        const double br = std::round(b[i].real() * 1e9);
        if (ar != br) return ar < br;
        const double ai = std::round(a[i].imag() * 1e9);
        const double bi = std::round(b[i].imag() * 1e9);
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace

SolveReport solve_target(const HomogeneousTarget& target, const SeedContext& seed, const SolverOptions& options) {
    const std::size_t n = target.nvars();
    if (n == 0 || n > static_cast<std::size_t>(kMaxUnknowns)) throw ArgumentError("solve: unsupported system size");
    for (int d : target.degrees()) {
        if (d < 1) throw ArgumentError("solve: every equation needs degree >= 1");
    }
    CounterRng rng(seed);
    const Homotopy hom(target, rng);
    const Tracker tracker(hom, target, options);

    SolveReport report;
    struct Found {
        std::vector<cplx> point;
        double residual;
    };
    std::vector<Found> found;
    for (const HVec& start : hom.start_points()) {
        ++report.paths_tracked;
        PathEnd end = tracker.run(start);
        switch (end.status) {
            case PathStatus::finite: found.push_back({std::move(end.point), end.residual}); break;
            case PathStatus::diverged: ++report.paths_diverged; break;
            case PathStatus::failed: ++report.paths_failed; break;
        }
    }

    std::sort(found.begin(), found.end(),
              [](const Found& a, const Found& b) { return canonical_less(a.point, b.point); });
    for (Found& f : found) {
        bool dup = false;
        for (const auto& kept : report.solutions) {
            double dist = 0.0;
            for (std::size_t j = 0; j < n; ++j) dist = std::max(dist, std::abs(kept[j] - f.point[j]));
            if (dist <= options.dedupe_radius) {
                dup = true;
                break;
            }
        }
        if (dup) {
            ++report.dedupe_merges;
        } else {
            report.solutions.push_back(std::move(f.point));
            report.residuals.push_back(f.residual);
        }
    }

    if (options.throw_on_unreliable && report.failed_fraction() > options.max_failed_fraction) {
        throw UnreliableSolveError("homotopy: " + std::to_string(report.paths_failed) + " of " +
                                   std::to_string(report.paths_tracked) + " paths failed");
    }
    return report;
}

SolveReport solve_all(const PolySystem& system, const SeedContext& seed, const SolverOptions& options) {
    const SystemTarget target(system);
    return solve_target(target, seed, options);
}

RealSolutions real_solutions(const SolveReport& report, double real_tol, double exclude_zero_tol) {
    if (!(real_tol > 0.0) || !(exclude_zero_tol > 0.0)) throw ArgumentError("real_solutions: tolerances must be positive");
    RealSolutions out;
    for (const auto& s : report.solutions) {
        double max_im = 0.0;
        double max_re = 0.0;
        for (const cplx& z : s) {
            max_im = std::max(max_im, std::abs(z.imag()));
            max_re = std::max(max_re, std::abs(z.real()));
        }
        const double band = real_tol * (1.0 + max_re);
        if (max_im > 10.0 * band) continue;
        if (max_im > band) {
            throw AmbiguousClassificationError("solution imaginary part " + std::to_string(max_im) +
                                               " is inside the real/complex ambiguity band");
        }
        std::vector<double> p;
        bool near_zero = false;
        for (const cplx& z : s) {
            p.push_back(z.real());
            near_zero = near_zero || std::abs(z.real()) <= exclude_zero_tol;
        }
        if (near_zero) {
            ++out.excluded_near_zero;
            continue;
        }
        out.points.push_back(std::move(p));
    }
    return out;
}

}  // namespace amoeba
