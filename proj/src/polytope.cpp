#include "amoeba/polytope.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

namespace amoeba {

namespace {

using Vec = std::vector<double>;

constexpr double kTol = 1e-9;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

/// Orthogonalizes `v` against the orthonormal `basis` and appends it when its
/// residual exceeds the tolerance. Returns whether it was appended.
bool extend_basis(std::vector<Vec>& basis, Vec v, double tol) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vec& b : basis) {
            const double c = dot(v, b);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
        }
    }
    const double n = std::sqrt(dot(v, v));
    if (n <= tol) return false;
    for (double& x : v) x /= n;
    basis.push_back(std::move(v));
    return true;
}

double coordinate_scale(const std::vector<Vec>& pts) {
    double m = 1.0;
    for (const Vec& p : pts) {
        for (double x : p) m = std::max(m, std::abs(x));
    }
    return m;
}

/// Orthonormal basis of the affine span of pts (relative to pts[0]).
std::vector<Vec> affine_basis(const std::vector<Vec>& pts) {
    std::vector<Vec> basis;
    if (pts.empty()) return basis;
    const double tol = kTol * coordinate_scale(pts);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        extend_basis(basis, sub(pts[i], pts[0]), tol);
        if (basis.size() == pts[0].size()) break;
    }
    return basis;
}

std::vector<Vec> project(const std::vector<Vec>& pts, const Vec& origin, const std::vector<Vec>& basis) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const Vec& p : pts) {
        const Vec d = sub(p, origin);
        Vec c(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) c[j] = dot(d, basis[j]);
        out.push_back(std::move(c));
    }
    return out;
}

struct Facet {
    Vec normal;  // unit, outward
    std::vector<std::size_t> on;
    Vec anchor;
};

/// All facets of the full-dimensional point set `pts` in R^k, k >= 2, by
/// exhaustive enumeration of k-subsets.
std::vector<Facet> facets(const std::vector<Vec>& pts) {
    const std::size_t k = pts[0].size();
    const double tol = kTol * coordinate_scale(pts);
    std::vector<Facet> out;
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> pick;

    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == k) {
            std::vector<Vec> dirs;
            for (std::size_t j = 1; j < k; ++j) {
                if (!extend_basis(dirs, sub(pts[pick[j]], pts[pick[0]]), tol)) return;
            }
            // Normal: the coordinate axis least aligned with the span, orthogonalized.
            Vec normal;
            double best = -1.0;
            for (std::size_t axis = 0; axis < k; ++axis) {
                Vec r(k, 0.0);
                r[axis] = 1.0;
                for (const Vec& b : dirs) {
                    const double c = dot(r, b);
                    for (std::size_t i = 0; i < k; ++i) r[i] -= c * b[i];
                }
                const double n = std::sqrt(dot(r, r));
                if (n > best) {
                    best = n;
                    normal = r;
                }
            }
            for (double& x : normal) x /= best;
            // One more sweep to clean up rounding.
            for (const Vec& b : dirs) {
                const double c = dot(normal, b);
                for (std::size_t i = 0; i < k; ++i) normal[i] -= c * b[i];
            }
            bool pos = false;
            bool neg = false;
            std::vector<std::size_t> on;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double s = dot(normal, sub(pts[i], pts[pick[0]]));
                if (s > tol) pos = true;
                else if (s < -tol) neg = true;
                else on.push_back(i);
                if (pos && neg) return;
            }
            if (pos) {
                for (double& x : normal) x = -x;
            }
            if (seen.insert(on).second) out.push_back({normal, on, pts[pick[0]]});
            return;
        }
        for (std::size_t i = start; i < pts.size(); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

std::size_t lex_min_index(const std::vector<Vec>& pts) {
    return static_cast<std::size_t>(std::min_element(pts.begin(), pts.end()) - pts.begin());
}

/// Volume of a full-dimensional point set given in k local coordinates.
double local_volume(const std::vector<Vec>& pts) {
    const std::size_t k = pts[0].size();
    if (k == 0) return 1.0;
    if (k == 1) {
        double lo = pts[0][0];
        double hi = pts[0][0];
        for (const Vec& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    const std::size_t apex = lex_min_index(pts);
    double total = 0.0;
    for (const Facet& f : facets(pts)) {
        if (std::find(f.on.begin(), f.on.end(), apex) != f.on.end()) continue;
        const double height = -dot(f.normal, sub(pts[apex], f.anchor));
        std::vector<Vec> face;
        for (std::size_t i : f.on) face.push_back(pts[i]);
        const auto basis = affine_basis(face);
        total += height * local_volume(project(face, face[0], basis)) / static_cast<double>(k);
    }
    return total;
}

std::vector<Vec> to_doubles(const std::vector<LatticePoint>& pts) {
    std::vector<Vec> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.emplace_back(p.begin(), p.end());
    return out;
}

int matrix_rank(const std::vector<Vec>& rows) {
    std::vector<Vec> basis;
    for (const Vec& r : rows) extend_basis(basis, r, kTol);
    return static_cast<int>(basis.size());
}

}  // namespace

int affine_rank(const std::vector<LatticePoint>& points) {
    if (points.empty()) return -1;
    return static_cast<int>(affine_basis(to_doubles(points)).size());
}

LatticePolytope LatticePolytope::hull(std::size_t dim, const std::vector<LatticePoint>& points) {
    if (points.empty()) throw ArgumentError("convex hull of an empty point set");
    for (const auto& p : points) {
        if (p.size() != dim) throw ArgumentError("lattice point dimension mismatch");
    }
    std::set<LatticePoint> unique(points.begin(), points.end());
    std::vector<LatticePoint> pts(unique.begin(), unique.end());
    const std::vector<Vec> dpts = to_doubles(pts);
    const auto basis = affine_basis(dpts);
    const int k = static_cast<int>(basis.size());

    std::vector<LatticePoint> verts;
    if (k == 0) {
        verts = {pts[0]};
    } else {
        const auto local = project(dpts, dpts[0], basis);
        if (k == 1) {
            auto [lo, hi] = std::minmax_element(local.begin(), local.end(),
                                                [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
            verts = {pts[static_cast<std::size_t>(lo - local.begin())],
                     pts[static_cast<std::size_t>(hi - local.begin())]};
        } else {
            const auto fs = facets(local);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                std::vector<Vec> normals;
                for (const Facet& f : fs) {
                    if (std::find(f.on.begin(), f.on.end(), i) != f.on.end()) normals.push_back(f.normal);
                }
                if (matrix_rank(normals) == k) verts.push_back(pts[i]);
            }
        }
    }
    std::sort(verts.begin(), verts.end());
    return LatticePolytope(dim, std::move(verts), k);
}

LatticePolytope newton_polytope(const MultiPoly& f) {
    std::vector<LatticePoint> pts;
    for (const auto& e : support(f)) pts.emplace_back(e.begin(), e.end());
    return LatticePolytope::hull(f.nvars(), pts);
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.dim() != q.dim()) throw ArgumentError("minkowski_sum: dimension mismatch");
    std::vector<LatticePoint> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices()) {
        for (const auto& b : q.vertices()) {
            LatticePoint s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    }
    return LatticePolytope::hull(p.dim(), sums);
}

LatticePolytope dilate(const LatticePolytope& p, int d) {
    if (d < 1) throw ArgumentError("dilate: factor must be positive");
    std::vector<LatticePoint> pts;
    for (const auto& v : p.vertices()) {
        LatticePoint s(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] * d;
        pts.push_back(std::move(s));
    }
    return LatticePolytope::hull(p.dim(), pts);
}

double volume(const LatticePolytope& p) {
    if (!p.full_dimensional()) return 0.0;
    if (p.dim() == 0) return 1.0;
    if (p.dim() > 4) throw ArgumentError("volume: ambient dimension above 4 is not supported");
    return local_volume(to_doubles(p.vertices()));
}

double mixed_volume(std::span<const LatticePolytope> ks) {
    const std::size_t m = ks.size();
    if (m == 0 || m > 4) throw ArgumentError("mixed_volume: need between 1 and 4 polytopes");
    for (const auto& k : ks) {
        if (k.dim() != m) throw ArgumentError("mixed_volume: polytope dimension must equal list length");
    }
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::optional<LatticePolytope> sum;
        int size = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(mask & (1u << i))) continue;
            ++size;
            sum = sum ? minkowski_sum(*sum, ks[i]) : ks[i];
        }
        const double sign = ((m - static_cast<std::size_t>(size)) % 2 == 0) ? 1.0 : -1.0;
        total += sign * volume(*sum);
    }
    return total;
}

AlphaResult mikhalkin_alpha(std::span<const LatticePolytope> deltas) {
    std::vector<LatticePolytope> doubled;
    AlphaResult r;
    for (const auto& d : deltas) {
        if (d.dim() != 2 * deltas.size()) {
            throw ArgumentError("mikhalkin_alpha: polytopes must live in dimension 2n");
        }
        r.degenerate = r.degenerate || !d.full_dimensional();
        doubled.push_back(d);
        doubled.push_back(d);
    }
    r.alpha = mixed_volume(doubled);
    return r;
}

LatticePolytope standard_simplex(std::size_t dim, int d) {
    std::vector<LatticePoint> pts{LatticePoint(dim, 0)};
    for (std::size_t i = 0; i < dim; ++i) {
        LatticePoint p(dim, 0);
        p[i] = d;
        pts.push_back(std::move(p));
    }
    return LatticePolytope::hull(dim, pts);
}

}  // namespace amoeba
