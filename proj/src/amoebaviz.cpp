#include "amoeba/amoebaviz.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/sampler.hpp"
#include "amoeba/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

namespace amoeba {

long long RasterGrid::occupied_cells() const {
    long long n = 0;
    for (auto v : occupancy) n += v;
    return n;
}

namespace {

struct SliceTerm {
    int z1_exp;
    int z2_exp;
    cplx coef;
};

struct SliceStats {
    long long skipped = 0;
    long long solved = 0;
};

/// Roots in z2 of f(z1, .), or nullopt-like empty flag for a degree-0 slice.
class SliceSolver {
public:
    SliceSolver(const std::vector<SliceTerm>& terms, int z2_degree)
        : terms_(terms), c_(static_cast<std::size_t>(z2_degree) + 1) {}

    /// False when the slice is constant in z2.
    bool roots(cplx z1, std::vector<cplx>& out) {
        std::fill(c_.begin(), c_.end(), cplx(0.0, 0.0));
        for (const auto& t : terms_) {
            cplx p = t.coef;
            for (int k = 0; k < t.z1_exp; ++k) p *= z1;
            c_[static_cast<std::size_t>(t.z2_exp)] += p;
        }
        double m = 0.0;
        for (const cplx& x : c_) m = std::max(m, std::abs(x));
        std::size_t len = c_.size();
        while (len > 0 && std::abs(c_[len - 1]) <= 1e-14 * m) --len;
        out.clear();
        if (len < 2) return false;
        try {
            out = all_complex_roots(UniPoly(std::vector<cplx>(c_.begin(), c_.begin() + static_cast<long>(len))));
        } catch (const RootFindingFailureWithPartial& e) {
            for (std::size_t k = 0; k < e.partial().size(); ++k) {
                if (e.converged()[k]) out.push_back(e.partial()[k]);
            }
        }
        return true;
    }

private:
    const std::vector<SliceTerm>& terms_;
    std::vector<cplx> c_;
};

/// log|z|, clamped so that 0 and infinity land beyond either window edge.
double log_abs(cplx z, double limit) {
    const double a = std::abs(z);
    if (!(a > 0.0)) return -limit;
    if (!std::isfinite(a)) return limit;
    return std::clamp(std::log(a), -limit, limit);
}

/// Point of the Riemann sphere squeezed into the unit disk, for branch matching.
cplx squeeze(cplx z) {
    const double a = std::abs(z);
    return std::isfinite(a) ? z / (1.0 + a) : cplx(1.0, 0.0);
}

/// perm[i] = index in `cur` continuing branch i of `prev` (same sizes).
void match_branches(const std::vector<cplx>& prev, const std::vector<cplx>& cur, std::vector<std::size_t>& perm) {
    const std::size_t m = prev.size();
    perm.resize(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto cost = [&](const std::vector<std::size_t>& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::abs(squeeze(prev[i]) - squeeze(cur[p[i]]));
        return s;
    };
    if (m <= 5) {
        std::vector<std::size_t> p = perm;
        double best = cost(p);
        while (std::next_permutation(p.begin(), p.end())) {
            const double c = cost(p);
            if (c < best) {
                best = c;
                perm = p;
            }
        }
        return;
    }
    std::vector<bool> used(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            if (used[j]) continue;
            const double c = std::abs(squeeze(prev[i]) - squeeze(cur[j]));
            if (c < best) {
                best = c;
                arg = j;
            }
        }
        used[arg] = true;
        perm[i] = arg;
    }
}

void mark(std::vector<std::uint8_t>& occ, int res, int ix, int iy) {
    occ[static_cast<std::size_t>(iy) * static_cast<std::size_t>(res) + static_cast<std::size_t>(ix)] = 1;
}

void root_hit_columns(SliceSolver& solver, const RasterGrid& shape, int u_begin, int u_end,
                      std::vector<std::uint8_t>& occ, SliceStats& stats) {
    const double R = shape.R;
    const int res = shape.resolution;
    const int S = shape.samples_per_axis;
    const double span = 2.0 * R + 2.0;
    const double cell = shape.cell_size();
    std::vector<cplx> roots;
    for (int i = u_begin; i < u_end; ++i) {
        const double u = -R - 1.0 + span * i / S;
        const int ix = static_cast<int>(std::floor((u + R) / cell));
        if (ix < 0 || ix >= res) continue;
        const double radius = std::exp(u);
        for (int j = 0; j < S; ++j) {
            if (!solver.roots(std::polar(radius, 2.0 * std::numbers::pi * j / S), roots)) {
                ++stats.skipped;
                continue;
            }
            ++stats.solved;
            for (const cplx& z2 : roots) {
                const double v = log_abs(z2, 2.0 * R);
                const int iy = static_cast<int>(std::floor((v + R) / cell));
                if (iy >= 0 && iy < res) mark(occ, res, ix, iy);
            }
        }
    }
}

void center_coverage_columns(SliceSolver& solver, const RasterGrid& shape, int ix_begin, int ix_end,
                             std::vector<std::uint8_t>& occ, SliceStats& stats) {
    const double R = shape.R;
    const int res = shape.resolution;
    const int S = shape.samples_per_axis;
    const double cell = shape.cell_size();
    std::vector<cplx> first;
    std::vector<cplx> prev;
    std::vector<cplx> cur;
    std::vector<std::size_t> perm;
    // Rows whose centers lie in [min(a, b), max(a, b)].
    auto cover = [&](int ix, double a, double b) {
        const double lo = (std::min(a, b) + R) / cell - 0.5;
        const double hi = (std::max(a, b) + R) / cell - 0.5;
        const int iy0 = std::max(0, static_cast<int>(std::ceil(lo)));
        const int iy1 = std::min(res - 1, static_cast<int>(std::floor(hi)));
        for (int iy = iy0; iy <= iy1; ++iy) mark(occ, res, ix, iy);
    };
    auto join = [&](int ix, const std::vector<cplx>& a, const std::vector<cplx>& b) {
        if (a.size() != b.size()) return;  // degree drop in between; nothing to connect
        match_branches(a, b, perm);
        for (std::size_t k = 0; k < a.size(); ++k) cover(ix, log_abs(a[k], 2.0 * R), log_abs(b[perm[k]], 2.0 * R));
    };
    for (int ix = ix_begin; ix < ix_end; ++ix) {
        const double radius = std::exp(-R + (ix + 0.5) * cell);
        bool have_prev = false;
        bool have_first = false;
        for (int j = 0; j < S; ++j) {
            if (!solver.roots(std::polar(radius, 2.0 * std::numbers::pi * j / S), cur)) {
                ++stats.skipped;
                have_prev = false;
                continue;
            }
            ++stats.solved;
            if (j == 0) {
                first = cur;
                have_first = true;
            }
            if (have_prev) join(ix, prev, cur);
            else for (const cplx& z : cur) cover(ix, log_abs(z, 2.0 * R), log_abs(z, 2.0 * R));
            std::swap(prev, cur);
            have_prev = true;
        }
        if (have_prev && have_first) join(ix, prev, first);  // close the circle
    }
}

}  // namespace

RasterGrid raster_amoeba(const MultiPoly& f, double R, int resolution, int samples_per_axis, int workers,
                         RasterMode mode) {
    if (f.nvars() != 2) throw ArgumentError("raster_amoeba: curve must have two variables");
    if (!(R > 0.0) || resolution < 1 || samples_per_axis < 1) throw ArgumentError("raster_amoeba: bad raster parameters");
    std::vector<SliceTerm> terms;
    int z2_degree = 0;
    for (const auto& [e, c] : f.terms()) {
        terms.push_back({e[0], e[1], c});
        z2_degree = std::max(z2_degree, e[1]);
    }
    if (z2_degree < 1) throw ArgumentError("raster_amoeba: curve needs degree >= 1 in z2");

    RasterGrid grid;
    grid.R = R;
    grid.resolution = resolution;
    grid.samples_per_axis = samples_per_axis;
    grid.mode = mode;
    grid.occupancy.assign(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution), 0);

    const int columns = mode == RasterMode::center_coverage ? resolution : samples_per_axis;
    workers = std::clamp(workers, 1, columns);
    std::vector<std::vector<std::uint8_t>> parts(static_cast<std::size_t>(workers), grid.occupancy);
    std::vector<SliceStats> stats(static_cast<std::size_t>(workers));
    auto job = [&](int w) {
        const int begin = static_cast<int>(static_cast<long long>(columns) * w / workers);
        const int end = static_cast<int>(static_cast<long long>(columns) * (w + 1) / workers);
        SliceSolver solver(terms, z2_degree);
        auto& occ = parts[static_cast<std::size_t>(w)];
        auto& st = stats[static_cast<std::size_t>(w)];
        if (mode == RasterMode::center_coverage) center_coverage_columns(solver, grid, begin, end, occ, st);
        else root_hit_columns(solver, grid, begin, end, occ, st);
    };
    if (workers == 1) {
        job(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(job, w);
        for (auto& t : pool) t.join();
    }

    long long solved = 0;
    for (int w = 0; w < workers; ++w) {
        const auto& part = parts[static_cast<std::size_t>(w)];
        for (std::size_t k = 0; k < part.size(); ++k) grid.occupancy[k] |= part[k];
        grid.slices_skipped += stats[static_cast<std::size_t>(w)].skipped;
        solved += stats[static_cast<std::size_t>(w)].solved;
    }
    if (solved == 0 && grid.slices_skipped > 0) throw ArgumentError("raster_amoeba: every slice is degenerate");
    const double cell = grid.cell_size();
    grid.area_estimate = static_cast<double>(grid.occupied_cells()) * cell * cell;
    return grid;
}

MCEstimate mean_amoeba_area(int degree, int n_curves, const RasterParams& params, std::uint64_t master_seed,
                            int workers) {
    if (degree < 1) throw ArgumentError("mean_amoeba_area: degree must be positive");
    if (n_curves < 1) throw ArgumentError("mean_amoeba_area: need at least one curve");
    const EnsembleSpec spec = EnsembleSpec::dense(3, degree, Field::complex);
    const auto areas = run_indexed<double>(n_curves, workers, [&](int i) {
        const SeedContext seed{master_seed, static_cast<std::uint64_t>(i), "curve"};
        const MultiPoly f = dehomogenize(sample_dense_complex(spec, seed), 0);
        return raster_amoeba(f, params.R, params.resolution, params.samples_per_axis, 1, params.mode).area_estimate;
    });
    return aggregate(areas, 0, std::nullopt, master_seed);
}

void write_pgm(const RasterGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot open " + path + " for writing");
    out << "P5\n" << grid.resolution << ' ' << grid.resolution << "\n255\n";
    std::vector<char> row(static_cast<std::size_t>(grid.resolution));
    for (int iy = grid.resolution - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < grid.resolution; ++ix) {
            row[static_cast<std::size_t>(ix)] = grid.occupied(ix, iy) ? static_cast<char>(0) : static_cast<char>(255);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw Error("failed writing " + path);
}

}  // namespace amoeba
