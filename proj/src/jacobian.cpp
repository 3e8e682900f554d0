#include "amoeba/jacobian.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace amoeba {

namespace {

void require_plane_curve(const MultiPoly& f) {
    if (f.nvars() != 2) throw ArgumentError("curve polynomial must have two variables");
    if (f.is_zero()) throw ArgumentError("curve polynomial is zero");
}

/// Coefficients of f(z1, .) as a polynomial in z2.
std::vector<cplx> slice(const MultiPoly& f, cplx z1) {
    int deg = 0;
    for (const auto& [e, c] : f.terms()) deg = std::max(deg, e[1]);
    std::vector<cplx> out(static_cast<std::size_t>(deg) + 1, cplx(0.0, 0.0));
    for (const auto& [e, c] : f.terms()) {
        cplx p = c;
        for (int k = 0; k < e[0]; ++k) p *= z1;
        out[static_cast<std::size_t>(e[1])] += p;
    }
    return out;
}

/// f, df/dz1, df/dz2 and sum |c| |z^alpha| at (z1, z2).
struct Local {
    cplx value, d1, d2;
    double scale;
};

Local local(const MultiPoly& f, cplx z1, cplx z2) {
    Local l{0.0, 0.0, 0.0, 0.0};
    for (const auto& [e, c] : f.terms()) {
        cplx p1 = 1.0;
        cplx p2 = 1.0;
        for (int k = 0; k < e[0]; ++k) p1 *= z1;
        for (int k = 0; k < e[1]; ++k) p2 *= z2;
        l.value += c * p1 * p2;
        l.scale += std::abs(c) * std::abs(p1) * std::abs(p2);
        if (e[0] > 0) {
            cplx q = 1.0;
            for (int k = 0; k < e[0] - 1; ++k) q *= z1;
            l.d1 += c * static_cast<double>(e[0]) * q * p2;
        }
        if (e[1] > 0) {
            cplx q = 1.0;
            for (int k = 0; k < e[1] - 1; ++k) q *= z2;
            l.d2 += c * static_cast<double>(e[1]) * p1 * q;
        }
    }
    return l;
}

cplx newton_in_z2(const MultiPoly& f, cplx z1, cplx z2, int iterations) {
    for (int it = 0; it < iterations; ++it) {
        const Local l = local(f, z1, z2);
        if (l.d2 == cplx(0.0, 0.0)) break;
        const cplx next = z2 - l.value / l.d2;
        if (std::abs(local(f, z1, next).value) > std::abs(l.value)) break;
        z2 = next;
    }
    return z2;
}

}  // namespace

std::vector<CurvePoint> curve_points_at(const MultiPoly& f, cplx z1) {
    require_plane_curve(f);
    std::vector<CurvePoint> out;
    if (std::abs(z1) == 0.0) return out;
    const double coeff_scale = f.max_abs_coefficient();
    std::vector<cplx> c = slice(f, z1);
    while (!c.empty() && c.back() == cplx(0.0, 0.0)) c.pop_back();
    if (c.size() < 2) return out;
    std::vector<cplx> roots;
    try {
        roots = all_complex_roots(UniPoly(c));
    } catch (const RootFindingFailure&) {
        return out;
    }
    for (cplx z2 : roots) {
        z2 = newton_in_z2(f, z1, z2, 3);
        if (std::abs(z2) <= 1e-8) continue;
        const Local l = local(f, z1, z2);
        if (!(std::abs(l.value) <= 1e-10 * std::max(coeff_scale, l.scale))) continue;
        if (!(std::abs(l.d2) > 1e-8 * coeff_scale)) continue;
        out.push_back({z1, z2, -l.d1 / l.d2});
    }
    return out;
}

std::vector<CurvePoint> sample_curve_points(const MultiPoly& f, int count, const SeedContext& seed) {
    require_plane_curve(f);
    if (count < 0) throw ArgumentError("sample_curve_points: negative count");
    CounterRng rng(seed);
    std::vector<CurvePoint> out;
    const int cap = 100 * count + 100;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > cap) {
            throw SamplingFailure("curve point sampling exceeded its rejection cap (" +
                                  std::to_string(out.size()) + " of " + std::to_string(count) + " points)");
        }
        const cplx z1 = rng.standard_complex_normal();
        if (std::abs(z1) < 0.1) continue;
        for (const CurvePoint& p : curve_points_at(f, z1)) {
            if (static_cast<int>(out.size()) < count) out.push_back(p);
        }
    }
    return out;
}

JacobianDeterminants jacobian_determinants(const CurvePoint& p) {
    const cplx m1 = 1.0 / p.z1;
    const cplx m2 = p.branch_derivative / p.z2;
    // Rows are d/dx and d/dy of (log|z1|, log|z2|) and (arg z1, arg z2), z1 = x + iy.
    const double det_log = m1.real() * (-m2.imag()) - (-m1.imag()) * m2.real();
    const double det_arg = m1.imag() * m2.real() - m1.real() * m2.imag();
    return {det_log, det_arg};
}

JacobianDeterminants finite_difference_determinants(const MultiPoly& f, const CurvePoint& p, double h) {
    require_plane_curve(f);
    // Follow the branch through z1 + delta by Newton from the base root.
    auto branch = [&](cplx delta) {
        const cplx z1 = p.z1 + delta;
        return std::pair{z1, newton_in_z2(f, z1, p.z2 + p.branch_derivative * delta, 8)};
    };
    auto wrap = [](double d) {
        // Unwrap an argument difference modulo pi into (-pi/2, pi/2].
        d = std::remainder(d, std::numbers::pi);
        return d;
    };
    double dlog[2][2];
    double darg[2][2];
    const cplx dirs[2] = {cplx(h, 0.0), cplx(0.0, h)};
    for (int c = 0; c < 2; ++c) {
        const auto [a1, a2] = branch(dirs[c]);
        const auto [b1, b2] = branch(-dirs[c]);
        dlog[0][c] = (std::log(std::abs(a1)) - std::log(std::abs(b1))) / (2.0 * h);
        dlog[1][c] = (std::log(std::abs(a2)) - std::log(std::abs(b2))) / (2.0 * h);
        darg[0][c] = wrap(std::arg(a1) - std::arg(b1)) / (2.0 * h);
        darg[1][c] = wrap(std::arg(a2) - std::arg(b2)) / (2.0 * h);
    }
    return {dlog[0][0] * dlog[1][1] - dlog[0][1] * dlog[1][0], darg[0][0] * darg[1][1] - darg[0][1] * darg[1][0]};
}

}  // namespace amoeba
