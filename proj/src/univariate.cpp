#include "amoeba/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace amoeba {

UniPoly::UniPoly(std::vector<cplx> coefficients, Field field)
    : coeffs_(std::move(coefficients)), field_(field) {
    while (!coeffs_.empty() && coeffs_.back() == cplx(0.0, 0.0)) coeffs_.pop_back();
    if (coeffs_.empty()) throw ArgumentError("univariate polynomial is identically zero");
    if (field_ == Field::real) {
        for (const cplx& c : coeffs_) {
            if (c.imag() != 0.0) throw ArgumentError("real-tagged univariate polynomial with complex coefficient");
        }
    }
}

UniPoly UniPoly::real(const std::vector<double>& coefficients) {
    return UniPoly(std::vector<cplx>(coefficients.begin(), coefficients.end()), Field::real);
}

cplx UniPoly::operator()(cplx z) const {
    cplx acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ScaledValue evaluate_scaled(const UniPoly& p, cplx z) {
    cplx acc(0.0, 0.0);
    double scale = 0.0;
    const double r = std::abs(z);
    for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) {
        acc = acc * z + *it;
        scale = scale * r + std::abs(*it);
    }
    return {acc, scale};
}

UniPoly to_unipoly(const MultiPoly& f) {
    if (f.nvars() != 1) throw ArgumentError("to_unipoly: polynomial must have exactly one variable");
    std::vector<cplx> c(static_cast<std::size_t>(std::max(f.degree(), 0)) + 1, cplx(0.0, 0.0));
    for (const auto& [e, v] : f.terms()) c[static_cast<std::size_t>(e[0])] = v;
    return UniPoly(std::move(c), f.field());
}

namespace {

using RealPoly = std::vector<double>;  // ascending

void normalize(RealPoly& p) {
    double m = 0.0;
    for (double c : p) m = std::max(m, std::abs(c));
    if (m > 0.0) {
        for (double& c : p) c /= m;
    }
}

/// Drops leading coefficients that are rounding noise relative to the rest.
void trim(RealPoly& p) {
    double m = 0.0;
    for (double c : p) m = std::max(m, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= 1e-14 * m) p.pop_back();
}

/// Remainder of a / b (b's leading coefficient nonzero).
RealPoly remainder(RealPoly a, const RealPoly& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const double q = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= q * b[i];
        a.pop_back();
    }
    if (a.empty()) a.push_back(0.0);
    return a;
}

int sign_at_infinity(const RealPoly& p, bool positive) {
    const double lead = p.back();
    int s = lead > 0 ? 1 : (lead < 0 ? -1 : 0);
    const std::size_t deg = p.size() - 1;
    if (!positive && deg % 2 == 1) s = -s;
    return s;
}

int variations(const std::vector<int>& signs) {
    int count = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

int sturm_count_real_roots(const UniPoly& p) {
    RealPoly p0;
    for (const cplx& c : p.coefficients()) {
        if (c.imag() != 0.0) throw ArgumentError("sturm_count_real_roots: polynomial must be real");
        p0.push_back(c.real());
    }
    if (p0.size() == 1) return 0;
    normalize(p0);
    RealPoly p1(p0.size() - 1);
    for (std::size_t i = 1; i < p0.size(); ++i) p1[i - 1] = static_cast<double>(i) * p0[i];
    normalize(p1);

    std::vector<RealPoly> chain{p0, p1};
    while (chain.back().size() > 1) {
        RealPoly r = remainder(chain[chain.size() - 2], chain.back());
        for (double& c : r) c = -c;
        double m = 0.0;
        for (double c : r) m = std::max(m, std::abs(c));
        if (m < 1e-10) {
            throw UnreliableCountError("Sturm chain remainder vanished numerically (degree " +
                                       std::to_string(r.size() - 1) + ")");
        }
        normalize(r);
        trim(r);
        chain.push_back(std::move(r));
    }

    std::vector<int> at_neg;
    std::vector<int> at_pos;
    for (const RealPoly& q : chain) {
        at_neg.push_back(sign_at_infinity(q, false));
        at_pos.push_back(sign_at_infinity(q, true));
    }
    return variations(at_neg) - variations(at_pos);
}

namespace {

constexpr int kIterationCap = 200;

std::vector<cplx> closed_form(const std::vector<cplx>& c) {
    if (c.size() == 2) return {-c[0] / c[1]};
    // Quadratic a z^2 + b z + k with the cancellation-free pairing of roots.
    const cplx a = c[2];
    const cplx b = c[1];
    const cplx k = c[0];
    cplx disc = std::sqrt(b * b - 4.0 * a * k);
    if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
    const cplx q = -0.5 * (b + disc);
    if (q == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), cplx(0.0, 0.0)};
    return {q / a, k / q};
}

bool accept(const UniPoly& p, cplx z, double coeff_scale) {
    const auto sv = evaluate_scaled(p, z);
    const double growth = std::pow(std::max(1.0, std::abs(z)), p.degree());
    return std::abs(sv.value) <= 1e-8 * (1.0 + coeff_scale) * growth;
}

cplx newton_polish(const UniPoly& p, const UniPoly& dp, cplx z) {
    for (int it = 0; it < 2; ++it) {
        const cplx fz = p(z);
        const cplx dz = dp(z);
        if (dz == cplx(0.0, 0.0)) break;
        const cplx next = z - fz / dz;
        if (std::abs(p(next)) > std::abs(fz)) break;
        z = next;
    }
    return z;
}

/// One Durand-Kerner run on the monic polynomial; returns whether it converged.
bool durand_kerner(const std::vector<cplx>& monic, std::vector<cplx>& z, double radius, double offset) {
    const std::size_t n = monic.size() - 1;
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = std::polar(radius, offset + 2.0 * std::numbers::pi * static_cast<double>(k) / n);
    }
    auto eval = [&](cplx x) {
        cplx acc(1.0, 0.0);
        for (std::size_t i = n; i-- > 0;) acc = acc * x + monic[i];
        return acc;
    };
    for (int it = 0; it < kIterationCap; ++it) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cplx denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) denom *= (z[k] - z[j]);
            }
            if (denom == cplx(0.0, 0.0)) denom = cplx(1e-300, 0.0);
            const cplx step = eval(z[k]) / denom;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (!std::isfinite(worst)) return false;
        if (worst < 1e-14) return true;
    }
    return false;
}

}  // namespace

std::vector<cplx> all_complex_roots(const UniPoly& p) {
    const int n = p.degree();
    if (n < 1) throw ArgumentError("all_complex_roots: degree must be at least 1");
    const auto& c = p.coefficients();
    double coeff_scale = 0.0;
    for (const cplx& x : c) coeff_scale = std::max(coeff_scale, std::abs(x));
    if (n <= 2) return closed_form(c);

    std::vector<cplx> monic(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i] / c.back();
    // Fujiwara-style radius from the coefficient magnitudes.
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        radius = std::max(radius, std::pow(std::abs(monic[static_cast<std::size_t>(i)]), 1.0 / (n - i)));
    }
    if (radius == 0.0) radius = 1.0;

    std::vector<cplx> dcoef;
    for (std::size_t i = 1; i < c.size(); ++i) dcoef.push_back(c[i] * static_cast<double>(i));
    const UniPoly dp(dcoef);

    std::vector<cplx> z(static_cast<std::size_t>(n));
    bool ok = durand_kerner(monic, z, radius, 0.4);
    if (!ok) ok = durand_kerner(monic, z, 1.1 * radius, 0.4 + std::numbers::pi / n);

    std::vector<bool> converged(z.size());
    bool all = ok;
    for (std::size_t k = 0; k < z.size(); ++k) {
        z[k] = newton_polish(p, dp, z[k]);
        converged[k] = std::isfinite(z[k].real()) && std::isfinite(z[k].imag()) && accept(p, z[k], coeff_scale);
        all = all && converged[k];
    }
    if (!all) {
        throw RootFindingFailureWithPartial("Durand-Kerner iteration did not converge", z, converged);
    }
    return z;
}

}  // namespace amoeba
