#include "amoeba/sampler.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace amoeba {

EnsembleSpec EnsembleSpec::dense(std::size_t nvars_homogeneous, int degree, Field field) {
    EnsembleSpec s;
    s.kind = EnsembleKind::dense_kostlan;
    s.nvars_ambient = nvars_homogeneous;
    s.degree_or_dilation = degree;
    s.field = field;
    return s;
}

EnsembleSpec EnsembleSpec::sparse(std::vector<ExponentVector> support, std::vector<double> variances,
                                  int dilation, Field field) {
    EnsembleSpec s;
    s.kind = EnsembleKind::sparse_toric;
    s.nvars_ambient = support.empty() ? 0 : support.front().size();
    s.degree_or_dilation = dilation;
    if (variances.empty()) variances.assign(support.size(), 1.0);
    s.support = std::move(support);
    s.base_variances = std::move(variances);
    s.field = field;
    return s;
}

void EnsembleSpec::validate() const {
    if (degree_or_dilation < 1) throw ArgumentError("ensemble degree/dilation must be >= 1");
    if (nvars_ambient < 1) throw ArgumentError("ensemble needs at least one variable");
    if (kind == EnsembleKind::dense_kostlan) {
        if (support || base_variances) throw ArgumentError("dense Kostlan ensemble takes no support");
        return;
    }
    if (!support || support->empty()) throw ArgumentError("sparse ensemble needs a nonempty support");
    if (base_variances && base_variances->size() != support->size()) {
        throw ArgumentError("base variances are not aligned with the support");
    }
    std::vector<LatticePoint> pts;
    for (const auto& e : *support) {
        if (e.size() != nvars_ambient) throw ArgumentError("support point has wrong dimension");
        if (std::any_of(e.begin(), e.end(), [](int a) { return a < 0; })) {
            throw ArgumentError("support point has a negative exponent");
        }
        pts.emplace_back(e.begin(), e.end());
    }
    if (base_variances) {
        for (double v : *base_variances) {
            if (!(v > 0.0)) throw ArgumentError("base variances must be strictly positive");
        }
    }
    if (affine_rank(pts) != static_cast<int>(nvars_ambient)) {
        throw DegenerateSupportError("support convex hull is not full-dimensional");
    }
}

double multinomial(const ExponentVector& alpha) {
    // Product of binomials C(a_0 + ... + a_j, a_j); every partial product is integral.
    std::uint64_t result = 1;
    std::uint64_t n = 0;
    for (int a : alpha) {
        for (int k = 1; k <= a; ++k) {
            ++n;
            result = result * n / static_cast<std::uint64_t>(k);
        }
    }
    return static_cast<double>(result);
}

std::vector<ExponentVector> homogeneous_exponents(std::size_t nvars, int d) {
    std::vector<ExponentVector> out;
    ExponentVector cur(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == nvars) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            cur[i] = a;
            self(self, i + 1, left - a);
        }
    };
    if (nvars > 0) rec(rec, 0, d);
    std::sort(out.begin(), out.end(), GradedLexLess{});
    return out;
}

namespace {

MultiPoly draw(std::size_t nvars, const std::vector<ExponentVector>& exps,
               const std::vector<double>& variances, Field field, const SeedContext& seed) {
    CounterRng rng(seed);
    std::vector<std::pair<ExponentVector, cplx>> terms;
    terms.reserve(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const double sd = std::sqrt(variances[i]);
        const cplx g = field == Field::complex ? rng.standard_complex_normal()
                                               : cplx(rng.standard_normal(), 0.0);
        terms.emplace_back(exps[i], g * sd);
    }
    return MultiPoly(nvars, terms, field);
}

DilatedSupport dense_variances(const EnsembleSpec& spec) {
    DilatedSupport out;
    out.support = homogeneous_exponents(spec.nvars_ambient, spec.degree_or_dilation);
    for (const auto& e : out.support) out.variances.push_back(multinomial(e));
    return out;
}

void require_dense(const EnsembleSpec& spec, Field field) {
    spec.validate();
    if (spec.kind != EnsembleKind::dense_kostlan || spec.field != field) {
        throw ArgumentError(std::string("expected a dense Kostlan ensemble over the ") +
                            to_string(field) + " field");
    }
}

}  // namespace

MultiPoly sample_dense_complex(const EnsembleSpec& spec, const SeedContext& seed) {
    require_dense(spec, Field::complex);
    const auto v = dense_variances(spec);
    return draw(spec.nvars_ambient, v.support, v.variances, Field::complex, seed);
}

MultiPoly sample_dense_real(const EnsembleSpec& spec, const SeedContext& seed) {
    require_dense(spec, Field::real);
    const auto v = dense_variances(spec);
    return draw(spec.nvars_ambient, v.support, v.variances, Field::real, seed);
}

DilatedSupport dilated_variances(const std::vector<ExponentVector>& support,
                                 const std::vector<double>& base_variances, int d) {
    if (d < 1) throw ArgumentError("dilated_variances: d must be >= 1");
    if (support.empty()) throw ArgumentError("dilated_variances: empty support");
    if (base_variances.size() != support.size()) {
        throw ArgumentError("dilated_variances: variances not aligned with support");
    }
    std::map<ExponentVector, double, GradedLexLess> cur;
    for (std::size_t i = 0; i < support.size(); ++i) cur[support[i]] += base_variances[i];
    for (int step = 1; step < d; ++step) {
        std::map<ExponentVector, double, GradedLexLess> next;
        for (const auto& [m, v] : cur) {
            for (std::size_t i = 0; i < support.size(); ++i) {
                ExponentVector s = m;
                for (std::size_t j = 0; j < s.size(); ++j) s[j] += support[i][j];
                next[s] += v * base_variances[i];
            }
        }
        cur = std::move(next);
    }
    DilatedSupport out;
    for (const auto& [m, v] : cur) {
        out.support.push_back(m);
        out.variances.push_back(v);
    }
    return out;
}

DilatedSupport ensemble_variances(const EnsembleSpec& spec) {
    spec.validate();
    if (spec.kind == EnsembleKind::dense_kostlan) return dense_variances(spec);
    const std::vector<double> base =
        spec.base_variances ? *spec.base_variances : std::vector<double>(spec.support->size(), 1.0);
    return dilated_variances(*spec.support, base, spec.degree_or_dilation);
}

MultiPoly sample_sparse(const EnsembleSpec& spec, const SeedContext& seed) {
    spec.validate();
    if (spec.kind != EnsembleKind::sparse_toric) throw ArgumentError("expected a sparse toric ensemble");
    const auto v = ensemble_variances(spec);
    return draw(spec.nvars_ambient, v.support, v.variances, spec.field, seed);
}

MultiPoly sample(const EnsembleSpec& spec, const SeedContext& seed) {
    if (spec.kind == EnsembleKind::sparse_toric) return sample_sparse(spec, seed);
    return spec.field == Field::complex ? sample_dense_complex(spec, seed) : sample_dense_real(spec, seed);
}

}  // namespace amoeba
