#include "amoeba/errors.hpp"
#include "amoeba/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace amoeba;

namespace {

/// Brute-force d-fold convolution: enumerate every ordered d-tuple.
std::map<ExponentVector, double> enumerate_convolution(const std::vector<ExponentVector>& support,
                                                       const std::vector<double>& var, int d) {
    std::map<ExponentVector, double> out;
    const std::size_t k = support.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        ExponentVector sum(support[0].size(), 0);
        double w = 1.0;
        for (std::size_t i : idx) {
            for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += support[i][j];
            w *= var[i];
        }
        out[sum] += w;
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == k) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("multinomial coefficients") {
    CHECK(multinomial({1, 1, 0}) == 2.0);
    CHECK(multinomial({2, 1, 0}) == 3.0);
    CHECK(multinomial({0, 0, 1}) == 1.0);
    CHECK(multinomial({3, 3, 3}) == 1680.0);
}

TEST_CASE("homogeneous exponents are complete and ordered") {
    const auto e = homogeneous_exponents(3, 3);
    CHECK(e.size() == 10);
    for (const auto& a : e) CHECK(total_degree(a) == 3);
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(GradedLexLess{}(e[i - 1], e[i]));
}

TEST_CASE("dense Kostlan variances") {
    const auto v2 = ensemble_variances(EnsembleSpec::dense(3, 2, Field::complex));
    for (std::size_t i = 0; i < v2.support.size(); ++i) {
        if (v2.support[i] == ExponentVector{1, 1, 0}) CHECK(v2.variances[i] == 2.0);
    }
    const auto v3 = ensemble_variances(EnsembleSpec::dense(3, 3, Field::complex));
    for (std::size_t i = 0; i < v3.support.size(); ++i) {
        if (v3.support[i] == ExponentVector{2, 1, 0}) CHECK(v3.variances[i] == 3.0);
    }
    const auto v1 = ensemble_variances(EnsembleSpec::dense(4, 1, Field::complex));
    for (double v : v1.variances) CHECK(v == 1.0);
    const auto vr = ensemble_variances(EnsembleSpec::dense(2, 2, Field::real));
    std::map<ExponentVector, double> m;
    for (std::size_t i = 0; i < vr.support.size(); ++i) m[vr.support[i]] = vr.variances[i];
    CHECK(m[{2, 0}] == 1.0);
    CHECK(m[{1, 1}] == 2.0);
    CHECK(m[{0, 2}] == 1.0);
}

TEST_CASE("spec mismatch is rejected") {
    const SeedContext seed{1, 0, "x"};
    CHECK_THROWS_AS(sample_dense_real(EnsembleSpec::dense(3, 2, Field::complex), seed), ArgumentError);
    CHECK_THROWS_AS(sample_dense_complex(EnsembleSpec::dense(3, 2, Field::real), seed), ArgumentError);
    CHECK_THROWS_AS(sample_dense_complex(EnsembleSpec::sparse({{0, 0}, {1, 0}, {0, 1}}, {}, 1, Field::complex), seed),
                    ArgumentError);
    CHECK_THROWS_AS(EnsembleSpec::dense(3, 0, Field::real).validate(), ArgumentError);
}

TEST_CASE("determinism and stream separation") {
    const auto spec = EnsembleSpec::dense(3, 3, Field::real);
    const MultiPoly a = sample(spec, {42, 7, "poly0"});
    const MultiPoly b = sample(spec, {42, 7, "poly0"});
    CHECK(a == b);
    CHECK_FALSE(a == sample(spec, {42, 8, "poly0"}));
    CHECK_FALSE(a == sample(spec, {42, 7, "poly1"}));
    CHECK_FALSE(a == sample(spec, {43, 7, "poly0"}));
    CHECK(a.field() == Field::real);
    CHECK(a.is_homogeneous());
    CHECK(a.degree() == 3);
}

TEST_CASE("dilated variances match brute-force enumeration") {
    const std::vector<ExponentVector> seg{{0}, {1}};
    const auto s2 = dilated_variances(seg, {1.0, 1.0}, 2);
    CHECK(s2.support == std::vector<ExponentVector>{{0}, {1}, {2}});
    CHECK(s2.variances == std::vector<double>{1.0, 2.0, 1.0});

    const std::vector<ExponentVector> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const auto id = dilated_variances(square, {1.0, 2.0, 3.0, 4.0}, 1);
    std::map<ExponentVector, double> m1;
    for (std::size_t i = 0; i < id.support.size(); ++i) m1[id.support[i]] = id.variances[i];
    CHECK(m1[{1, 0}] == 2.0);
    CHECK(m1[{1, 1}] == 4.0);

    const auto sq2 = dilated_variances(square, {1.0, 1.0, 1.0, 1.0}, 2);
    for (std::size_t i = 0; i < sq2.support.size(); ++i) {
        if (sq2.support[i] == ExponentVector{1, 1}) CHECK(sq2.variances[i] == 4.0);
    }

    const std::vector<ExponentVector> tri{{0, 0}, {1, 0}, {0, 1}, {2, 1}};
    const std::vector<double> w{0.5, 1.5, 2.0, 0.25};
    for (int d = 1; d <= 4; ++d) {
        const auto fast = dilated_variances(tri, w, d);
        const auto brute = enumerate_convolution(tri, w, d);
        REQUIRE(fast.support.size() == brute.size());
        for (std::size_t i = 0; i < fast.support.size(); ++i) {
            CHECK(fast.variances[i] == doctest::Approx(brute.at(fast.support[i])).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(dilated_variances(tri, w, 0), ArgumentError);
}

TEST_CASE("simplex convolution reproduces dense Kostlan variances") {
    const std::vector<ExponentVector> simplex{{0, 0}, {1, 0}, {0, 1}};
    for (int d = 1; d <= 4; ++d) {
        const auto sparse = dilated_variances(simplex, {1.0, 1.0, 1.0}, d);
        const auto dense = ensemble_variances(EnsembleSpec::dense(3, d, Field::complex));
        std::map<ExponentVector, double> m;
        for (std::size_t i = 0; i < dense.support.size(); ++i) {
            const auto& a = dense.support[i];
            m[{a[1], a[2]}] = dense.variances[i];
        }
        REQUIRE(sparse.support.size() == m.size());
        for (std::size_t i = 0; i < sparse.support.size(); ++i) CHECK(sparse.variances[i] == m.at(sparse.support[i]));
    }
}

TEST_CASE("degenerate sparse supports are rejected") {
    const SeedContext seed{1, 0, "x"};
    const auto flat = EnsembleSpec::sparse({{0, 0}, {1, 1}, {2, 2}}, {}, 1, Field::complex);
    CHECK_THROWS_AS(sample_sparse(flat, seed), DegenerateSupportError);
    CHECK_THROWS_AS(EnsembleSpec::sparse({{0, 0}, {1, 0}, {0, 1}}, {1.0, -1.0, 1.0}, 1, Field::complex).validate(),
                    ArgumentError);
    CHECK_THROWS_AS(EnsembleSpec::sparse({{0, 0}, {1, 0}, {0, 1}}, {1.0, 1.0}, 1, Field::complex).validate(),
                    ArgumentError);
    const auto square = EnsembleSpec::sparse({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {}, 1, Field::complex);
    const MultiPoly f = sample_sparse(square, seed);
    CHECK(f.size() == 4);
    CHECK(f.nvars() == 2);
}

namespace {

/// Empirical second moments E|c|^2 / v over n draws, keyed by exponent.
void check_calibration(const EnsembleSpec& spec, int n, std::uint64_t master) {
    const auto var = ensemble_variances(spec);
    std::map<ExponentVector, double> second;
    std::map<ExponentVector, double> first_re;
    for (int t = 0; t < n; ++t) {
        MultiPoly f = sample(spec, {master, static_cast<std::uint64_t>(t), "c"});
        for (const auto& [e, c] : f.terms()) {
            second[e] += std::norm(c);
            first_re[e] += c.real();
        }
    }
    for (std::size_t i = 0; i < var.support.size(); ++i) {
        const auto& e = var.support[i];
        const double v = var.variances[i];
        const double moment = second[e] / n;
        // SD of |c|^2 is v (complex) or sqrt(2) v (real).
        CHECK(std::abs(moment - v) <= 4.0 * std::sqrt(2.0 / n) * v);
        const double mean = first_re[e] / n;
        const double sd_re = std::sqrt(spec.field == Field::real ? v : v / 2.0);
        CHECK(std::abs(mean) <= 4.0 * sd_re / std::sqrt(n));
    }
}

}  // namespace

TEST_CASE("Gaussian calibration over 1e5 draws") {
    check_calibration(EnsembleSpec::dense(3, 2, Field::complex), 100000, 11);
    check_calibration(EnsembleSpec::dense(2, 2, Field::real), 100000, 12);
    check_calibration(EnsembleSpec::sparse({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {1.0, 2.0, 0.5, 1.0}, 2, Field::complex),
                      100000, 13);
}

TEST_CASE("real and imaginary parts are uncorrelated") {
    const auto spec = EnsembleSpec::dense(3, 2, Field::complex);
    const int n = 100000;
    const auto var = ensemble_variances(spec);
    std::map<ExponentVector, double> cross;
    for (int t = 0; t < n; ++t) {
        const MultiPoly f = sample(spec, {99, static_cast<std::uint64_t>(t), "c"});
        for (const auto& [e, c] : f.terms()) cross[e] += c.real() * c.imag();
    }
    for (std::size_t i = 0; i < var.support.size(); ++i) {
        const double corr = cross[var.support[i]] / n / (var.variances[i] / 2.0);
        CHECK(std::abs(corr) < 4.0 / std::sqrt(n));
    }
}

TEST_CASE("sparse simplex ensemble matches dense after dehomogenization") {
    const auto sparse = ensemble_variances(EnsembleSpec::sparse({{0, 0}, {1, 0}, {0, 1}}, {}, 3, Field::complex));
    const auto dense = ensemble_variances(EnsembleSpec::dense(3, 3, Field::complex));
    std::map<ExponentVector, double> m;
    for (std::size_t i = 0; i < dense.support.size(); ++i) {
        m[{dense.support[i][1], dense.support[i][2]}] = dense.variances[i];
    }
    for (std::size_t i = 0; i < sparse.support.size(); ++i) CHECK(sparse.variances[i] == m.at(sparse.support[i]));
}
