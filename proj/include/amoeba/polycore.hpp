#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace amoeba {

using cplx = std::complex<double>;

/// Exponent of a monomial, one non-negative entry per variable.
using ExponentVector = std::vector<int>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

int total_degree(const ExponentVector& e);

enum class Field { real, complex };

const char* to_string(Field field);

/// Sparse multivariate polynomial with complex coefficients keyed by exponent.
///
/// Immutable after construction. Terms with coefficient exactly zero are never
/// stored. A polynomial tagged `Field::real` has every imaginary part equal to 0.
class MultiPoly {
public:
    using Terms = std::map<ExponentVector, cplx, GradedLexLess>;

    /// The zero polynomial in `nvars` variables.
    explicit MultiPoly(std::size_t nvars, Field field = Field::complex);

    /// Builds from (exponent, coefficient) pairs. Repeated exponents are summed.
    /// Throws ArgumentError on length mismatch, negative exponents, or a
    /// non-real coefficient under `Field::real`.
    MultiPoly(std::size_t nvars, const std::vector<std::pair<ExponentVector, cplx>>& terms,
              Field field = Field::complex);

    std::size_t nvars() const { return nvars_; }
    Field field() const { return field_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient at `e`, zero when absent.
    cplx coefficient(const ExponentVector& e) const;

    /// Highest total degree among the terms; -1 for the zero polynomial.
    int degree() const;

    /// Max coefficient magnitude; 0 for the zero polynomial.
    double max_abs_coefficient() const;

    bool is_homogeneous() const;

    /// Same polynomial with a different field tag (real requires real coefficients).
    MultiPoly with_field(Field field) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    std::size_t nvars_;
    Field field_;
    Terms terms_;
};

/// Rotation angles in [0, pi), one per variable.
class ThetaPoint {
public:
    /// Throws ArgumentError if some angle is outside [0, pi).
    explicit ThetaPoint(std::vector<double> angles);

    /// Reduces each angle into [0, pi).
    static ThetaPoint reduced(std::span<const double> angles);

    const std::vector<double>& angles() const { return angles_; }
    std::size_t size() const { return angles_.size(); }

private:
    std::vector<double> angles_;
};

cplx evaluate(const MultiPoly& f, std::span<const cplx> point);

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var_index);

/// Sets X_chart = 1 in a homogeneous polynomial and renumbers the remaining variables.
MultiPoly dehomogenize(const MultiPoly& f, std::size_t chart_index);

/// Inverse of dehomogenize: inserts variable `chart_index` with exponent
/// `degree - |alpha|`. Requires degree >= f.degree().
MultiPoly homogenize(const MultiPoly& f, std::size_t chart_index, int degree);

/// Coefficient at alpha becomes c_alpha * exp(i <alpha, theta>), so that the
/// result evaluated at real r equals f(r_1 e^{i theta_1}, ...).
MultiPoly rotate_arguments(const MultiPoly& f, const ThetaPoint& theta);

/// Same twist for arbitrary real angles (used for inverse rotations).
MultiPoly rotate_by_angles(const MultiPoly& f, std::span<const double> angles);

/// Real and imaginary coefficient parts as real-tagged polynomials.
std::pair<MultiPoly, MultiPoly> re_im_split(const MultiPoly& f);

/// re + i*im, exactly.
MultiPoly reassemble(const MultiPoly& re, const MultiPoly& im);

MultiPoly scale(const MultiPoly& f, cplx factor);

/// Exponents with nonzero coefficient. Throws EmptySupportError for the zero polynomial.
std::set<ExponentVector, GradedLexLess> support(const MultiPoly& f);

/// One term per line: "c_re c_im : a_1 ... a_m".
std::string to_text(const MultiPoly& f);

/// Parses the text format. Blank lines and lines starting with '#' are ignored.
/// `nvars` is required only when the text holds no terms. The field tag is real
/// when every imaginary part is zero.
MultiPoly from_text(const std::string& text, std::size_t nvars = 0);

}  // namespace amoeba
