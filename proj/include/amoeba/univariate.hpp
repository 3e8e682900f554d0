#pragma once

#include "amoeba/errors.hpp"
#include "amoeba/polycore.hpp"

#include <vector>

namespace amoeba {

/// Dense univariate polynomial, coefficients in ascending degree order.
class UniPoly {
public:
    /// Trailing exact zeros in the high degrees are dropped; throws
    /// ArgumentError if nothing is left.
    explicit UniPoly(std::vector<cplx> coefficients, Field field = Field::complex);
    static UniPoly real(const std::vector<double>& coefficients);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return coeffs_; }
    Field field() const { return field_; }

    cplx operator()(cplx z) const;

private:
    std::vector<cplx> coeffs_;
    Field field_;
};

/// Univariate view of a one-variable MultiPoly.
UniPoly to_unipoly(const MultiPoly& f);

/// Distinct real roots on the whole line, by sign variations of the Sturm chain
/// at -inf and +inf. Throws UnreliableCountError when a chain remainder drops
/// to numerical zero.
int sturm_count_real_roots(const UniPoly& p);

class RootFindingFailureWithPartial : public RootFindingFailure {
public:
    RootFindingFailureWithPartial(const std::string& what, std::vector<cplx> partial,
                                  std::vector<bool> converged)
        : RootFindingFailure(what), partial_(std::move(partial)), converged_(std::move(converged)) {}

    const std::vector<cplx>& partial() const { return partial_; }
    const std::vector<bool>& converged() const { return converged_; }

private:
    std::vector<cplx> partial_;
    std::vector<bool> converged_;
};

/// All deg(p) roots with multiplicity. Degrees 1 and 2 are solved in closed
/// form; higher degrees use Durand-Kerner simultaneous iteration from a circle.
std::vector<cplx> all_complex_roots(const UniPoly& p);

/// Polynomial value together with sum |c_k| |z|^k, the scale used for backward error.
struct ScaledValue {
    cplx value;
    double scale;
};
ScaledValue evaluate_scaled(const UniPoly& p, cplx z);

}  // namespace amoeba
