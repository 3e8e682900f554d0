#pragma once

#include "amoeba/polycore.hpp"
#include "amoeba/rng.hpp"

#include <optional>
#include <vector>

namespace amoeba {

enum class EnsembleKind { dense_kostlan, sparse_toric };

/// A Gaussian polynomial ensemble with independent coefficients.
///
/// Dense Kostlan ensembles are homogeneous of degree d in `nvars_ambient`
/// variables. Sparse toric ensembles live on `support` (dilated d times by
/// convolution) in `nvars_ambient` variables.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::dense_kostlan;
    std::size_t nvars_ambient = 0;
    int degree_or_dilation = 1;
    std::optional<std::vector<ExponentVector>> support;
    std::optional<std::vector<double>> base_variances;
    Field field = Field::complex;

    static EnsembleSpec dense(std::size_t nvars_homogeneous, int degree, Field field);
    static EnsembleSpec sparse(std::vector<ExponentVector> support, std::vector<double> variances,
                               int dilation, Field field);

    /// Throws ArgumentError (or DegenerateSupportError for a flat support).
    void validate() const;
};

/// d! / (alpha_0! ... alpha_m!) with d = |alpha|.
double multinomial(const ExponentVector& alpha);

/// All exponents of total degree d in `nvars` variables, graded-lex ascending.
std::vector<ExponentVector> homogeneous_exponents(std::size_t nvars, int d);

MultiPoly sample_dense_complex(const EnsembleSpec& spec, const SeedContext& seed);
MultiPoly sample_dense_real(const EnsembleSpec& spec, const SeedContext& seed);

struct DilatedSupport {
    std::vector<ExponentVector> support;
    std::vector<double> variances;
};

/// d-fold convolution of the weighted counting measure on `support`.
DilatedSupport dilated_variances(const std::vector<ExponentVector>& support,
                                 const std::vector<double>& base_variances, int d);

MultiPoly sample_sparse(const EnsembleSpec& spec, const SeedContext& seed);

/// Dispatches on spec.kind and spec.field.
MultiPoly sample(const EnsembleSpec& spec, const SeedContext& seed);

/// Coefficient variances the ensemble assigns, keyed like the sampled polynomial.
DilatedSupport ensemble_variances(const EnsembleSpec& spec);

}  // namespace amoeba
