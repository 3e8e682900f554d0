#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>

namespace amoeba {

/// (master_seed, trial_index, stream_label) names one random stream.
struct SeedContext {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    std::string stream_label;

    SeedContext with_label(std::string label) const {
        return {master_seed, trial_index, std::move(label)};
    }
};

/// Counter-based generator: the n-th output is a keyed hash of n, so streams
/// derived from distinct keys never share state and need no ordering.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key) : key_(key) {}
    explicit CounterRng(const SeedContext& seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform in [0, 1).
    double uniform();
    double standard_normal();
    /// E|g|^2 = 1, independent N(0, 1/2) real and imaginary parts.
    std::complex<double> standard_complex_normal();

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

std::uint64_t derive_key(const SeedContext& seed);

}  // namespace amoeba
