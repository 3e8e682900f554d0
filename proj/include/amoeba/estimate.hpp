#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace amoeba {

/// Monte Carlo mean over the valid (non-discarded) trials.
struct MCEstimate {
    double mean = 0.0;
    /// Sample standard deviation / sqrt(n_trials).
    double std_error = 0.0;
    int n_trials = 0;
    int n_discarded = 0;
    std::pair<double, double> ci95{0.0, 0.0};
    std::optional<double> target;
    std::uint64_t seed = 0;

    double discard_rate() const;
    /// |mean - target| <= k SE, with a 1e-9 relative floor for zero-variance runs.
    bool within(double k = 4.0) const;
};

/// Builds an estimate from valid trial values.
/// Throws InvalidRunError when no trial is valid or the discard rate reaches `max_discard_rate`.
MCEstimate aggregate(const std::vector<double>& values, int n_discarded, std::optional<double> target,
                     std::uint64_t seed, double max_discard_rate = 0.02);

/// Multiplies mean, SE, interval and target by `factor` (> 0).
MCEstimate scaled(const MCEstimate& e, double factor);

/// |a.mean - b.mean| / sqrt(a.SE^2 + b.SE^2); 0 when both are exact and equal.
double two_sample_z(const MCEstimate& a, const MCEstimate& b);

}  // namespace amoeba
