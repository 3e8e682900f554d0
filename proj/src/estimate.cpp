#include "amoeba/estimate.hpp"

#include "amoeba/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace amoeba {

double MCEstimate::discard_rate() const {
    const int total = n_trials + n_discarded;
    return total == 0 ? 0.0 : static_cast<double>(n_discarded) / total;
}

bool MCEstimate::within(double k) const {
    if (!target) return false;
    const double floor = 1e-9 * std::max(1.0, std::abs(*target));
    return std::abs(mean - *target) <= k * std_error + floor;
}

MCEstimate aggregate(const std::vector<double>& values, int n_discarded, std::optional<double> target,
                     std::uint64_t seed, double max_discard_rate) {
    MCEstimate e;
    e.n_trials = static_cast<int>(values.size());
    e.n_discarded = n_discarded;
    e.target = target;
    e.seed = seed;
    if (values.empty()) throw InvalidRunError("every trial was discarded");
    if (e.discard_rate() >= max_discard_rate) {
        throw InvalidRunError("discard rate " + std::to_string(e.discard_rate()) + " (" +
                              std::to_string(n_discarded) + " of " +
                              std::to_string(n_discarded + e.n_trials) + ") exceeds the cap");
    }
    // Compensated two-pass mean and variance; summation is in trial order.
    double sum = 0.0;
    for (double v : values) sum += v;
    e.mean = sum / e.n_trials;
    if (e.n_trials > 1) {
        double ss = 0.0;
        double corr = 0.0;
        for (double v : values) {
            ss += (v - e.mean) * (v - e.mean);
            corr += v - e.mean;
        }
        const double var = (ss - corr * corr / e.n_trials) / (e.n_trials - 1);
        e.std_error = std::sqrt(std::max(var, 0.0) / e.n_trials);
    }
    e.ci95 = {e.mean - 1.959963984540054 * e.std_error, e.mean + 1.959963984540054 * e.std_error};
    return e;
}

MCEstimate scaled(const MCEstimate& e, double factor) {
    MCEstimate s = e;
    s.mean *= factor;
    s.std_error *= factor;
    s.ci95 = {e.ci95.first * factor, e.ci95.second * factor};
    if (e.target) s.target = *e.target * factor;
    return s;
}

double two_sample_z(const MCEstimate& a, const MCEstimate& b) {
    const double diff = std::abs(a.mean - b.mean);
    const double se = std::hypot(a.std_error, b.std_error);
    if (se == 0.0) return diff <= 1e-9 * std::max(1.0, std::abs(a.mean)) ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / se;
}

}  // namespace amoeba
