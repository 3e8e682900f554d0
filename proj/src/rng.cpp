#include "amoeba/rng.hpp"

#include <cmath>
#include <numbers>

namespace amoeba {

std::uint64_t mix64(std::uint64_t x) {
    // SplitMix64 finalizer.
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t hash_label(const std::string& label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : label) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_key(const SeedContext& seed) {
    std::uint64_t k = mix64(seed.master_seed + kGolden);
    k = mix64(k ^ (seed.trial_index * kGolden + 0x632be59bd9b4e019ULL));
    k = mix64(k ^ hash_label(seed.stream_label));
    return k;
}

CounterRng::CounterRng(const SeedContext& seed) : key_(derive_key(seed)) {}

CounterRng::result_type CounterRng::operator()() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::standard_normal() {
    // Box-Muller, one output per call so each draw consumes a fixed amount of stream.
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> CounterRng::standard_complex_normal() {
    const double s = std::sqrt(0.5);
    const double re = standard_normal();
    const double im = standard_normal();
    return {s * re, s * im};
}

}  // namespace amoeba
