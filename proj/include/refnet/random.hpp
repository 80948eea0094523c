#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace refnet {

using Rng = std::mt19937_64;

/// Seed for the `stream`-th independent substream of `seed` (splitmix64 mix).
/// Replicate i always gets the same stream, whatever the thread layout.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng{derive_seed(seed, stream)};
}

/// Uniform index in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::bernoulli_distribution(p)(rng);
}

inline long poisson(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<long>(mean)(rng);
}

inline double normal(Rng& rng, double mean, double sd) {
    if (sd <= 0.0) return mean;
    return std::normal_distribution<double>(mean, sd)(rng);
}

/// Index drawn with probability proportional to `weights`.
inline std::size_t weighted_index(Rng& rng, std::span<const double> weights) {
    return std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng);
}

}  // namespace refnet
