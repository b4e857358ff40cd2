#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

#include "fmcw/matrix.hpp"

namespace fmcw {

/// SplitMix64 finalizer. Used as the mixing function of the counter-based
/// key derivation below.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream key from a root seed and a path of counters,
/// e.g. derive_seed(master, {p_bits, trial, stream}). Each level is absorbed
/// through mix64, so distinct paths give unrelated keys.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t key = mix64(root);
    for (std::uint64_t step : path) {
        key = mix64(key ^ mix64(step + 0x632be59bd9b4e019ULL));
    }
    return key;
}

/// Sub-stream identifiers inside one trial.
enum class Stream : std::uint64_t {
    Scene = 1,
    Interferers = 2,
    Noise = 3,
};

/// mt19937_64 with hand-written distributions, so draws are identical on
/// every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in (lo, hi].
    double uniform_open_closed(double lo, double hi) { return hi - (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Index drawn proportionally to non-negative weights.
    std::size_t categorical(std::span<const double> weights);

    /// Standard normal via Box-Muller; caches the second variate.
    double normal();

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace fmcw
