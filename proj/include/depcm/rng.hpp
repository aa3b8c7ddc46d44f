#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace depcm {

/// splitmix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix_seed(mix_seed(mix_seed(master) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

/// The single random stream owned by a run.
///
/// Distribution transforms are written out here instead of using the
/// <random> distributions so that traces are identical across standard
/// library implementations. Second arguments of normal() are variances,
/// matching randn(mu, sigma^2); cauchy() takes location and scale.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// uniform index in [0, n); n must be positive
    std::size_t index(std::size_t n) {
        const std::uint64_t range = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return static_cast<std::size_t>(v % range);
    }

    double normal(double mean, double variance) {
        // Marsaglia polar method, second deviate discarded so that every call
        // consumes a self-contained chunk of the stream
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return mean + std::sqrt(variance) * u * std::sqrt(-2.0 * std::log(s) / s);
    }

    double cauchy(double location, double scale) {
        return location + scale * std::tan(std::numbers::pi * (uniform() - 0.5));
    }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        shuffle(std::span<T>(items));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace depcm
