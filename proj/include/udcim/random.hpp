#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace udcim {

// All stochastic components draw from this engine. The helpers below avoid
// std distributions so sequences are identical across standard libraries.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double unit_uniform(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = Rng::max() - Rng::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[uniform_index(rng, i)]);
    }
}

// Moves a uniform random `count`-subset of `values` to its front, in random order.
template <typename T>
void partial_shuffle(std::span<T> values, std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count && i + 1 < values.size(); ++i) {
        std::swap(values[i], values[i + uniform_index(rng, values.size() - i)]);
    }
}

} // namespace udcim
