#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace deint::rnd {

// Uniform double in [0,1) built from the top 53 bits of the generator,
// so draws do not depend on the library's distribution implementation.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi] via rejection on the generator output.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    return lo + static_cast<std::int64_t>(draw % span);
}

}  // namespace deint::rnd
