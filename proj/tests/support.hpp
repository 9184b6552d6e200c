#pragma once

#include "stm/rational.hpp"
#include "stm/series.hpp"

#include <random>

namespace ts {

inline stm::Rational R(long long num, long long den = 1) {
    return stm::Rational(stm::BigInt(num), stm::BigInt(den));
}

// Shorthand for building a series from its canonical text.
inline stm::PowerSeries S(const char* text, int trunc_degree) {
    return stm::series_from_text(text, trunc_degree);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace ts
