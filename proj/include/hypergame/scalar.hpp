#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace hypergame {

// Exact rational. Every distance, radius and measure in the engine is one.
using Scalar = mpq_class;

// num/den in lowest terms. den must be nonzero.
Scalar rational(long num, long den = 1);

// Accepts "p/q" or "p" (optionally signed). Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

// Always "p/q" in lowest terms with q >= 1, e.g. "0/1", "1/30".
std::string to_string(const Scalar& q);

// 2^-m
Scalar inverse_power_of_two(std::size_t m);

}  // namespace hypergame
