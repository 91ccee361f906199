#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace aggpack {

// Exact signed integer of unbounded size. Every coefficient, bound and item
// size in this library is a BigInt; there is no fixed-width fast path.
using BigInt = boost::multiprecision::cpp_int;

// Strict decimal parser: optional leading '-', then digits only.
// Throws std::invalid_argument on anything else.
BigInt parse_bigint(std::string_view text);

// base^exp for a machine-sized exponent.
BigInt bpow(const BigInt& base, std::uint64_t exp);

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace aggpack
