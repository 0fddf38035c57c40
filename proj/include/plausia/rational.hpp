#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace plausia {

// All arithmetic in this library is exact. Thresholds like ">= d" are
// order-sensitive, so there is no floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical text form: "13/50", or just "3" when the denominator is 1.
std::string format_rational(const Rational& r);

/// Parses "n" or "n/d" with non-negative integers and d > 0. Anything else
/// (decimals included, by design) yields nullopt.
std::optional<Rational> parse_rational(std::string_view text);

/// Exact conversion to int64 if the value fits.
std::optional<std::int64_t> to_int64(const BigInt& v);

}  // namespace plausia
