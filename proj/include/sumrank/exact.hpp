#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace sumrank {

using ExactInt = boost::multiprecision::cpp_int;
/// Always held in lowest terms with a positive denominator.
using ExactRatio = boost::multiprecision::cpp_rational;

/// "num/den", including "1/1" and "0/1".
[[nodiscard]] std::string ratio_string(const ExactRatio& r);

/// Parses "num/den" or a bare integer. Throws ParseError.
[[nodiscard]] ExactRatio parse_ratio(const std::string& text);

/// Decimal rendering with exactly `significant` significant digits, rounded
/// half away from zero. Zero renders as "0".
[[nodiscard]] std::string to_decimal(const ExactRatio& r, unsigned significant);

[[nodiscard]] ExactInt ipow(std::uint64_t base, std::uint64_t exponent);

} // namespace sumrank
