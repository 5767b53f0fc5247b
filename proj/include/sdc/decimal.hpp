#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace sdc {

// 50 significant decimal digits. Decimal literals such as 0.99996 or 31.1035
// are represented exactly, so only genuinely irrational intermediates round.
using Decimal = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>,
                                              boost::multiprecision::et_off>;

inline constexpr int kWeightPlaces = 4;
inline constexpr int kMoneyPlaces = 2;

/// Parses `[+-]digits[.digits][e[+-]digits]`. Rejects anything else, including
/// empty input, hex, inf and nan.
Decimal parse_decimal(std::string_view text);

/// Quotient rounded to 60 significant digits. The backend's raw division can
/// miss an exact quotient in its guard digits (0.06 / 60 != 0.001); rounding
/// restores every terminating result. Use this instead of operator/.
Decimal divide(const Decimal& numerator, const Decimal& denominator);

Decimal round_half_even(const Decimal& value, int places);

/// Rounds half-even to `places` and renders in plain fixed notation.
std::string format_fixed(const Decimal& value, int places);

/// Shortest plain form when the value is a short terminating decimal, otherwise
/// a full-precision scientific form. `parse_decimal(to_canonical(x)) == x`.
std::string to_canonical(const Decimal& value);

/// Square-and-multiply; exact step sequence, so results are identical on every
/// platform.
Decimal pow_by_squaring(Decimal base, std::uint64_t exponent);

}  // namespace sdc
