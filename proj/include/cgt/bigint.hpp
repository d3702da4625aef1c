#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cgt {

using BigInt = boost::multiprecision::cpp_int;

BigInt pow_big(const BigInt& base, std::uint64_t exp);

/// Natural log of a positive big integer, accurate to double precision even
/// past the double range.
double ln_big(const BigInt& x);

/// Accepts plain decimal ("1000"), scientific ("1e30", "2.5e3" when the
/// result is integral) and power ("3^63", "10^4") notation.
BigInt parse_big(std::string_view s);

}  // namespace cgt
