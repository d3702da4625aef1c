#include "cgt/bigint.hpp"

#include <cctype>
#include <cmath>

#include "cgt/errors.hpp"

namespace cgt {

BigInt pow_big(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return result;
}

double ln_big(const BigInt& x) {
  if (x <= 0) throw InputError("logarithm of a non-positive integer");
  // long double covers every magnitude this toolkit handles (~1e4932).
  if (boost::multiprecision::msb(x) < 16000) {
    return static_cast<double>(std::log(x.convert_to<long double>()));
  }
  const std::string digits = x.str();
  const long double lead = std::stold(digits.substr(0, 30));
  return static_cast<double>(std::log(lead) +
                             static_cast<long double>(digits.size() - 30) * std::log(10.0L));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_decimal(std::string_view s) {
  if (!all_digits(s)) throw InputError("not a non-negative integer: '" + std::string(s) + "'");
  return BigInt(std::string(s));
}

}  // namespace

BigInt parse_big(std::string_view s) {
  if (auto caret = s.find('^'); caret != std::string_view::npos) {
    const BigInt base = parse_decimal(s.substr(0, caret));
    const BigInt exp = parse_decimal(s.substr(caret + 1));
    if (exp > 100000) throw InputError("exponent too large in '" + std::string(s) + "'");
    return pow_big(base, exp.convert_to<std::uint64_t>());
  }
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view mant = s.substr(0, e);
    std::string_view exp_str = s.substr(e + 1);
    if (!exp_str.empty() && exp_str.front() == '+') exp_str.remove_prefix(1);
    const std::uint64_t exp = parse_decimal(exp_str).convert_to<std::uint64_t>();
    std::string digits;
    std::uint64_t frac = 0;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      digits = std::string(mant.substr(0, dot));
      std::string_view tail = mant.substr(dot + 1);
      digits += tail;
      frac = tail.size();
    } else {
      digits = std::string(mant);
    }
    if (frac > exp) {
      // Allowed only when the dropped digits are zeros.
      const std::size_t drop = static_cast<std::size_t>(frac - exp);
      if (drop > digits.size() ||
          digits.find_first_not_of('0', digits.size() - drop) != std::string::npos) {
        throw InputError("'" + std::string(s) + "' is not an integer");
      }
      return parse_decimal(digits.substr(0, digits.size() - drop));
    }
    return parse_decimal(digits) * pow_big(10, exp - frac);
  }
  return parse_decimal(s);
}

}  // namespace cgt
