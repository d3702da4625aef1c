#include "cgt/bounds.hpp"

#include <cmath>

#include "cgt/errors.hpp"

namespace cgt {

std::uint64_t hs_bound(const BigInt& n, unsigned d) {
  if (n < 2 || d < 1) throw InputError("hs_bound needs n >= 2 and d >= 1");
  const double log3_2 = std::log(2.0) / std::log(3.0);
  const double lg_n = ln_big(n) / std::log(2.0);
  const double dd = d;
  return static_cast<std::uint64_t>(std::llround(16.0 * dd * dd * (1.0 + log3_2 + log3_2 * lg_n)));
}

namespace {

// Smallest q >= 1 with 2^q - 1 >= n.
std::uint64_t mersenne_q(const BigInt& n) {
  if (n < 1) throw InputError("n must be positive");
  std::uint64_t q = 1;
  BigInt cap = 1;  // 2^q - 1
  while (cap < n) {
    cap = cap * 2 + 1;
    ++q;
  }
  return q;
}

}  // namespace

std::uint64_t mr_bound(const BigInt& n) {
  const std::uint64_t q = mersenne_q(n);
  return (q * q + 3 * q) / 2;
}

std::uint64_t ks_bound(const BigInt& n) {
  if (n < 3) throw InputError("ks_bound needs n >= 3");
  std::uint64_t q = 1;
  BigInt cap = 9;  // 3^(2^q)
  while (cap < n) {
    cap *= cap;
    ++q;
  }
  return pow_big(3, q + 1).convert_to<std::uint64_t>();
}

std::uint64_t dh3_bound(const BigInt& n) {
  const std::uint64_t q = mersenne_q(n);
  return 18 * q * q - 6 * q;
}

}  // namespace cgt
