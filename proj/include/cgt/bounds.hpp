#pragma once

#include <cstdint>

#include "cgt/bigint.hpp"

namespace cgt {

/// Hwang-Sos: 16 d^2 (1 + log3(2) + log3(2) lg n), rounded to nearest.
std::uint64_t hs_bound(const BigInt& n, unsigned d);

/// Macula-Reuter d=2: (q^2 + 3q)/2 with 2^q - 1 >= n.
std::uint64_t mr_bound(const BigInt& n);

/// Kautz-Singleton d=2: 3^(q+1) with 3^(2^q) >= n, q >= 1.
std::uint64_t ks_bound(const BigInt& n);

/// Du-Hwang d=3: 18q^2 - 6q with 2^q - 1 >= n.
std::uint64_t dh3_bound(const BigInt& n);

}  // namespace cgt
