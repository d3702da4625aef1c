#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace cgt {

/// Unbounded ascending prime sequence, incremental sieve of Eratosthenes:
/// each known composite maps to the primes that witness it.
class PrimeStream {
 public:
  std::uint64_t next();

 private:
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> witnesses_;
  std::uint64_t candidate_ = 2;
};

/// First `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

/// All primes <= limit.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace cgt
