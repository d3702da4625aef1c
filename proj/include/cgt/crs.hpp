#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cgt/bigint.hpp"
#include "cgt/matrix.hpp"

namespace cgt {

/// Powers of distinct primes whose product covers n^d.
struct PrimePowerPlan {
  std::vector<PrimePower> entries;  // ascending primes, exponents >= 1
  BigInt target_n;
  unsigned target_d = 0;

  /// Sum of the prime powers, i.e. the number of tests.
  std::uint64_t cost() const;
  BigInt product() const;
  /// Whether product() >= target_n^target_d and the primes are ascending.
  bool valid() const;
  /// "2^2,3^2,5,7,11"
  std::string to_string() const;
  static std::vector<PrimePower> parse_powers(std::string_view s);
};

/// Shortest prefix of the primes, all exponents 1, whose product is >= n^d.
PrimePowerPlan select_prime_plan(const BigInt& n, unsigned d);

struct ExponentSearchResult {
  std::uint64_t cost = 0;
  std::vector<unsigned> exponents;  // aligned with the input primes, 0 = unused
  std::uint64_t nodes = 0;
};

/// Exponents e_j >= 0 with p_j^e_j <= maxpow and prod p_j^e_j >= target,
/// minimizing the sum of the used powers. Ties resolve to the
/// lexicographically smallest exponent list (smallest prime first).
/// Throws NoSolutionError when no assignment reaches the target.
ExponentSearchResult optimize_exponents(std::span<const std::uint64_t> primes,
                                        std::uint64_t maxpow, const BigInt& target);

/// Unpruned exhaustive search with the same contract; for cross-checking on
/// small inputs only.
ExponentSearchResult optimize_exponents_exhaustive(std::span<const std::uint64_t> primes,
                                                   std::uint64_t maxpow, const BigInt& target);

/// select_prime_plan followed by the exponent search over its primes, with
/// maxpow = the largest of them.
PrimePowerPlan optimized_prime_plan(const BigInt& n, unsigned d);

/// Row <j, x> holds every i < n with i = x (mod p_j^e_j); blocks in plan
/// order, residues ascending.
TestMatrix build_crs_matrix(std::uint64_t n, const PrimePowerPlan& plan);

/// Sum of the primes <= x.
std::uint64_t prime_sum(std::uint64_t x);

/// x^2 / (2 ln x) * (1 + 1.2762 / ln x), the upper bound on prime_sum(x).
double sigma_bound(std::uint64_t x);

/// sigma_bound(ceil(2 d ln n)); the all-exponent-1 plan costs less than this.
double theorem_bound(const BigInt& n, unsigned d);

struct BoundReport {
  double sigma_bound = 0;
  double theorem_bound = 0;
  std::uint64_t actual_t = 0;
  std::uint64_t sampling_rate = 0;
};

BoundReport bound_report(const BigInt& n, unsigned d);

}  // namespace cgt
