#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cgt/matrix.hpp"

namespace cgt {

/// Brute-force limits. Verifiers refuse instances beyond them unless forced.
struct VerifyGuard {
  std::uint64_t max_n = 64;
  std::uint64_t max_subsets = 10'000'000;
  bool force = false;
};

/// Execution policy for the subset-enumeration kernels. The serial path is
/// the reference; the parallel path must agree with it exactly.
enum class Exec { kSerial, kParallel };

/// A failing instance: the subset D and, when relevant, the offending column
/// (or the second subset, for separability).
struct Counterexample {
  std::vector<ItemIndex> subset;
  std::vector<ItemIndex> witness;
};

struct VerifyReport {
  bool pass = true;
  std::optional<Counterexample> counterexample;
  std::uint64_t subsets_checked = 0;
};

/// C(n, k) saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Throws GuardExceeded unless the guard admits C(n, d) subsets over n items.
void check_guard(std::uint64_t n, std::uint64_t subsets, const VerifyGuard& guard);

/// Every column outside any d-subset D has a row hitting it and missing D.
VerifyReport check_d_disjunct(const TestMatrix& m, unsigned d, const VerifyGuard& guard = {},
                              Exec exec = Exec::kParallel);
bool is_d_disjunct(const TestMatrix& m, unsigned d, const VerifyGuard& guard = {});

/// Boolean sums over all subsets of size <= d are pairwise distinct.
VerifyReport check_separable_upto(const TestMatrix& m, unsigned d, const VerifyGuard& guard = {});
bool is_separable_upto(const TestMatrix& m, unsigned d, const VerifyGuard& guard = {});

/// For every d-subset D, fewer than k columns outside D are indistinguishable
/// from D. (d,1)-resolvable is the same as d-disjunct.
VerifyReport check_dk_resolvable(const TestMatrix& m, unsigned d, unsigned k,
                                 const VerifyGuard& guard = {}, Exec exec = Exec::kParallel);
bool is_dk_resolvable(const TestMatrix& m, unsigned d, unsigned k, const VerifyGuard& guard = {});

/// Dense column bitsets over the rows, for the verification kernels.
class ColumnBits {
 public:
  explicit ColumnBits(const TestMatrix& m);

  std::size_t words() const { return words_; }
  const std::uint64_t* column(std::size_t j) const { return bits_.data() + j * words_; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace cgt
