#include "cgt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>
#include <unordered_map>

#include "cgt/errors.hpp"

namespace cgt {
namespace {

// Advances c to the next k-combination of [0, n) in lexicographic order,
// leaving the first `fixed` entries alone.
bool next_combination(std::vector<ItemIndex>& c, std::uint64_t n, std::size_t fixed = 0) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > fixed;) {
    if (c[i] < n - (k - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void check_d(const TestMatrix& m, unsigned d) {
  if (d >= m.n()) {
    throw InputError("d=" + std::to_string(d) + " must be smaller than n=" + std::to_string(m.n()));
  }
}

// For one subset D: the columns outside D that no row separates from D.
// Stops after `limit` of them.
std::vector<ItemIndex> indistinguishable(const ColumnBits& bits, std::uint64_t n,
                                         const std::vector<ItemIndex>& subset,
                                         std::vector<std::uint64_t>& cover, std::size_t limit) {
  const std::size_t w = bits.words();
  std::fill(cover.begin(), cover.end(), 0);
  for (ItemIndex i : subset) {
    const std::uint64_t* col = bits.column(i);
    for (std::size_t k = 0; k < w; ++k) cover[k] |= col[k];
  }
  std::vector<ItemIndex> out;
  std::size_t next_member = 0;
  for (std::uint64_t j = 0; j < n; ++j) {
    if (next_member < subset.size() && subset[next_member] == j) {
      ++next_member;
      continue;
    }
    const std::uint64_t* col = bits.column(j);
    bool separated = false;
    for (std::size_t k = 0; k < w && !separated; ++k) separated = (col[k] & ~cover[k]) != 0;
    if (!separated) {
      out.push_back(static_cast<ItemIndex>(j));
      if (out.size() >= limit) break;
    }
  }
  return out;
}

// Shared kernel for disjunct (k = 1) and resolvable: D fails when at least k
// columns are indistinguishable from it. The first failing subset in
// lexicographic order is reported, under either execution policy.
VerifyReport resolvable_kernel(const TestMatrix& m, unsigned d, unsigned k, Exec exec) {
  const std::uint64_t n = m.n();
  const ColumnBits bits(m);
  VerifyReport report;
  report.subsets_checked = binomial(n, d);

  if (d == 0) {
    std::vector<std::uint64_t> cover(bits.words());
    std::vector<ItemIndex> empty;
    auto bad = indistinguishable(bits, n, empty, cover, k);
    if (bad.size() >= k) report = {false, Counterexample{{}, std::move(bad)}, 1};
    return report;
  }

  // Partition by the smallest element of D.
  const std::int64_t heads = static_cast<std::int64_t>(n - d + 1);
  std::atomic<std::int64_t> first_bad{std::numeric_limits<std::int64_t>::max()};
  std::vector<std::optional<Counterexample>> found(static_cast<std::size_t>(heads));

  auto scan_head = [&](std::int64_t head) {
    if (head > first_bad.load(std::memory_order_relaxed)) return;
    std::vector<std::uint64_t> cover(bits.words());
    std::vector<ItemIndex> c(d);
    for (unsigned i = 0; i < d; ++i) c[i] = static_cast<ItemIndex>(head + i);
    do {
      auto bad = indistinguishable(bits, n, c, cover, k);
      if (bad.size() >= k) {
        found[static_cast<std::size_t>(head)] = Counterexample{c, std::move(bad)};
        std::int64_t cur = first_bad.load();
        while (head < cur && !first_bad.compare_exchange_weak(cur, head)) {
        }
        return;
      }
    } while (next_combination(c, n, 1));
  };

  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t head = 0; head < heads; ++head) scan_head(head);
  } else {
    for (std::int64_t head = 0; head < heads; ++head) {
      scan_head(head);
      if (first_bad.load() != std::numeric_limits<std::int64_t>::max()) break;
    }
  }

  const std::int64_t bad = first_bad.load();
  if (bad != std::numeric_limits<std::int64_t>::max()) {
    report.pass = false;
    report.counterexample = std::move(found[static_cast<std::size_t>(bad)]);
  }
  return report;
}

}  // namespace

ColumnBits::ColumnBits(const TestMatrix& m) : words_((m.t() + 63) / 64) {
  words_ = std::max<std::size_t>(words_, 1);
  bits_.assign(m.n() * words_, 0);
  for (std::size_t r = 0; r < m.t(); ++r) {
    for (ItemIndex j : m.row(r)) bits_[j * words_ + r / 64] |= std::uint64_t{1} << (r % 64);
  }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

void check_guard(std::uint64_t n, std::uint64_t subsets, const VerifyGuard& guard) {
  if (guard.force) return;
  if (n > guard.max_n) {
    throw GuardExceeded("n=" + std::to_string(n) + " exceeds the brute-force limit of " +
                        std::to_string(guard.max_n) + " items (use --force to override)");
  }
  if (subsets > guard.max_subsets) {
    throw GuardExceeded(std::to_string(subsets) + " subsets exceed the brute-force limit of " +
                        std::to_string(guard.max_subsets) + " (use --force to override)");
  }
}

VerifyReport check_d_disjunct(const TestMatrix& m, unsigned d, const VerifyGuard& guard,
                              Exec exec) {
  check_d(m, d);
  check_guard(m.n(), binomial(m.n(), d), guard);
  return resolvable_kernel(m, d, 1, exec);
}

bool is_d_disjunct(const TestMatrix& m, unsigned d, const VerifyGuard& guard) {
  return check_d_disjunct(m, d, guard).pass;
}

VerifyReport check_dk_resolvable(const TestMatrix& m, unsigned d, unsigned k,
                                 const VerifyGuard& guard, Exec exec) {
  check_d(m, d);
  if (k == 0) throw InputError("k must be at least 1");
  check_guard(m.n(), binomial(m.n(), d), guard);
  return resolvable_kernel(m, d, k, exec);
}

bool is_dk_resolvable(const TestMatrix& m, unsigned d, unsigned k, const VerifyGuard& guard) {
  return check_dk_resolvable(m, d, k, guard).pass;
}

VerifyReport check_separable_upto(const TestMatrix& m, unsigned d, const VerifyGuard& guard) {
  check_d(m, d);
  const std::uint64_t n = m.n();
  std::uint64_t total = 0;
  for (unsigned s = 0; s <= d; ++s) {
    total = std::min(total + binomial(n, s), std::numeric_limits<std::uint64_t>::max() / 2);
  }
  check_guard(n, total, guard);

  const ColumnBits bits(m);
  const std::size_t w = bits.words();
  std::unordered_map<std::string, std::vector<ItemIndex>> seen;
  seen.reserve(static_cast<std::size_t>(total));
  std::vector<std::uint64_t> cover(w);

  VerifyReport report;
  for (unsigned s = 0; s <= d; ++s) {
    std::vector<ItemIndex> c(s);
    for (unsigned i = 0; i < s; ++i) c[i] = i;
    do {
      std::fill(cover.begin(), cover.end(), 0);
      for (ItemIndex i : c) {
        const std::uint64_t* col = bits.column(i);
        for (std::size_t k = 0; k < w; ++k) cover[k] |= col[k];
      }
      std::string key(reinterpret_cast<const char*>(cover.data()), w * sizeof(std::uint64_t));
      ++report.subsets_checked;
      auto [it, inserted] = seen.emplace(std::move(key), c);
      if (!inserted) {
        report.pass = false;
        report.counterexample = Counterexample{it->second, c};
        return report;
      }
    } while (s > 0 && next_combination(c, n));
  }
  return report;
}

bool is_separable_upto(const TestMatrix& m, unsigned d, const VerifyGuard& guard) {
  return check_separable_upto(m, d, guard).pass;
}

}  // namespace cgt
