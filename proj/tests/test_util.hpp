#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cgt/matrix.hpp"

namespace cgt::testing {

// Calls f on every subset of [0, n) with size <= max_size, smallest sizes
// first, each in lexicographic order.
inline void for_each_subset_upto(std::uint32_t n, unsigned max_size,
                                 const std::function<void(const std::vector<ItemIndex>&)>& f) {
  std::vector<ItemIndex> cur;
  std::function<void(ItemIndex, unsigned)> rec = [&](ItemIndex start, unsigned left) {
    if (left == 0) {
      f(cur);
      return;
    }
    for (ItemIndex i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1, left - 1);
      cur.pop_back();
    }
  };
  for (unsigned s = 0; s <= max_size && s <= n; ++s) rec(0, s);
}

// Definition-level disjunctness check over sparse rows, independent of the
// bitset kernels: every column j outside D needs a row containing j and no
// member of D.
inline bool naive_disjunct(const TestMatrix& m, unsigned d) {
  const auto n = static_cast<std::uint32_t>(m.n());
  bool ok = true;
  std::vector<ItemIndex> cur;
  std::function<void(ItemIndex, unsigned)> rec = [&](ItemIndex start, unsigned left) {
    if (!ok) return;
    if (left == 0) {
      for (ItemIndex j = 0; j < n && ok; ++j) {
        if (std::find(cur.begin(), cur.end(), j) != cur.end()) continue;
        bool separated = false;
        for (std::size_t r = 0; r < m.t() && !separated; ++r) {
          auto row = m.row(r);
          const bool has_j = std::find(row.begin(), row.end(), j) != row.end();
          if (!has_j) continue;
          separated = std::none_of(cur.begin(), cur.end(), [&](ItemIndex x) {
            return std::find(row.begin(), row.end(), x) != row.end();
          });
        }
        ok = separated;
      }
      return;
    }
    for (ItemIndex i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1, left - 1);
      cur.pop_back();
    }
  };
  rec(0, d);
  return ok;
}

// Each cell is 1 with probability `density`.
inline TestMatrix random_matrix(std::uint64_t n, std::size_t t, double density,
                                std::mt19937_64& gen) {
  std::bernoulli_distribution coin(density);
  std::vector<Row> rows(t);
  for (auto& row : rows) {
    for (ItemIndex j = 0; j < n; ++j) {
      if (coin(gen)) row.push_back(j);
    }
  }
  return TestMatrix(n, std::move(rows));
}

inline TestMatrix identity_matrix(std::uint64_t n) {
  std::vector<Row> rows;
  for (ItemIndex i = 0; i < n; ++i) rows.push_back({i});
  return TestMatrix(n, std::move(rows));
}

}  // namespace cgt::testing
