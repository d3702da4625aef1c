#include "cgt/small_d.hpp"

#include <array>
#include <string>

#include "cgt/errors.hpp"

namespace cgt {
namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned q) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < q; ++i) {
    if (v > (std::uint64_t{1} << 32) / base) throw InputError("q too large for an explicit matrix");
    v *= base;
  }
  return v;
}

unsigned digit(std::uint64_t x, unsigned p, unsigned radix) {
  for (unsigned i = 0; i < p; ++i) x /= radix;
  return static_cast<unsigned>(x % radix);
}

// Outcome reader that counts every bit it looks at.
class Probe {
 public:
  Probe(const OutcomeVector& o, ProbeCounter* counter) : o_(o), counter_(counter) {}
  bool operator()(std::size_t row) const {
    if (counter_) ++counter_->reads;
    return o_[row];
  }

 private:
  const OutcomeVector& o_;
  ProbeCounter* counter_;
};

void check_outcomes(const OutcomeVector& o, std::uint64_t t) {
  if (o.size() != t) {
    throw InputError("outcome length " + std::to_string(o.size()) + " does not match t=" +
                     std::to_string(t));
  }
}

ItemIndex assemble(const std::vector<unsigned>& digits, unsigned radix, std::uint64_t effective_n) {
  std::uint64_t x = 0;
  for (std::size_t p = digits.size(); p-- > 0;) x = x * radix + digits[p];
  if (x >= effective_n) {
    throw ProtocolViolation("reconstructed item " + std::to_string(x) + " is outside n=" +
                            std::to_string(effective_n));
  }
  return static_cast<ItemIndex>(x);
}

}  // namespace

std::size_t pair_rank(unsigned q, unsigned p, unsigned p2) {
  // Rows for pairs starting at a < p come first: (q-1) + (q-2) + ... .
  const std::size_t before = static_cast<std::size_t>(p) * (2 * q - p - 1) / 2;
  return before + (p2 - p - 1);
}

std::uint64_t d2_test_count(unsigned q) { return (std::uint64_t{q} * q + 5ull * q) / 2; }

std::uint64_t d3_test_count(unsigned q) { return 2ull * q * q - 2ull * q; }

TestMatrix build_d2_matrix(unsigned q, std::uint64_t effective_n) {
  if (q < 1) throw InputError("d2 scheme needs q >= 1");
  const std::uint64_t full = checked_pow(3, q);
  if (effective_n < 1 || effective_n > full) {
    throw InputError("effective n must be in [1, 3^q]");
  }
  std::vector<Row> rows(d2_test_count(q));
  for (std::uint64_t x = 0; x < effective_n; ++x) {
    std::array<unsigned, 64> dig{};
    std::uint64_t rest = x;
    for (unsigned p = 0; p < q; ++p, rest /= 3) dig[p] = static_cast<unsigned>(rest % 3);
    const auto item = static_cast<ItemIndex>(x);
    for (unsigned p = 0; p < q; ++p) rows[3 * p + dig[p]].push_back(item);
    for (unsigned p = 0; p < q; ++p) {
      for (unsigned p2 = p + 1; p2 < q; ++p2) {
        if (dig[p] == dig[p2]) rows[3 * q + pair_rank(q, p, p2)].push_back(item);
      }
    }
  }
  return TestMatrix(effective_n, std::move(rows), Method::kD2, 2, SmallDParams{q, effective_n});
}

DecodeResult decode_d2(const OutcomeVector& o, const SmallDParams& params, ProbeCounter* probes) {
  const unsigned q = params.q;
  if (q < 1) throw InputError("d2 scheme needs q >= 1");
  check_outcomes(o, d2_test_count(q));
  const Probe test(o, probes);
  auto test_b = [&](unsigned p, unsigned v) { return test(3 * p + v); };
  auto test_c = [&](unsigned p, unsigned p2) { return test(3 * q + pair_rank(q, p, p2)); };

  std::vector<unsigned> d_digits(q), e_digits(q);
  int anchor = -1;
  unsigned anchor_d = 0, anchor_e = 0;
  for (unsigned p = 0; p < q; ++p) {
    std::array<unsigned, 3> present{};
    unsigned count = 0;
    for (unsigned v = 0; v < 3; ++v) {
      if (test_b(p, v)) present[count++] = v;
    }
    if (count == 0) {
      if (p == 0) return Identified{};
      throw ProtocolViolation("digit " + std::to_string(p) + " has no value but digit 0 does");
    }
    if (count == 3) throw ProtocolViolation("three digit values present: more than 2 defectives");
    if (count == 1) {
      d_digits[p] = e_digits[p] = present[0];
      continue;
    }
    const unsigned v1 = present[0], v2 = present[1];
    if (anchor < 0) {
      anchor = static_cast<int>(p);
      anchor_d = d_digits[p] = v1;
      anchor_e = e_digits[p] = v2;
      continue;
    }
    // test_C(p*, p) is positive iff D agrees with itself across p*, p or E
    // does. Exactly one of the two labelings predicts the observed bit.
    const bool keep_predicts = (v1 == anchor_d) || (v2 == anchor_e);
    if (test_c(static_cast<unsigned>(anchor), p) == keep_predicts) {
      d_digits[p] = v1;
      e_digits[p] = v2;
    } else {
      d_digits[p] = v2;
      e_digits[p] = v1;
    }
  }
  const ItemIndex d_item = assemble(d_digits, 3, params.effective_n);
  if (anchor < 0) return Identified{DefectiveSet{d_item}};
  return Identified{DefectiveSet{d_item, assemble(e_digits, 3, params.effective_n)}};
}

TestMatrix build_d3_matrix(unsigned q, std::uint64_t effective_n) {
  if (q < 2) throw InputError("d3 scheme needs q >= 2");
  const std::uint64_t full = checked_pow(2, q);
  if (effective_n < 1 || effective_n > full) {
    throw InputError("effective n must be in [1, 2^q]");
  }
  std::vector<Row> rows(d3_test_count(q));
  for (std::uint64_t x = 0; x < effective_n; ++x) {
    const auto item = static_cast<ItemIndex>(x);
    for (unsigned p = 0; p < q; ++p) {
      const unsigned v = digit(x, p, 2);
      for (unsigned p2 = p + 1; p2 < q; ++p2) {
        const unsigned v2 = digit(x, p2, 2);
        rows[4 * pair_rank(q, p, p2) + 2 * v + v2].push_back(item);
      }
    }
  }
  return TestMatrix(effective_n, std::move(rows), Method::kD3, 3, SmallDParams{q, effective_n});
}

DecodeResult decode_d3(const OutcomeVector& o, const SmallDParams& params, ProbeCounter* probes) {
  const unsigned q = params.q;
  if (q < 2) throw InputError("d3 scheme needs q >= 2");
  check_outcomes(o, d3_test_count(q));
  const Probe test(o, probes);
  // Rows are stored for p < p'; the swapped query reads the same row.
  auto test_m = [&](unsigned p, unsigned p2, unsigned v, unsigned v2) {
    if (p > p2) {
      std::swap(p, p2);
      std::swap(v, v2);
    }
    return test(4 * pair_rank(q, p, p2) + 2 * v + v2);
  };
  auto test_b = [&](unsigned p, unsigned v) {
    const unsigned partner = p == 0 ? 1 : 0;
    return test_m(p, partner, v, 0) || test_m(p, partner, v, 1);
  };

  std::vector<unsigned> d(q), e(q), f(q);
  std::vector<unsigned> ambiguous;
  for (unsigned p = 0; p < q; ++p) {
    const bool has0 = test_b(p, 0);
    const bool has1 = test_b(p, 1);
    if (!has0 && !has1) {
      if (p == 0) return Identified{};
      throw ProtocolViolation("digit " + std::to_string(p) + " has no value but digit 0 does");
    }
    if (has0 && has1) {
      ambiguous.push_back(p);
    } else {
      d[p] = e[p] = f[p] = has1 ? 1 : 0;
    }
  }
  const std::uint64_t effn = params.effective_n;
  if (ambiguous.empty()) return Identified{DefectiveSet{assemble(d, 2, effn)}};

  // Look for a position pair carrying three value combinations.
  int p1 = -1, p2 = -1;
  unsigned v1 = 0, v2 = 0;
  for (std::size_t i = 0; i < ambiguous.size() && p1 < 0; ++i) {
    for (std::size_t j = i + 1; j < ambiguous.size(); ++j) {
      const unsigned a = ambiguous[i], b = ambiguous[j];
      unsigned combos = 0, miss_a = 0, miss_b = 0;
      for (unsigned va = 0; va < 2; ++va) {
        for (unsigned vb = 0; vb < 2; ++vb) {
          if (test_m(a, b, va, vb)) {
            ++combos;
          } else {
            miss_a = va;
            miss_b = vb;
          }
        }
      }
      if (combos == 3) {
        p1 = static_cast<int>(a);
        p2 = static_cast<int>(b);
        v1 = miss_a;
        v2 = miss_b;
        break;
      }
      if (combos != 2) {
        throw ProtocolViolation("positions " + std::to_string(a) + "," + std::to_string(b) +
                                " show " + std::to_string(combos) + " value pairs");
      }
    }
  }

  if (p1 < 0) {
    const unsigned anchor = ambiguous.front();
    d[anchor] = 0;
    for (std::size_t i = 1; i < ambiguous.size(); ++i) {
      const unsigned p = ambiguous[i];
      d[p] = test_m(anchor, p, 0, 0) ? 0 : 1;
    }
    for (unsigned p : ambiguous) e[p] = 1 - d[p];
    return Identified{DefectiveSet{assemble(d, 2, effn), assemble(e, 2, effn)}};
  }

  const auto a = static_cast<unsigned>(p1), b = static_cast<unsigned>(p2);
  d[a] = v1;
  e[a] = f[a] = 1 - v1;
  e[b] = v2;
  f[b] = d[b] = 1 - v2;
  for (unsigned p : ambiguous) {
    if (p == a || p == b) continue;
    d[p] = test_m(a, p, v1, 0) ? 0 : 1;
    e[p] = test_m(b, p, v2, 0) ? 0 : 1;
    const unsigned v = e[p];
    f[p] = test_m(a, p, 1 - v1, 1 - v) ? 1 - v : v;
  }
  return Identified{DefectiveSet{assemble(d, 2, effn), assemble(e, 2, effn), assemble(f, 2, effn)}};
}

unsigned d2_min_q(const BigInt& n) {
  unsigned q = 1;
  BigInt cap = 3;
  while (cap < n) {
    cap *= 3;
    ++q;
  }
  return q;
}

unsigned d3_min_q(const BigInt& n) {
  unsigned q = 2;
  BigInt cap = 4;
  while (cap < n) {
    cap *= 2;
    ++q;
  }
  return q;
}

}  // namespace cgt
