#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cgt {

using ItemIndex = std::uint32_t;
using Row = std::vector<ItemIndex>;

enum class Method { kCrs, kRw, kD2, kD3, kCustom };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct CrsParams {
  std::vector<PrimePower> powers;
  friend bool operator==(const CrsParams&, const CrsParams&) = default;
};

struct RwParams {
  std::uint64_t n = 0;
  unsigned d = 0;
  unsigned k = 0;
  std::uint64_t tparam = 0;  // rows = 2 * tparam
  std::uint64_t seed = 0;
  std::string gen;
  friend bool operator==(const RwParams&, const RwParams&) = default;
};

struct SmallDParams {
  unsigned q = 0;
  std::uint64_t effective_n = 0;
  friend bool operator==(const SmallDParams&, const SmallDParams&) = default;
};

using MethodParams = std::variant<std::monostate, CrsParams, RwParams, SmallDParams>;

/// t x n Boolean test regimen, stored as one sorted column list per test.
/// Immutable once constructed; safe to share across threads.
class TestMatrix {
 public:
  /// Validates that every index is < n and every row is strictly increasing.
  TestMatrix(std::uint64_t n, std::vector<Row> rows, Method method = Method::kCustom,
             unsigned d = 0, MethodParams params = {});

  std::uint64_t n() const { return n_; }
  std::size_t t() const { return rows_.size(); }
  unsigned d() const { return d_; }
  Method method() const { return method_; }
  const MethodParams& params() const { return params_; }

  std::span<const ItemIndex> row(std::size_t i) const { return rows_.at(i); }
  const std::vector<Row>& rows() const { return rows_; }

  /// For each column, the sorted list of rows that contain it.
  std::vector<std::vector<std::uint32_t>> columns() const;

  friend bool operator==(const TestMatrix&, const TestMatrix&) = default;

 private:
  std::uint64_t n_;
  std::vector<Row> rows_;
  Method method_;
  unsigned d_;
  MethodParams params_;
};

/// Test results, one entry per row; 1 = positive.
struct OutcomeVector {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  bool operator[](std::size_t i) const { return bits[i] != 0; }
  std::string to_string() const;
  static OutcomeVector parse(std::string_view s);
  friend bool operator==(const OutcomeVector&, const OutcomeVector&) = default;
};

/// Sorted, duplicate-free set of item indices.
class DefectiveSet {
 public:
  DefectiveSet() = default;
  DefectiveSet(std::initializer_list<ItemIndex> items);
  explicit DefectiveSet(std::vector<ItemIndex> items);

  std::span<const ItemIndex> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(ItemIndex i) const;
  std::string to_string() const;

  /// Throws InputError if any index is >= n.
  void check_bounds(std::uint64_t n) const;

  friend bool operator==(const DefectiveSet&, const DefectiveSet&) = default;

 private:
  std::vector<ItemIndex> items_;
};

struct Identified {
  DefectiveSet items;
  friend bool operator==(const Identified&, const Identified&) = default;
};

/// More than d items survived elimination.
struct Overflow {
  std::size_t count = 0;
  friend bool operator==(const Overflow&, const Overflow&) = default;
};

/// Survivors of a pooled stage that still need individual confirmation.
struct Candidates {
  DefectiveSet items;
  friend bool operator==(const Candidates&, const Candidates&) = default;
};

using DecodeResult = std::variant<Identified, Overflow, Candidates>;

std::string describe(const DecodeResult& r);

/// Outcome bit i is 1 iff row i meets the defective set.
OutcomeVector run_tests(const TestMatrix& m, const DefectiveSet& defectives);

/// S realized by the matrix: the largest number of rows any column appears in.
std::size_t sampling_rate(const TestMatrix& m);

}  // namespace cgt
