#include "cgt/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "cgt/errors.hpp"

namespace cgt {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kCrs: return "crs";
    case Method::kRw: return "rw";
    case Method::kD2: return "d2";
    case Method::kD3: return "d3";
    case Method::kCustom: return "custom";
  }
  return "custom";
}

Method parse_method(std::string_view s) {
  if (s == "crs") return Method::kCrs;
  if (s == "rw") return Method::kRw;
  if (s == "d2") return Method::kD2;
  if (s == "d3") return Method::kD3;
  if (s == "custom") return Method::kCustom;
  throw InputError("unknown method '" + std::string(s) + "'");
}

std::uint64_t PrimePower::value() const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exponent; ++i) v *= prime;
  return v;
}

TestMatrix::TestMatrix(std::uint64_t n, std::vector<Row> rows, Method method, unsigned d,
                       MethodParams params)
    : n_(n), rows_(std::move(rows)), method_(method), d_(d), params_(std::move(params)) {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] >= n_) {
        throw InputError("row " + std::to_string(r) + ": column " + std::to_string(row[i]) +
                         " out of range for n=" + std::to_string(n_));
      }
      if (i > 0 && row[i] <= row[i - 1]) {
        throw InputError("row " + std::to_string(r) + " is not strictly increasing");
      }
    }
  }
}

std::vector<std::vector<std::uint32_t>> TestMatrix::columns() const {
  std::vector<std::vector<std::uint32_t>> cols(n_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (ItemIndex j : rows_[r]) cols[j].push_back(static_cast<std::uint32_t>(r));
  }
  return cols;
}

std::string OutcomeVector::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

OutcomeVector OutcomeVector::parse(std::string_view s) {
  OutcomeVector o;
  o.bits.reserve(s.size());
  for (char c : s) {
    if (c == '0' || c == '1') {
      o.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw InputError(std::string("outcome character '") + c + "' is not 0 or 1");
    }
  }
  return o;
}

DefectiveSet::DefectiveSet(std::initializer_list<ItemIndex> items)
    : DefectiveSet(std::vector<ItemIndex>(items)) {}

DefectiveSet::DefectiveSet(std::vector<ItemIndex> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw InputError("defective set contains a duplicate index");
  }
}

bool DefectiveSet::contains(ItemIndex i) const {
  return std::binary_search(items_.begin(), items_.end(), i);
}

std::string DefectiveSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < items_.size(); ++i) os << (i ? "," : "") << items_[i];
  os << '}';
  return os.str();
}

void DefectiveSet::check_bounds(std::uint64_t n) const {
  if (!items_.empty() && items_.back() >= n) {
    throw InputError("defective index " + std::to_string(items_.back()) +
                     " out of range for n=" + std::to_string(n));
  }
}

std::string describe(const DecodeResult& r) {
  struct {
    std::string operator()(const Identified& x) const { return "identified " + x.items.to_string(); }
    std::string operator()(const Overflow& x) const {
      return "overflow: " + std::to_string(x.count) + " survivors";
    }
    std::string operator()(const Candidates& x) const { return "candidates " + x.items.to_string(); }
  } visitor;
  return std::visit(visitor, r);
}

OutcomeVector run_tests(const TestMatrix& m, const DefectiveSet& defectives) {
  defectives.check_bounds(m.n());
  OutcomeVector o;
  o.bits.assign(m.t(), 0);
  if (defectives.empty()) return o;
  for (std::size_t r = 0; r < m.t(); ++r) {
    auto row = m.row(r);
    o.bits[r] = std::any_of(row.begin(), row.end(),
                            [&](ItemIndex j) { return defectives.contains(j); });
  }
  return o;
}

std::size_t sampling_rate(const TestMatrix& m) {
  std::vector<std::size_t> weight(m.n(), 0);
  for (const Row& row : m.rows()) {
    for (ItemIndex j : row) ++weight[j];
  }
  return weight.empty() ? 0 : *std::max_element(weight.begin(), weight.end());
}

}  // namespace cgt
