#include "cgt/comparison.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cgt/bounds.hpp"
#include "cgt/crs.hpp"
#include "cgt/errors.hpp"
#include "cgt/rake_winnow.hpp"
#include "cgt/small_d.hpp"

namespace cgt {
namespace {

const std::vector<std::string> kMethods = {"d2", "d3", "crs", "crs-bt", "rw", "mr", "ks", "hs",
                                           "dh3"};

void check_method_for_d(const std::string& m, unsigned d) {
  if (!is_known_method(m)) throw InputError("unknown method '" + m + "'");
  if ((m == "d2" || m == "mr" || m == "ks") && d != 2) {
    throw InputError("method '" + m + "' only applies to d=2");
  }
  if ((m == "d3" || m == "dh3") && d != 3) {
    throw InputError("method '" + m + "' only applies to d=3");
  }
}

}  // namespace

bool is_known_method(const std::string& tag) {
  return std::find(kMethods.begin(), kMethods.end(), tag) != kMethods.end();
}

std::optional<std::uint64_t> ComparisonRow::get(const std::string& method) const {
  for (const auto& [m, t] : per_method) {
    if (m == method) return t;
  }
  return std::nullopt;
}

std::uint64_t method_test_count(const std::string& method, const BigInt& n, unsigned d) {
  check_method_for_d(method, d);
  if (method == "d2") return d2_test_count(d2_min_q(n));
  if (method == "d3") return d3_test_count(d3_min_q(n));
  if (method == "crs") return select_prime_plan(n, d).cost();
  if (method == "crs-bt") return optimized_prime_plan(n, d).cost();
  if (method == "rw") return 2 * stage1_test_count(n, d, d);
  if (method == "mr") return mr_bound(n);
  if (method == "ks") return ks_bound(n);
  if (method == "hs") return hs_bound(n, d);
  return dh3_bound(n);
}

std::vector<ComparisonRow> comparison_table(unsigned d, const std::vector<BigInt>& ns,
                                            const std::vector<std::string>& methods) {
  if (d < 1) throw InputError("d must be at least 1");
  for (const auto& m : methods) check_method_for_d(m, d);
  std::vector<ComparisonRow> rows(ns.size());
  std::vector<std::exception_ptr> errors(ns.size());
  // Rows are independent; the backtracking cells dominate the cost.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(ns.size()); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      rows[idx].n = ns[idx];
      for (const auto& m : methods) {
        rows[idx].per_method.emplace_back(m, method_test_count(m, ns[idx], d));
      }
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::vector<std::string> default_methods(unsigned d) {
  if (d == 2) return {"d2", "crs-bt", "crs", "mr", "ks", "hs", "rw"};
  if (d == 3) return {"crs-bt", "crs", "d3", "hs", "dh3", "rw"};
  return {"crs-bt", "crs", "hs", "rw"};
}

std::string format_n(const BigInt& n) {
  for (unsigned base : {10u, 3u}) {
    if (n < BigInt(base) * base * base) continue;
    BigInt v = n;
    unsigned e = 0;
    while (v > 1 && v % base == 0) {
      v /= base;
      ++e;
    }
    if (v == 1) return std::to_string(base) + "^" + std::to_string(e);
  }
  return n.str();
}

void render_text(std::ostream& os, unsigned d, const std::vector<std::string>& methods,
                 const std::vector<ComparisonRow>& rows) {
  std::vector<std::string> header{"(d=" + std::to_string(d) + ")"};
  for (const auto& r : rows) header.push_back(format_n(r.n));
  std::vector<std::vector<std::string>> table{header};
  for (const auto& m : methods) {
    std::vector<std::string> line{m};
    for (const auto& r : rows) {
      auto v = r.get(m);
      line.push_back(v ? std::to_string(*v) : "");
    }
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : table) {
    os << std::left << std::setw(static_cast<int>(width[0])) << line[0];
    for (std::size_t c = 1; c < line.size(); ++c) {
      os << "  " << std::right << std::setw(static_cast<int>(width[c])) << line[c];
    }
    os << '\n';
  }
  if (std::find(methods.begin(), methods.end(), "rw") != methods.end()) {
    os << "(rw = expected stage-1 pooled tests of the two-stage protocol, 2t with k=d)\n";
  }
}

void render_csv(std::ostream& os, const std::vector<std::string>& methods,
                const std::vector<ComparisonRow>& rows) {
  os << 'n';
  for (const auto& m : methods) os << ',' << m;
  os << '\n';
  for (const auto& r : rows) {
    os << r.n.str();
    for (const auto& m : methods) {
      os << ',';
      if (auto v = r.get(m)) os << *v;
    }
    os << '\n';
  }
}

Fixture read_fixture(std::istream& is) {
  Fixture f;
  std::string line;
  bool have_header = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (!have_header) {
      if (cells.empty() || cells[0] != "n") throw InputError("fixture header must start with 'n'");
      f.methods.assign(cells.begin() + 1, cells.end());
      for (const auto& m : f.methods) {
        if (!is_known_method(m)) throw InputError("fixture names unknown method '" + m + "'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() > f.methods.size() + 1) throw InputError("fixture row has too many cells");
    f.ns.push_back(parse_big(cells[0]));
    std::vector<std::optional<std::uint64_t>> row(f.methods.size());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (!cells[c].empty()) row[c - 1] = std::stoull(cells[c]);
    }
    f.cells.push_back(std::move(row));
  }
  if (!have_header) throw InputError("fixture has no header");
  return f;
}

std::vector<FixtureMismatch> diff_fixture(unsigned d, const Fixture& f) {
  std::vector<FixtureMismatch> out;
  for (std::size_t r = 0; r < f.ns.size(); ++r) {
    for (std::size_t c = 0; c < f.methods.size(); ++c) {
      if (!f.cells[r][c]) continue;
      const std::uint64_t actual = method_test_count(f.methods[c], f.ns[r], d);
      if (actual != *f.cells[r][c]) out.push_back({f.ns[r], f.methods[c], *f.cells[r][c], actual});
    }
  }
  return out;
}

}  // namespace cgt
