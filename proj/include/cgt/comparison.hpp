#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgt/bigint.hpp"

namespace cgt {

/// Method tags: d2 d3 crs crs-bt rw mr ks hs dh3.
bool is_known_method(const std::string& tag);

struct ComparisonRow {
  BigInt n;
  std::vector<std::pair<std::string, std::uint64_t>> per_method;  // in request order

  std::optional<std::uint64_t> get(const std::string& method) const;
};

/// Throws InputError on unknown tags or tags invalid for d.
std::vector<ComparisonRow> comparison_table(unsigned d, const std::vector<BigInt>& ns,
                                            const std::vector<std::string>& methods);

/// Test count for a single (method, n, d) cell.
std::uint64_t method_test_count(const std::string& method, const BigInt& n, unsigned d);

/// Default method set for a given d, in the column order of the printed tables.
std::vector<std::string> default_methods(unsigned d);

/// n rendered as a power of 10 or 3 when exact ("10^6", "3^63"), else decimal.
std::string format_n(const BigInt& n);

void render_text(std::ostream& os, unsigned d, const std::vector<std::string>& methods,
                 const std::vector<ComparisonRow>& rows);
void render_csv(std::ostream& os, const std::vector<std::string>& methods,
                const std::vector<ComparisonRow>& rows);

/// Comma-separated fixture: header `n,<method>,...`, one row per n, blank
/// cells allowed. Lines starting with '#' are comments.
struct Fixture {
  std::vector<std::string> methods;
  std::vector<BigInt> ns;
  std::vector<std::vector<std::optional<std::uint64_t>>> cells;  // [row][method]
};

Fixture read_fixture(std::istream& is);

struct FixtureMismatch {
  BigInt n;
  std::string method;
  std::uint64_t expected = 0;
  std::uint64_t actual = 0;
};

/// Recomputes every populated fixture cell for d.
std::vector<FixtureMismatch> diff_fixture(unsigned d, const Fixture& f);

}  // namespace cgt
