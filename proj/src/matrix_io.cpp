#include "cgt/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cgt/crs.hpp"
#include "cgt/errors.hpp"

namespace cgt {
namespace {

std::uint64_t to_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string expect_prefix(const std::string& line, std::string_view prefix) {
  if (line.rfind(prefix, 0) != 0) {
    throw InputError("expected a line starting with '" + std::string(prefix) + "', got '" + line +
                     "'");
  }
  return line.substr(prefix.size());
}

std::map<std::string, std::string, std::less<>> split_params(std::string_view s) {
  std::map<std::string, std::string, std::less<>> kv;
  while (!s.empty()) {
    auto semi = s.find(';');
    std::string_view item = s.substr(0, semi);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("malformed params entry '" + std::string(item) + "'");
    }
    kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (semi == std::string_view::npos) break;
    s.remove_prefix(semi + 1);
  }
  return kv;
}

const std::string& require(const std::map<std::string, std::string, std::less<>>& kv,
                           std::string_view key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw InputError("params missing '" + std::string(key) + "'");
  return it->second;
}

bool getline_strip(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string format_params(const TestMatrix& m) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const CrsParams& p) const {
      PrimePowerPlan plan;
      plan.entries = p.powers;
      return "primepowers=" + plan.to_string();
    }
    std::string operator()(const RwParams& p) const {
      return "tparam=" + std::to_string(p.tparam) + ";k=" + std::to_string(p.k) +
             ";seed=" + std::to_string(p.seed) + ";gen=" + p.gen;
    }
    std::string operator()(const SmallDParams& p) const {
      return "q=" + std::to_string(p.q) + ";effn=" + std::to_string(p.effective_n);
    }
  } visitor;
  return std::visit(visitor, m.params());
}

void write_matrix(std::ostream& os, const TestMatrix& m) {
  os << "CGT1\n";
  os << "method=" << to_string(m.method()) << '\n';
  os << "n=" << m.n() << " t=" << m.t() << " d=" << m.d() << '\n';
  os << "params=" << format_params(m) << '\n';
  for (const Row& row : m.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
    os << '\n';
  }
}

TestMatrix read_matrix(std::istream& is) {
  std::string line;
  if (!getline_strip(is, line) || line != "CGT1") throw InputError("missing CGT1 header");
  if (!getline_strip(is, line)) throw InputError("missing method line");
  const Method method = parse_method(expect_prefix(line, "method="));

  if (!getline_strip(is, line)) throw InputError("missing size line");
  std::uint64_t n = 0, t = 0, d = 0;
  {
    std::istringstream ss(line);
    std::string a, b, c, extra;
    ss >> a >> b >> c;
    if (!ss || (ss >> extra)) throw InputError("malformed size line '" + line + "'");
    n = to_u64(expect_prefix(a, "n="), "n");
    t = to_u64(expect_prefix(b, "t="), "t");
    d = to_u64(expect_prefix(c, "d="), "d");
  }

  if (!getline_strip(is, line)) throw InputError("missing params line");
  const auto kv = split_params(expect_prefix(line, "params="));
  MethodParams params;
  switch (method) {
    case Method::kCrs:
      params = CrsParams{PrimePowerPlan::parse_powers(require(kv, "primepowers"))};
      break;
    case Method::kRw: {
      RwParams p;
      p.n = n;
      p.d = static_cast<unsigned>(d);
      p.tparam = to_u64(require(kv, "tparam"), "tparam");
      p.k = static_cast<unsigned>(to_u64(require(kv, "k"), "k"));
      p.seed = to_u64(require(kv, "seed"), "seed");
      if (auto it = kv.find("gen"); it != kv.end()) p.gen = it->second;
      params = p;
      break;
    }
    case Method::kD2:
    case Method::kD3:
      params = SmallDParams{static_cast<unsigned>(to_u64(require(kv, "q"), "q")),
                            to_u64(require(kv, "effn"), "effn")};
      break;
    case Method::kCustom:
      break;
  }

  std::vector<Row> rows;
  rows.reserve(t);
  for (std::uint64_t r = 0; r < t; ++r) {
    if (!getline_strip(is, line)) {
      throw InputError("file ends after " + std::to_string(r) + " of " + std::to_string(t) +
                       " rows");
    }
    Row row;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) row.push_back(static_cast<ItemIndex>(to_u64(tok, "column index")));
    // Generated matrices legitimately carry empty rows: crs residues >= n,
    // and d2/d3 rows whose items were all truncated away.
    if (row.empty() && method == Method::kCustom) {
      throw InputError("empty test row " + std::to_string(r) + " in a custom matrix");
    }
    rows.push_back(std::move(row));
  }
  while (getline_strip(is, line)) {
    if (!line.empty()) throw InputError("trailing content after the last row");
  }
  return TestMatrix(n, std::move(rows), method, static_cast<unsigned>(d), std::move(params));
}

void save_matrix(const std::filesystem::path& path, const TestMatrix& m) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path.string());
  write_matrix(os, m);
}

TestMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path.string());
  return read_matrix(is);
}

void save_outcomes(const std::filesystem::path& path, const OutcomeVector& o) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path.string());
  os << o.to_string() << '\n';
}

OutcomeVector load_outcomes(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path.string());
  std::string line;
  getline_strip(is, line);
  return OutcomeVector::parse(line);
}

}  // namespace cgt
