#include "cgt/crs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "cgt/errors.hpp"
#include "cgt/primes.hpp"

namespace cgt {

std::uint64_t PrimePowerPlan::cost() const {
  std::uint64_t sum = 0;
  for (const auto& e : entries) sum += e.value();
  return sum;
}

BigInt PrimePowerPlan::product() const {
  BigInt prod = 1;
  for (const auto& e : entries) prod *= e.value();
  return prod;
}

bool PrimePowerPlan::valid() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].exponent == 0) return false;
    if (i > 0 && entries[i].prime <= entries[i - 1].prime) return false;
  }
  return product() >= pow_big(target_n, target_d);
}

std::string PrimePowerPlan::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ',';
    os << entries[i].prime;
    if (entries[i].exponent != 1) os << '^' << entries[i].exponent;
  }
  return os.str();
}

std::vector<PrimePower> PrimePowerPlan::parse_powers(std::string_view s) {
  std::vector<PrimePower> out;
  while (!s.empty()) {
    auto comma = s.find(',');
    std::string tok(s.substr(0, comma));
    PrimePower pp;
    auto caret = tok.find('^');
    try {
      std::size_t used = 0;
      pp.prime = std::stoull(tok.substr(0, caret), &used);
      if (used != tok.substr(0, caret).size()) throw std::invalid_argument(tok);
      pp.exponent = 1;
      if (caret != std::string::npos) {
        const std::string e = tok.substr(caret + 1);
        pp.exponent = static_cast<unsigned>(std::stoul(e, &used));
        if (used != e.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::logic_error&) {
      throw InputError("malformed prime power '" + tok + "'");
    }
    if (pp.prime < 2 || pp.exponent == 0) throw InputError("invalid prime power '" + tok + "'");
    out.push_back(pp);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

PrimePowerPlan select_prime_plan(const BigInt& n, unsigned d) {
  if (d < 1 || BigInt(d) >= n) throw InputError("need 1 <= d < n");
  PrimePowerPlan plan;
  plan.target_n = n;
  plan.target_d = d;
  const BigInt target = pow_big(n, d);
  // Stop at product >= n^d rather than strictly above it; equality is
  // already enough for decoding.
  BigInt product = 1;
  PrimeStream primes;
  while (product < target) {
    const std::uint64_t p = primes.next();
    plan.entries.push_back({p, 1});
    product *= p;
  }
  return plan;
}

namespace {

bool less_solution(std::uint64_t cost_a, const std::vector<unsigned>& a, std::uint64_t cost_b,
                   const std::vector<unsigned>& b) {
  if (cost_a != cost_b) return cost_a < cost_b;
  return a < b;
}

std::uint64_t largest_power_at_most(std::uint64_t p, std::uint64_t maxpow) {
  std::uint64_t v = 1;
  while (v <= maxpow / p) v *= p;
  return v;
}

void check_search_input(std::span<const std::uint64_t> primes) {
  for (std::size_t i = 1; i < primes.size(); ++i) {
    if (primes[i] <= primes[i - 1]) throw InputError("primes must be strictly ascending");
  }
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

// Branch and bound over exponents, last prime first. Subtrees are cut when
// they cannot reach the target at all, or when even a fractional cover of
// the remaining log-target costs strictly more than the incumbent. Ties are
// never cut, so the lexicographic tie-break sees every minimum-cost solution.
class ExponentSearch {
 public:
  ExponentSearch(std::span<const std::uint64_t> primes, std::uint64_t maxpow)
      : primes_(primes.begin(), primes.end()), maxpow_(maxpow), exps_(primes.size(), 0) {
    const std::size_t m = primes_.size();
    reach_.assign(m + 1, BigInt(1));
    for (std::size_t j = 0; j < m; ++j) {
      reach_[j + 1] = reach_[j] * largest_power_at_most(primes_[j], maxpow_);
    }
    // Lower bound data: the LP relaxation of choosing one power per prime.
    // Each prime's options (e ln p, p^e) contribute the segments of their
    // lower convex hull through the origin; any feasible choice costs at
    // least the cheapest fractional cover built from those segments.
    bound_slots_.resize(m + 1);
    std::vector<std::pair<double, double>> segments;  // (cost per log, log)
    for (std::size_t j = 0; j < m; ++j) {
      const double lp = std::log(static_cast<double>(primes_[j]));
      std::vector<std::pair<double, double>> pts{{0.0, 0.0}};  // (log, cost)
      std::uint64_t v = primes_[j];
      for (unsigned e = 1; v <= maxpow_; ++e) {
        pts.emplace_back(e * lp, static_cast<double>(v));
        if (v > maxpow_ / primes_[j]) break;
        v *= primes_[j];
      }
      std::size_t at = 0;
      while (at + 1 < pts.size()) {
        std::size_t next = at + 1;
        double best = (pts[next].second - pts[at].second) / (pts[next].first - pts[at].first);
        for (std::size_t c = at + 2; c < pts.size(); ++c) {
          const double r = (pts[c].second - pts[at].second) / (pts[c].first - pts[at].first);
          if (r <= best) {
            best = r;
            next = c;
          }
        }
        segments.emplace_back(best, pts[next].first - pts[at].first);
        at = next;
      }
      bound_slots_[j + 1] = segments;
      std::sort(bound_slots_[j + 1].begin(), bound_slots_[j + 1].end());
    }
  }

  std::optional<ExponentSearchResult> run(const BigInt& target, std::uint64_t incumbent_cost,
                                          std::vector<unsigned> incumbent) {
    best_cost_ = incumbent_cost;
    best_ = std::move(incumbent);
    have_best_ = !best_.empty() || primes_.empty();
    visit(primes_.size(), target, 0);
    if (!have_best_) return std::nullopt;
    return ExponentSearchResult{best_cost_, best_, nodes_};
  }

 private:
  double lower_bound(std::size_t m, double log_target) const {
    double need = log_target;
    double cost = 0;
    for (const auto& [ratio, cap] : bound_slots_[m]) {
      if (need <= 0) break;
      const double take = std::min(need, cap);
      cost += take * ratio;
      need -= take;
    }
    return need > 1e-9 ? std::numeric_limits<double>::infinity() : cost;
  }

  void visit(std::size_t m, const BigInt& target, std::uint64_t cost) {
    ++nodes_;
    if (target <= 1) {
      for (std::size_t j = 0; j < m; ++j) exps_[j] = 0;
      if (!have_best_ || less_solution(cost, exps_, best_cost_, best_)) {
        best_cost_ = cost;
        best_ = exps_;
        have_best_ = true;
      }
      return;
    }
    if (m == 0 || reach_[m] < target) return;
    if (have_best_) {
      const double lb = lower_bound(m, ln_big(target)) * (1.0 - 1e-9);
      if (static_cast<double>(cost) + lb > static_cast<double>(best_cost_)) return;
    }
    const std::uint64_t p = primes_[m - 1];
    std::uint64_t power = 1;
    for (unsigned i = 0; power <= maxpow_; ++i) {
      exps_[m - 1] = i;
      visit(m - 1, i == 0 ? target : ceil_div(target, power), cost + (i == 0 ? 0 : power));
      if (power > maxpow_ / p) break;
      power *= p;
    }
    exps_[m - 1] = 0;
  }

  std::vector<std::uint64_t> primes_;
  std::uint64_t maxpow_;
  std::vector<BigInt> reach_;
  std::vector<std::vector<std::pair<double, double>>> bound_slots_;
  std::vector<unsigned> exps_;
  std::vector<unsigned> best_;
  std::uint64_t best_cost_ = 0;
  bool have_best_ = false;
  std::uint64_t nodes_ = 0;
};

// Direct transcription of the reference recursion, without bounding.
std::optional<std::pair<std::uint64_t, std::vector<unsigned>>> exhaustive(
    std::span<const std::uint64_t> primes, std::uint64_t maxpow, const BigInt& target,
    std::uint64_t& nodes) {
  ++nodes;
  if (target <= 1) return std::make_pair(std::uint64_t{0}, std::vector<unsigned>(primes.size(), 0));
  if (primes.empty() || pow_big(maxpow, primes.size()) < target) return std::nullopt;
  const std::uint64_t p = primes.back();
  auto rest = primes.first(primes.size() - 1);
  std::optional<std::pair<std::uint64_t, std::vector<unsigned>>> best;
  std::uint64_t power = 1;
  for (unsigned i = 0; power <= maxpow; ++i) {
    auto s = exhaustive(rest, maxpow, ceil_div(target, power), nodes);
    if (s) {
      s->first += i == 0 ? 0 : power;
      s->second.push_back(i);
      if (!best || less_solution(s->first, s->second, best->first, best->second)) best = s;
    }
    if (power > maxpow / p) break;
    power *= p;
  }
  return best;
}

}  // namespace

ExponentSearchResult optimize_exponents(std::span<const std::uint64_t> primes,
                                        std::uint64_t maxpow, const BigInt& target) {
  check_search_input(primes);
  if (target <= 1) return {0, std::vector<unsigned>(primes.size(), 0), 1};
  ExponentSearch search(primes, maxpow);
  // Seed the incumbent with every usable prime at exponent 1 when that is
  // feasible; it is the plan the search refines.
  std::vector<unsigned> ones(primes.size(), 0);
  BigInt prod = 1;
  std::uint64_t ones_cost = 0;
  for (std::size_t j = 0; j < primes.size(); ++j) {
    if (primes[j] <= maxpow) {
      ones[j] = 1;
      prod *= primes[j];
      ones_cost += primes[j];
    }
  }
  auto result = prod >= target ? search.run(target, ones_cost, ones)
                               : search.run(target, 0, {});
  if (!result) throw NoSolutionError("no prime-power assignment reaches the target");
  return *result;
}

ExponentSearchResult optimize_exponents_exhaustive(std::span<const std::uint64_t> primes,
                                                   std::uint64_t maxpow, const BigInt& target) {
  check_search_input(primes);
  std::uint64_t nodes = 0;
  auto r = exhaustive(primes, maxpow, target, nodes);
  if (!r) throw NoSolutionError("no prime-power assignment reaches the target");
  return {r->first, std::move(r->second), nodes};
}

PrimePowerPlan optimized_prime_plan(const BigInt& n, unsigned d) {
  const PrimePowerPlan base = select_prime_plan(n, d);
  std::vector<std::uint64_t> primes;
  for (const auto& e : base.entries) primes.push_back(e.prime);
  const auto result = optimize_exponents(primes, primes.back(), pow_big(n, d));
  PrimePowerPlan plan;
  plan.target_n = n;
  plan.target_d = d;
  for (std::size_t j = 0; j < primes.size(); ++j) {
    if (result.exponents[j] > 0) plan.entries.push_back({primes[j], result.exponents[j]});
  }
  return plan;
}

TestMatrix build_crs_matrix(std::uint64_t n, const PrimePowerPlan& plan) {
  PrimePowerPlan check = plan;
  check.target_n = n;
  if (check.target_d == 0 || !check.valid()) {
    throw InputError("prime-power plan " + plan.to_string() + " does not cover n^d for n=" +
                     std::to_string(n));
  }
  std::vector<Row> rows;
  rows.reserve(plan.cost());
  for (const auto& entry : plan.entries) {
    const std::uint64_t modulus = entry.value();
    for (std::uint64_t x = 0; x < modulus; ++x) {
      Row row;
      if (x < n) row.reserve((n - x + modulus - 1) / modulus);
      for (std::uint64_t i = x; i < n; i += modulus) row.push_back(static_cast<ItemIndex>(i));
      rows.push_back(std::move(row));
    }
  }
  return TestMatrix(n, std::move(rows), Method::kCrs, plan.target_d, CrsParams{plan.entries});
}

std::uint64_t prime_sum(std::uint64_t x) {
  std::uint64_t sum = 0;
  for (std::uint64_t p : primes_up_to(x)) sum += p;
  return sum;
}

double sigma_bound(std::uint64_t x) {
  if (x < 2) throw InputError("sigma_bound needs x >= 2");
  const double lx = std::log(static_cast<double>(x));
  const double xd = static_cast<double>(x);
  return xd * xd / (2.0 * lx) * (1.0 + 1.2762 / lx);
}

double theorem_bound(const BigInt& n, unsigned d) {
  if (n < 2) throw InputError("theorem_bound needs n >= 2");
  const double x = std::ceil(2.0 * d * ln_big(n));
  if (x < 2) throw InputError("ceil(2 d ln n) must be at least 2");
  return sigma_bound(static_cast<std::uint64_t>(x));
}

BoundReport bound_report(const BigInt& n, unsigned d) {
  const PrimePowerPlan plan = select_prime_plan(n, d);
  BoundReport r;
  r.sigma_bound = sigma_bound(static_cast<std::uint64_t>(std::ceil(2.0 * d * ln_big(n))));
  r.theorem_bound = theorem_bound(n, d);
  r.actual_t = plan.cost();
  r.sampling_rate = plan.entries.size();
  return r;
}

}  // namespace cgt
