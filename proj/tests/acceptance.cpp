// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails or overruns its time budget.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cgt/comparison.hpp"
#include "cgt/crs.hpp"
#include "cgt/decode.hpp"
#include "cgt/primes.hpp"
#include "cgt/rake_winnow.hpp"
#include "cgt/small_d.hpp"
#include "cgt/verify.hpp"

namespace {

using namespace cgt;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

Fixture load(const char* file) {
  std::ifstream in(std::string(CGT_FIXTURE_DIR) + "/" + file);
  if (!in) throw std::runtime_error(std::string("missing fixture ") + file);
  return read_fixture(in);
}

std::size_t populated(const Fixture& f) {
  std::size_t cells = 0;
  for (const auto& row : f.cells) {
    for (const auto& c : row) cells += c.has_value();
  }
  return cells;
}

// Every populated cell of each (fixture, d) must match exactly.
Outcome fixtures(std::vector<std::pair<const char*, unsigned>> tables) {
  std::size_t cells = 0, bad = 0;
  std::string first;
  for (const auto& [file, d] : tables) {
    const Fixture f = load(file);
    cells += populated(f);
    const auto diffs = diff_fixture(d, f);
    bad += diffs.size();
    if (!diffs.empty() && first.empty()) {
      first = "; first mismatch " + diffs[0].method + " at n=" + format_n(diffs[0].n) +
              " expected " + std::to_string(diffs[0].expected) + " got " +
              std::to_string(diffs[0].actual);
    }
  }
  return {bad == 0, std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells" + first};
}

// Calls f on each subset of [0, n) of size <= k.
template <class F>
void subsets_upto(std::uint32_t n, unsigned k, F&& f) {
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
  for (unsigned s = 0; s <= k && s <= n; ++s) rec(0, s);
}

Outcome crs_round_trip() {
  std::uint64_t sets = 0, bad = 0;
  for (std::uint64_t n = 2; n <= 64; ++n) {
    for (unsigned d = 1; d <= 3 && d < n; ++d) {
      for (bool bt : {false, true}) {
        const auto m = build_crs_matrix(n, bt ? optimized_prime_plan(n, d) : select_prime_plan(n, d));
        subsets_upto(static_cast<std::uint32_t>(n), d, [&](const std::vector<ItemIndex>& s) {
          const DefectiveSet set(s);
          ++sets;
          bad += decode_disjunct(m, run_tests(m, set), d) != DecodeResult(Identified{set});
        });
      }
    }
  }
  return {bad == 0, std::to_string(sets - bad) + "/" + std::to_string(sets) +
                        " sets decoded exactly (both plans)"};
}

Outcome crs_disjunct() {
  int checked = 0, bad = 0;
  for (std::uint64_t n = 2; n <= 20; ++n) {
    for (unsigned d = 1; d <= 3 && d < n; ++d) {
      for (bool bt : {false, true}) {
        const auto m = build_crs_matrix(n, bt ? optimized_prime_plan(n, d) : select_prime_plan(n, d));
        ++checked;
        bad += !is_d_disjunct(m, d);
      }
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                        " matrices d-disjunct"};
}

Outcome sigma() {
  // Running prime sum from a plain sieve, checked against prime_sum too.
  const auto primes = primes_up_to(6131);
  std::uint64_t sum = 0;
  std::size_t next = 0;
  int bad = 0;
  double tightest = 1e300;
  for (std::uint64_t x = 2; x <= 6131; ++x) {
    while (next < primes.size() && primes[next] <= x) sum += primes[next++];
    if (x % 97 == 0 && prime_sum(x) != sum) ++bad;
    const double bound = sigma_bound(x);
    if (!(double(sum) < bound)) ++bad;
    tightest = std::min(tightest, bound - double(sum));
  }
  int pairs = 0;
  auto theorem = [&](unsigned d, const std::vector<BigInt>& ns) {
    for (const auto& n : ns) {
      ++pairs;
      if (!(double(select_prime_plan(n, d).cost()) < theorem_bound(n, d))) ++bad;
    }
  };
  const auto t1 = load("table1_d5.csv").ns;
  const auto t2 = load("table2_d2.csv").ns;
  theorem(5, t1);
  theorem(10, t1);
  theorem(2, t2);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "sigma below bound for x in [2,6131] (min gap %.3f); %d table (n,d) pairs below "
                "theorem bound; %d violations",
                tightest, pairs, bad);
  return {bad == 0, buf};
}

SmallDParams small(unsigned q, std::uint64_t n) {
  SmallDParams p;
  p.q = q;
  p.effective_n = n;
  return p;
}

Outcome d2_exhaustive() {
  std::uint64_t sets = 0, bad = 0, worst = 0, worst_t = 1, q4_sets = 0;
  for (unsigned q = 1; q <= 4; ++q) {
    const auto before = sets;
    std::uint64_t n = 1;
    for (unsigned i = 0; i < q; ++i) n *= 3;
    const auto m = build_d2_matrix(q, n);
    subsets_upto(static_cast<std::uint32_t>(n), 2, [&](const std::vector<ItemIndex>& s) {
      const DefectiveSet set(s);
      ProbeCounter probes;
      ++sets;
      bool ok = false;
      try {
        ok = decode_d2(run_tests(m, set), small(q, n), &probes) == DecodeResult(Identified{set});
      } catch (const std::exception&) {
      }
      if (probes.reads > 3 * m.t()) ok = false;
      if (probes.reads * worst_t > worst * m.t()) {
        worst = probes.reads;
        worst_t = m.t();
      }
      bad += !ok;
    });
    if (q == 4) q4_sets = sets - before;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu/%llu sets round-trip (%llu at q=4, empty set included), max probes/t = %.2f",
                static_cast<unsigned long long>(sets - bad), static_cast<unsigned long long>(sets),
                static_cast<unsigned long long>(q4_sets), double(worst) / double(worst_t));
  return {bad == 0, buf};
}

Outcome d3_rounds() {
  std::uint64_t sets = 0, bad = 0, worst = 0, worst_t = 1;
  auto check = [&](const TestMatrix& m, unsigned q, const DefectiveSet& set) {
    ProbeCounter probes;
    ++sets;
    bool ok = false;
    try {
      ok = decode_d3(run_tests(m, set), small(q, m.n()), &probes) == DecodeResult(Identified{set});
    } catch (const std::exception&) {
    }
    if (probes.reads > 3 * m.t()) ok = false;
    if (probes.reads * worst_t > worst * m.t()) {
      worst = probes.reads;
      worst_t = m.t();
    }
    bad += !ok;
  };
  std::uint64_t q4_sets = 0;
  for (unsigned q = 2; q <= 4; ++q) {
    const std::uint64_t n = std::uint64_t{1} << q;
    const auto m = build_d3_matrix(q, n);
    const auto before = sets;
    subsets_upto(static_cast<std::uint32_t>(n), 3,
                 [&](const std::vector<ItemIndex>& s) { check(m, q, DefectiveSet(s)); });
    if (q == 4) q4_sets = sets - before;
  }
  const auto m8 = build_d3_matrix(8, 256);
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10000; ++trial) {
    // Mostly full-size sets; every fourth trial draws 0..2 items.
    const unsigned size = trial % 4 == 3 ? static_cast<unsigned>(gen() % 3) : 3;
    check(m8, 8, draw_hidden(256, size, gen()));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%llu/%llu round-trip (%llu sets at q=4, 10000 random at q=8), max probes/t = %.2f",
                static_cast<unsigned long long>(sets - bad), static_cast<unsigned long long>(sets),
                static_cast<unsigned long long>(q4_sets), double(worst) / double(worst_t));
  return {bad == 0 && q4_sets == 697, buf};
}

TrialPlan rw_plan() {
  TrialPlan plan;
  plan.base = make_rw_params(256, 4, 4, 20261016);
  plan.trials = 1000;
  plan.mode = HiddenMode::kRandom;
  plan.hidden_size = 4;
  return plan;
}

std::string transcript_bytes(const std::vector<TrialRecord>& recs) {
  std::string s;
  for (const auto& r : recs) {
    s += std::to_string(r.seed) + " " + r.hidden.to_string() + " " + r.transcript.to_string() + "\n";
  }
  return s;
}

std::string first_run;

Outcome rw_statistical() {
  const auto plan = rw_plan();
  const auto recs = run_trials(plan);
  first_run = transcript_bytes(recs);
  std::uint64_t failed = 0, wrong = 0, unsound = 0;
  for (const auto& r : recs) {
    failed += r.transcript.failed;
    if (!r.transcript.failed && r.transcript.final_set != r.hidden) ++wrong;
    for (auto i : r.transcript.final_set.items()) unsound += !r.hidden.contains(i);
  }
  const double rate = double(failed) / double(plan.trials);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "2t=%llu, overflow %llu/1000 = %.4f (limit 0.0078), inexact %llu, false positives %llu",
                static_cast<unsigned long long>(2 * plan.base.tparam),
                static_cast<unsigned long long>(failed), rate, static_cast<unsigned long long>(wrong),
                static_cast<unsigned long long>(unsound));
  return {rate <= 2.0 / 256 && wrong == 0 && unsound == 0, buf};
}

Outcome determinism() {
  if (first_run.empty()) rw_statistical();
  const auto again = transcript_bytes(run_trials(rw_plan()));
  const auto serial = transcript_bytes(run_trials(rw_plan(), Exec::kSerial));
  const bool same = again == first_run && serial == first_run;
  return {same, std::to_string(first_run.size()) + " transcript bytes, repeat " +
                    (again == first_run ? "identical" : "differs") + ", serial " +
                    (serial == first_run ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "comparison table, d=5 and d=10", 10,
       [] { return fixtures({{"table1_d5.csv", 5}, {"table1_d10.csv", 10}}); }},
      {2, "comparison table d=2, plus 3^63 and 3^64 rows", 10,
       [] { return fixtures({{"table2_d2.csv", 2}, {"table3_d2_spot.csv", 2}}); }},
      {3, "comparison table, d=3", 5, [] { return fixtures({{"table4_d3.csv", 3}}); }},
      {4, "CRS exhaustive round trip, n<=64, d<=3", 60, crs_round_trip},
      {5, "CRS d-disjunct, n<=20, d<=3", 30, crs_disjunct},
      {6, "sigma bound and theorem bound", 5, sigma},
      {7, "d=2 scheme exhaustive, q<=4, probes<=3t", 30, d2_exhaustive},
      {8, "d=3 scheme exhaustive q<=4 and random q=8, probes<=3t", 60, d3_rounds},
      {9, "rake-and-winnow n=256 d=4 k=4, 1000 trials", 60, rw_statistical},
      {10, "rake-and-winnow determinism", 60, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.budget_s;
    failures += !pass;
    std::printf("criterion %2d: %s  %s: %s [%.2fs / %.0fs]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.budget_s);
  }

  // Growth sanity check, informational only.
  std::printf("note: crs t over n = 10^3, 10^6, 10^9:");
  for (unsigned d : {2u, 5u}) {
    std::printf(" d=%u", d);
    for (int e : {3, 6, 9}) std::printf(" %llu", static_cast<unsigned long long>(
                                                     select_prime_plan(pow_big(10, e), d).cost()));
    std::printf(";");
  }
  std::printf("\n");
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
