#include "cgt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cgt/comparison.hpp"
#include "cgt/crs.hpp"
#include "cgt/decode.hpp"
#include "cgt/errors.hpp"
#include "cgt/matrix_io.hpp"
#include "cgt/rake_winnow.hpp"
#include "cgt/rng.hpp"
#include "cgt/small_d.hpp"
#include "cgt/verify.hpp"

namespace cgt::cli {
namespace {

struct ConstructOpts {
  std::string method;
  std::string n;
  std::optional<unsigned> d;
  bool backtrack = false;
  std::optional<unsigned> q;
  std::optional<unsigned> k;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> tparam;
  std::string out_path;
};

struct SimulateOpts {
  std::string matrix;
  std::optional<std::string> defectives;
  std::optional<unsigned> random;
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;
  std::string out_path;
  bool dump_survivors = false;
};

struct DecodeOpts {
  std::string matrix;
  std::string outcomes;
  std::optional<unsigned> d;
  bool dump_survivors = false;
};

struct VerifyOpts {
  std::string matrix;
  std::optional<unsigned> disjunct;
  std::optional<unsigned> separable;
  std::vector<unsigned> resolvable;
  bool force = false;
  bool serial = false;
};

struct CompareOpts {
  unsigned d = 0;
  std::string ns;
  std::string methods;
  std::string format = "text";
  std::string fixture;
};

struct TwoStageOpts {
  std::string n;
  unsigned d = 0;
  std::optional<unsigned> k;
  std::uint64_t seed = 1;
  std::string hidden = "random";
  std::optional<std::uint64_t> tparam;
  unsigned retry = 0;
  std::uint64_t trials = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t matrix_n(const std::string& s) {
  const std::uint64_t n = parse_u64(s);
  if (n > std::numeric_limits<ItemIndex>::max()) {
    throw InputError("n=" + s + " is too large for an explicit matrix");
  }
  return n;
}

void print_summary(std::ostream& out, const TestMatrix& m) {
  out << "method=" << to_string(m.method()) << " n=" << m.n() << " d=" << m.d() << " t=" << m.t()
      << " sampling_rate=" << sampling_rate(m) << '\n';
}

// One line in the style of the reference driver: the plan and its total.
void print_plan(std::ostream& out, const PrimePowerPlan& plan) {
  out << "n = " << plan.target_n.str() << " d = " << plan.target_d << " :";
  for (const auto& e : plan.entries) {
    out << ' ' << e.prime;
    if (e.exponent > 1) out << '^' << e.exponent;
  }
  out << " total tests: " << plan.cost() << '\n';
}

int cmd_construct(const ConstructOpts& o, std::ostream& out) {
  const Method method = parse_method(o.method);
  if (method == Method::kCustom) throw UsageError("construct does not build custom matrices");
  if (o.backtrack && method != Method::kCrs) throw UsageError("--backtrack applies to crs only");
  if (o.q && method != Method::kD2 && method != Method::kD3) {
    throw UsageError("--q applies to d2 and d3 only");
  }
  if ((o.k || o.seed || o.tparam) && method != Method::kRw) {
    throw UsageError("--k, --seed and --tparam apply to rw only");
  }

  std::optional<TestMatrix> m;
  switch (method) {
    case Method::kCrs: {
      if (!o.d) throw UsageError("crs needs --d");
      if (o.n.empty()) throw UsageError("crs needs --n");
      const std::uint64_t n = matrix_n(o.n);
      const PrimePowerPlan plan = o.backtrack ? optimized_prime_plan(n, *o.d)
                                              : select_prime_plan(n, *o.d);
      m = build_crs_matrix(n, plan);
      print_plan(out, plan);
      break;
    }
    case Method::kRw: {
      if (!o.d) throw UsageError("rw needs --d");
      if (o.n.empty()) throw UsageError("rw needs --n");
      const std::uint64_t n = matrix_n(o.n);
      RwParams p = make_rw_params(n, *o.d, o.k.value_or(*o.d), o.seed.value_or(1));
      if (o.tparam) {
        p.tparam = *o.tparam;
        validate(p);
      }
      m = build_rw_matrix(p);
      out << "tparam=" << p.tparam << " k=" << p.k << " seed=" << p.seed << " gen=" << p.gen
          << '\n';
      break;
    }
    case Method::kD2:
    case Method::kD3: {
      const unsigned implied = method == Method::kD2 ? 2 : 3;
      if (o.d && *o.d != implied) {
        throw UsageError(std::string(to_string(method)) + " handles exactly d=" +
                         std::to_string(implied));
      }
      if (o.n.empty() && !o.q) throw UsageError("give --n, --q, or both");
      const unsigned radix = method == Method::kD2 ? 3 : 2;
      std::uint64_t n = 0;
      unsigned q = 0;
      if (!o.n.empty()) {
        n = matrix_n(o.n);
        q = method == Method::kD2 ? d2_min_q(n) : d3_min_q(n);
        if (o.q && *o.q < q) throw UsageError("--q is too small to cover --n");
        if (o.q) q = *o.q;
      } else {
        q = *o.q;
        n = pow_big(radix, q).convert_to<std::uint64_t>();
      }
      m = method == Method::kD2 ? build_d2_matrix(q, n) : build_d3_matrix(q, n);
      out << "q=" << q << '\n';
      break;
    }
    case Method::kCustom:
      break;
  }
  print_summary(out, *m);
  if (!o.out_path.empty()) {
    save_matrix(o.out_path, *m);
    out << "wrote " << o.out_path << '\n';
  }
  return kOk;
}

DecodeResult decode_for(const TestMatrix& m, const OutcomeVector& o, unsigned d) {
  switch (m.method()) {
    case Method::kD2: return decode_d2(o, std::get<SmallDParams>(m.params()));
    case Method::kD3: return decode_d3(o, std::get<SmallDParams>(m.params()));
    default: return decode_disjunct(m, o, d);
  }
}

void maybe_dump(std::ostream& out, bool dump, const TestMatrix& m, const OutcomeVector& o,
                const DecodeResult& r) {
  if (dump && std::holds_alternative<Overflow>(r)) {
    out << "survivors: " << surviving_items(m, o).to_string() << '\n';
  }
}

int cmd_simulate(const SimulateOpts& o, std::ostream& out, std::ostream& err) {
  if (o.defectives.has_value() == o.random.has_value()) {
    throw UsageError("give exactly one of --defectives and --random");
  }
  if (o.trials > 0 && !o.random) throw UsageError("--trials needs --random");
  const TestMatrix m = load_matrix(o.matrix);
  const unsigned d = m.d();

  if (o.trials > 0) {
    std::vector<std::uint8_t> ok(o.trials, 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(o.trials); ++i) {
      const DefectiveSet truth = draw_hidden(m.n(), *o.random, o.seed + static_cast<std::uint64_t>(i));
      try {
        const DecodeResult r = decode_for(m, run_tests(m, truth), d);
        ok[static_cast<std::size_t>(i)] = r == DecodeResult{Identified{truth}};
      } catch (const ProtocolViolation&) {
      }
    }
    const auto good = static_cast<std::uint64_t>(std::count(ok.begin(), ok.end(), 1));
    out << "trials=" << o.trials << " exact=" << good << " mismatches=" << o.trials - good << '\n';
    return good == o.trials ? kOk : kFail;
  }

  const DefectiveSet truth =
      o.defectives ? parse_index_list(*o.defectives) : draw_hidden(m.n(), *o.random, o.seed);
  truth.check_bounds(m.n());
  if (d > 0 && truth.size() > d) {
    err << "warning: " << truth.size() << " defectives exceed the matrix capacity d=" << d << '\n';
  }
  const OutcomeVector outcomes = run_tests(m, truth);
  if (!o.out_path.empty()) save_outcomes(o.out_path, outcomes);
  out << "defectives: " << truth.to_string() << '\n';
  out << "outcomes: " << outcomes.to_string() << '\n';
  DecodeResult r;
  try {
    r = decode_for(m, outcomes, d);
  } catch (const ProtocolViolation& e) {
    out << "decode: error: " << e.what() << '\n';
    return kFail;
  }
  out << "decode: " << describe(r) << '\n';
  maybe_dump(out, o.dump_survivors, m, outcomes, r);
  const bool match = r == DecodeResult{Identified{truth}};
  out << (match ? "MATCH" : "MISMATCH") << '\n';
  return match ? kOk : kFail;
}

int cmd_decode(const DecodeOpts& o, std::ostream& out) {
  const TestMatrix m = load_matrix(o.matrix);
  const OutcomeVector outcomes = load_outcomes(o.outcomes);
  const DecodeResult r = decode_for(m, outcomes, o.d.value_or(m.d()));
  out << "decode: " << describe(r) << '\n';
  maybe_dump(out, o.dump_survivors, m, outcomes, r);
  return std::holds_alternative<Identified>(r) ? kOk : kFail;
}

std::string join(std::span<const ItemIndex> xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
  const int chosen = o.disjunct.has_value() + o.separable.has_value() + !o.resolvable.empty();
  if (chosen != 1) throw UsageError("give exactly one of --disjunct, --separable, --resolvable");
  const TestMatrix m = load_matrix(o.matrix);
  VerifyGuard guard;
  guard.force = o.force;
  const Exec exec = o.serial ? Exec::kSerial : Exec::kParallel;

  VerifyReport rep;
  std::string what;
  if (o.disjunct) {
    what = "disjunct d=" + std::to_string(*o.disjunct);
    rep = check_d_disjunct(m, *o.disjunct, guard, exec);
  } else if (o.separable) {
    what = "separable d=" + std::to_string(*o.separable);
    rep = check_separable_upto(m, *o.separable, guard);
  } else {
    what = "resolvable d=" + std::to_string(o.resolvable[0]) + " k=" +
           std::to_string(o.resolvable[1]);
    rep = check_dk_resolvable(m, o.resolvable[0], o.resolvable[1], guard, exec);
  }
  out << what << ": " << (rep.pass ? "PASS" : "FAIL") << '\n';
  if (!rep.pass && rep.counterexample) {
    if (o.separable) {
      out << "counterexample: subsets " << join(rep.counterexample->subset) << " and "
          << join(rep.counterexample->witness) << " have the same Boolean sum\n";
    } else {
      out << "counterexample: D=" << join(rep.counterexample->subset)
          << " indistinguishable columns " << join(rep.counterexample->witness) << '\n';
    }
  }
  return rep.pass ? kOk : kFail;
}

std::vector<BigInt> default_ns(unsigned d) {
  if (d == 2) return parse_big_list("15,100,10^3,10^4,10^5,10^6,10^8,10^10,10^20,10^30");
  return parse_big_list("100,10^4,10^6,10^8,10^10,10^20,10^30");
}

int cmd_compare(const CompareOpts& o, std::ostream& out, std::ostream& err) {
  if (o.format != "text" && o.format != "csv") throw UsageError("--format is text or csv");
  if (!o.fixture.empty()) {
    std::ifstream is(o.fixture);
    if (!is) throw InputError("cannot read " + o.fixture);
    const Fixture f = read_fixture(is);
    const auto mismatches = diff_fixture(o.d, f);
    std::size_t cells = 0;
    for (const auto& row : f.cells) {
      cells += static_cast<std::size_t>(std::count_if(row.begin(), row.end(),
                                                      [](const auto& c) { return c.has_value(); }));
    }
    for (const auto& mm : mismatches) {
      err << "mismatch n=" << format_n(mm.n) << " " << mm.method << ": expected " << mm.expected
          << ", got " << mm.actual << '\n';
    }
    out << "fixture " << o.fixture << ": " << cells - mismatches.size() << "/" << cells
        << " cells match\n";
    return mismatches.empty() ? kOk : kFail;
  }
  const auto ns = o.ns.empty() ? default_ns(o.d) : parse_big_list(o.ns);
  const auto methods = o.methods.empty() ? default_methods(o.d) : parse_word_list(o.methods);
  const auto rows = comparison_table(o.d, ns, methods);
  if (o.format == "csv") {
    render_csv(out, methods, rows);
  } else {
    render_text(out, o.d, methods, rows);
  }
  return kOk;
}

int cmd_two_stage(const TwoStageOpts& o, std::ostream& out) {
  if (o.n.empty()) throw UsageError("two-stage needs --n");
  const std::uint64_t n = matrix_n(o.n);
  RwParams base = make_rw_params(n, o.d, o.k.value_or(o.d), o.seed);
  if (o.tparam) {
    base.tparam = *o.tparam;
    validate(base);
  }

  if (o.trials > 0) {
    TrialPlan plan;
    plan.base = base;
    plan.trials = o.trials;
    if (o.hidden == "random") {
      plan.mode = HiddenMode::kRandom;
    } else {
      plan.mode = HiddenMode::kFixed;
      plan.fixed_hidden = parse_index_list(o.hidden);
    }
    const auto records = run_trials(plan);
    std::uint64_t failed = 0, exact = 0, unsound = 0;
    std::uint64_t digest = 0;
    for (const auto& rec : records) {
      failed += rec.transcript.failed;
      if (!rec.transcript.failed && rec.transcript.final_set == rec.hidden) ++exact;
      for (ItemIndex i : rec.transcript.final_set.items()) unsound += !rec.hidden.contains(i);
      for (char c : rec.transcript.to_string()) digest = splitmix64(digest ^ static_cast<unsigned char>(c));
    }
    out << "stage1 tests: " << 2 * base.tparam << '\n';
    out << "trials=" << o.trials << " failed=" << failed << " exact=" << exact
        << " false_positives=" << unsound << '\n';
    out << "transcript digest: " << std::hex << digest << std::dec << '\n';
    return (failed == 0 && unsound == 0 && exact == o.trials) ? kOk : kFail;
  }

  for (unsigned attempt = 0;; ++attempt) {
    RwParams p = base;
    p.seed = base.seed + attempt;
    const DefectiveSet hidden =
        o.hidden == "random" ? draw_hidden(n, p.d, base.seed) : parse_index_list(o.hidden);
    hidden.check_bounds(n);
    const auto tr = two_stage_identify(p, hidden_set_oracle(hidden));
    out << "seed: " << p.seed << '\n';
    out << "hidden: " << hidden.to_string() << '\n';
    out << "stage1 tests: " << tr.stage1_tests << '\n';
    out << "candidates: " << tr.stage1_candidates.size() << ' ' << tr.stage1_candidates.to_string()
        << '\n';
    out << "stage2 tests: " << tr.stage2_tests << '\n';
    out << "final: " << tr.final_set.to_string() << '\n';
    out << "failed: " << (tr.failed ? 1 : 0) << '\n';
    if (tr.failed && attempt < o.retry) {
      out << "retrying with seed " << p.seed + 1 << '\n';
      continue;
    }
    return (!tr.failed && tr.final_set == hidden) ? kOk : kFail;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial group testing toolkit", "cgt"};
  app.require_subcommand(1);

  ConstructOpts co;
  auto* construct = app.add_subcommand("construct", "Build a test matrix and write a CGT1 file");
  construct->add_option("--method", co.method, "crs | rw | d2 | d3")->required();
  construct->add_option("--n", co.n, "Number of items (accepts 1e6, 3^5)");
  construct->add_option("--d", co.d, "Maximum number of defectives");
  construct->add_flag("--backtrack", co.backtrack, "crs: optimize prime-power exponents");
  construct->add_option("--q", co.q, "d2/d3: digit count");
  construct->add_option("--k", co.k, "rw: resolvability slack (default d)");
  construct->add_option("--seed", co.seed, "rw: generator seed (default 1)");
  construct->add_option("--tparam", co.tparam, "rw: override t (rows = 2t)");
  construct->add_option("--out", co.out_path, "Matrix file to write");

  SimulateOpts so;
  auto* simulate = app.add_subcommand("simulate", "Run a matrix on a defective set and decode");
  simulate->add_option("--matrix", so.matrix)->required();
  simulate->add_option("--defectives", so.defectives, "Comma-separated item indices");
  simulate->add_option("--random", so.random, "Draw this many random defectives");
  simulate->add_option("--seed", so.seed, "Seed for --random");
  simulate->add_option("--trials", so.trials, "Repeat --random draws with seeds seed..seed+N-1");
  simulate->add_option("--out", so.out_path, "Outcome file to write");
  simulate->add_flag("--dump-survivors", so.dump_survivors, "Print survivors on overflow");

  DecodeOpts dopt;
  auto* decode = app.add_subcommand("decode", "Decode an outcome file against a matrix");
  decode->add_option("--matrix", dopt.matrix)->required();
  decode->add_option("--outcomes", dopt.outcomes)->required();
  decode->add_option("--d", dopt.d, "Override the matrix's declared d");
  decode->add_flag("--dump-survivors", dopt.dump_survivors, "Print survivors on overflow");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Brute-force property check");
  verify->add_option("--matrix", vo.matrix)->required();
  verify->add_option("--disjunct", vo.disjunct, "d");
  verify->add_option("--separable", vo.separable, "d");
  verify->add_option("--resolvable", vo.resolvable, "d k")->expected(2);
  verify->add_flag("--force", vo.force, "Ignore the brute-force size guard");
  verify->add_flag("--serial", vo.serial, "Use the serial reference kernel");

  CompareOpts cmp;
  auto* compare = app.add_subcommand("compare", "Tabulate test counts of competing schemes");
  compare->add_option("--d", cmp.d)->required();
  compare->add_option("--n", cmp.ns, "Comma-separated item counts");
  compare->add_option("--methods", cmp.methods, "d2,d3,crs,crs-bt,rw,mr,ks,hs,dh3");
  compare->add_option("--format", cmp.format, "text | csv");
  compare->add_option("--fixture", cmp.fixture, "Diff against a stored fixture");

  TwoStageOpts ts;
  auto* two_stage = app.add_subcommand("two-stage", "Simulate the rake-and-winnow protocol");
  two_stage->add_option("--n", ts.n)->required();
  two_stage->add_option("--d", ts.d)->required();
  two_stage->add_option("--k", ts.k, "Resolvability slack (default d)");
  two_stage->add_option("--seed", ts.seed);
  two_stage->add_option("--hidden", ts.hidden, "Comma-separated indices, or 'random'");
  two_stage->add_option("--tparam", ts.tparam, "Override t (rows = 2t)");
  two_stage->add_option("--retry", ts.retry, "On stage-1 overflow, retry with seed+1 up to N times");
  two_stage->add_option("--trials", ts.trials, "Run N seeded trials and summarize");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return cmd_construct(co, out);
    if (*simulate) return cmd_simulate(so, out, err);
    if (*decode) return cmd_decode(dopt, out);
    if (*verify) return cmd_verify(vo, out);
    if (*compare) return cmd_compare(cmp, out, err);
    if (*two_stage) return cmd_two_stage(ts, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const GuardExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoSolutionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ProtocolViolation& e) {
    err << "protocol violation: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace cgt::cli
