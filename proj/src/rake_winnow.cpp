#include "cgt/rake_winnow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cgt/decode.hpp"
#include "cgt/errors.hpp"
#include "cgt/rng.hpp"

namespace cgt {

std::uint64_t stage1_test_count(const BigInt& n, unsigned d, unsigned k) {
  if (d < 1 || BigInt(d) >= n) throw InputError("need 1 <= d < n");
  if (k < 1) throw InputError("k must be at least 1");
  const double log2e = 1.0 / std::log(2.0);
  const double lg_n = ln_big(n) * log2e;
  const double e_lg = log2e;  // lg e
  const double dd = d;
  const double kk = k;
  const double raw = (dd * dd / kk) * (e_lg + lg_n - std::log2(dd)) +
                     dd * (e_lg + lg_n - std::log2(kk)) + (dd / kk) * lg_n;
  auto t = static_cast<std::uint64_t>(std::ceil(raw - 1e-9));
  t = std::max<std::uint64_t>(t, 1);
  return (t + d - 1) / d * d;
}

void validate(const RwParams& p) {
  if (p.d < 1 || p.d >= p.n) throw InputError("rw params need 1 <= d < n");
  if (p.k < 1) throw InputError("rw params need k >= 1");
  if (p.tparam == 0 || p.tparam % p.d != 0) {
    throw InputError("tparam=" + std::to_string(p.tparam) + " must be a positive multiple of d=" +
                     std::to_string(p.d));
  }
}

RwParams make_rw_params(std::uint64_t n, unsigned d, unsigned k, std::uint64_t seed) {
  RwParams p;
  p.n = n;
  p.d = d;
  p.k = k;
  p.tparam = stage1_test_count(BigInt(n), d, k);
  p.seed = seed;
  p.gen = kGeneratorName;
  validate(p);
  return p;
}

TestMatrix build_rw_matrix(const RwParams& params) {
  validate(params);
  const std::uint64_t rows_total = 2 * params.tparam;
  const std::uint64_t per_column = params.tparam / params.d;
  std::vector<std::vector<std::uint64_t>> picks(params.n);
#pragma omp parallel for schedule(static) if (params.n > 4096)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(params.n); ++j) {
    Rng rng = Rng::substream(params.seed, static_cast<std::uint64_t>(j));
    picks[static_cast<std::size_t>(j)] = rng.sample_distinct(rows_total, per_column);
  }
  std::vector<Row> rows(rows_total);
  for (std::uint64_t j = 0; j < params.n; ++j) {
    for (std::uint64_t r : picks[j]) rows[r].push_back(static_cast<ItemIndex>(j));
  }
  RwParams stored = params;
  if (stored.gen.empty()) stored.gen = kGeneratorName;
  return TestMatrix(params.n, std::move(rows), Method::kRw, params.d, std::move(stored));
}

TestOracle hidden_set_oracle(DefectiveSet hidden) {
  return [hidden = std::move(hidden)](std::span<const ItemIndex> pool) {
    return std::any_of(pool.begin(), pool.end(), [&](ItemIndex i) { return hidden.contains(i); });
  };
}

std::string TwoStageTranscript::to_string() const {
  std::ostringstream os;
  os << "stage1_tests=" << stage1_tests << " candidates=" << stage1_candidates.to_string()
     << " stage2_tests=" << stage2_tests << " final=" << final_set.to_string()
     << " failed=" << (failed ? 1 : 0);
  return os.str();
}

TwoStageTranscript two_stage_identify(const TestMatrix& m, const RwParams& params,
                                      const TestOracle& oracle) {
  validate(params);
  if (m.n() != params.n) throw InputError("matrix n does not match params");
  OutcomeVector stage1;
  stage1.bits.resize(m.t());
  for (std::size_t r = 0; r < m.t(); ++r) stage1.bits[r] = oracle(m.row(r)) ? 1 : 0;

  TwoStageTranscript tr;
  tr.stage1_tests = m.t();
  tr.stage1_candidates = surviving_items(m, stage1);
  if (tr.stage1_candidates.size() >= static_cast<std::size_t>(params.d) + params.k) {
    tr.failed = true;
    return tr;
  }

  std::vector<ItemIndex> confirmed;
  for (ItemIndex i : tr.stage1_candidates.items()) {
    const ItemIndex single[] = {i};
    ++tr.stage2_tests;
    if (oracle(single)) confirmed.push_back(i);
  }
  tr.final_set = DefectiveSet(std::move(confirmed));

  // Every positive pooled test must contain a confirmed defective; otherwise
  // the executor answered stage 1 and stage 2 inconsistently.
  for (std::size_t r = 0; r < m.t(); ++r) {
    if (!stage1[r]) continue;
    auto row = m.row(r);
    if (std::none_of(row.begin(), row.end(),
                     [&](ItemIndex j) { return tr.final_set.contains(j); })) {
      throw ProtocolViolation("pooled test " + std::to_string(r) +
                              " was positive but none of its items tested positive alone");
    }
  }
  return tr;
}

TwoStageTranscript two_stage_identify(const RwParams& params, const TestOracle& oracle) {
  return two_stage_identify(build_rw_matrix(params), params, oracle);
}

DefectiveSet draw_hidden(std::uint64_t n, unsigned size, std::uint64_t seed) {
  if (size > n) throw InputError("hidden set larger than n");
  Rng rng = Rng::substream(seed, 0xd1ce'0000'0000'0000ULL);
  std::vector<ItemIndex> items;
  for (std::uint64_t v : rng.sample_distinct(n, size)) items.push_back(static_cast<ItemIndex>(v));
  return DefectiveSet(std::move(items));
}

std::vector<TrialRecord> run_trials(const TrialPlan& plan, Exec exec) {
  validate(plan.base);
  const unsigned hidden_size = plan.hidden_size ? plan.hidden_size : plan.base.d;
  if (plan.mode == HiddenMode::kFixed) plan.fixed_hidden.check_bounds(plan.base.n);
  std::vector<TrialRecord> records(plan.trials);

  auto one = [&](std::uint64_t i) {
    RwParams p = plan.base;
    p.seed = plan.base.seed + i;
    TrialRecord rec;
    rec.seed = p.seed;
    rec.hidden = plan.mode == HiddenMode::kFixed ? plan.fixed_hidden
                                                 : draw_hidden(p.n, hidden_size, p.seed);
    rec.transcript = two_stage_identify(p, hidden_set_oracle(rec.hidden));
    records[i] = std::move(rec);
  };

  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(plan.trials); ++i) {
      one(static_cast<std::uint64_t>(i));
    }
  } else {
    for (std::uint64_t i = 0; i < plan.trials; ++i) one(i);
  }
  return records;
}

}  // namespace cgt
