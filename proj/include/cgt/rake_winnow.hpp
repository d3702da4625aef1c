#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cgt/bigint.hpp"
#include "cgt/matrix.hpp"
#include "cgt/verify.hpp"

namespace cgt {

/// Smallest t, rounded up to a multiple of d, with
///   t >= (d^2/k) lg(en/d) + d lg(en/k) + (d/k) lg n.
/// k = d gives the two-stage sizing 2d lg(en/d) + lg n; k = 1 gives the
/// one-stage d-disjunct sizing.
std::uint64_t stage1_test_count(const BigInt& n, unsigned d, unsigned k);

/// Params sized by stage1_test_count; throws InputError when d >= n or k < 1.
RwParams make_rw_params(std::uint64_t n, unsigned d, unsigned k, std::uint64_t seed);

/// Throws InputError unless tparam is a positive multiple of d, k >= 1, d < n.
void validate(const RwParams& p);

/// 2*tparam rows; column j is injected into tparam/d distinct rows drawn
/// from its own (seed, j) substream.
TestMatrix build_rw_matrix(const RwParams& params);

/// Answers one pooled test: true iff the pool contains a defective.
using TestOracle = std::function<bool(std::span<const ItemIndex>)>;

/// Oracle bound to a fixed hidden set.
TestOracle hidden_set_oracle(DefectiveSet hidden);

struct TwoStageTranscript {
  DefectiveSet stage1_candidates;
  std::uint64_t stage1_tests = 0;
  std::uint64_t stage2_tests = 0;
  DefectiveSet final_set;
  bool failed = false;

  std::string to_string() const;
  friend bool operator==(const TwoStageTranscript&, const TwoStageTranscript&) = default;
};

/// Stage 1 runs every row of `m` through the oracle and keeps the items in no
/// negative test. At d+k or more candidates the run is marked failed and
/// stage 2 is skipped; otherwise each candidate is tested alone.
TwoStageTranscript two_stage_identify(const TestMatrix& m, const RwParams& params,
                                      const TestOracle& oracle);
TwoStageTranscript two_stage_identify(const RwParams& params, const TestOracle& oracle);

enum class HiddenMode { kFixed, kRandom };

struct TrialPlan {
  RwParams base;             // trial i uses seed base.seed + i
  std::uint64_t trials = 0;
  HiddenMode mode = HiddenMode::kRandom;
  DefectiveSet fixed_hidden;  // used when mode == kFixed
  unsigned hidden_size = 0;   // used when mode == kRandom; defaults to d
};

struct TrialRecord {
  std::uint64_t seed = 0;
  DefectiveSet hidden;
  TwoStageTranscript transcript;
};

/// Random hidden set for trial `trial` of a plan seeded with `seed`.
DefectiveSet draw_hidden(std::uint64_t n, unsigned size, std::uint64_t seed);

/// Records come back ordered by trial index regardless of execution policy.
std::vector<TrialRecord> run_trials(const TrialPlan& plan, Exec exec = Exec::kParallel);

}  // namespace cgt
