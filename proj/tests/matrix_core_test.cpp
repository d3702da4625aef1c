#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "cgt/crs.hpp"
#include "cgt/decode.hpp"
#include "cgt/errors.hpp"
#include "cgt/matrix_io.hpp"
#include "cgt/small_d.hpp"
#include "cgt/verify.hpp"
#include "test_util.hpp"

namespace cgt {
namespace {

using testing::identity_matrix;

// Residue classes mod 2 then mod 3 over six items.
TestMatrix crs_6() {
  PrimePowerPlan plan;
  plan.target_n = 6;
  plan.target_d = 1;
  plan.entries = {{2, 1}, {3, 1}};
  return build_crs_matrix(6, plan);
}

OutcomeVector bits(std::string_view s) { return OutcomeVector::parse(s); }

TEST(TestMatrix, RejectsOutOfRangeAndUnsortedRows) {
  EXPECT_THROW(TestMatrix(3, {{0, 3}}), InputError);
  EXPECT_THROW(TestMatrix(3, {{1, 1}}), InputError);
  EXPECT_THROW(TestMatrix(3, {{2, 1}}), InputError);
  EXPECT_NO_THROW(TestMatrix(3, {{}, {0, 1, 2}}));
}

TEST(DefectiveSet, SortsAndRejectsDuplicates) {
  DefectiveSet s{4, 1, 3};
  EXPECT_EQ(s.to_string(), "{1,3,4}");
  EXPECT_THROW((DefectiveSet{1, 1}), InputError);
  EXPECT_THROW(s.check_bounds(4), InputError);
}

TEST(RunTests, EmptyDefectiveSetGivesAllNegative) {
  const auto m = crs_6();
  EXPECT_EQ(run_tests(m, {}).to_string(), "00000");
}

TEST(RunTests, IdentityMatrix) {
  EXPECT_EQ(run_tests(identity_matrix(3), {0, 2}).to_string(), "101");
}

TEST(RunTests, CrsResidues) {
  const auto m = crs_6();
  // 4 mod 2 = 0 hits row 0; 4 mod 3 = 1 hits row 3.
  EXPECT_EQ(run_tests(m, {4}).to_string(), "10010");
}

TEST(RunTests, OutOfRangeDefective) {
  EXPECT_THROW(run_tests(identity_matrix(3), {3}), InputError);
}

TEST(DecodeDisjunct, IdentityMatrix) {
  EXPECT_EQ(decode_disjunct(identity_matrix(3), bits("101"), 2),
            DecodeResult(Identified{{0, 2}}));
}

TEST(DecodeDisjunct, CrsSingleDefective) {
  EXPECT_EQ(decode_disjunct(crs_6(), bits("10010"), 1), DecodeResult(Identified{{4}}));
}

TEST(DecodeDisjunct, CrsOverflow) {
  const auto m = crs_6();
  const auto r = decode_disjunct(m, run_tests(m, {1, 4}), 1);
  ASSERT_TRUE(std::holds_alternative<Overflow>(r));
  EXPECT_GE(std::get<Overflow>(r).count, 2u);
}

TEST(DecodeDisjunct, LengthMismatch) {
  EXPECT_THROW(decode_disjunct(crs_6(), bits("1001"), 1), InputError);
}

TEST(IsDisjunct, IdentityIsDisjunctForEveryD) {
  const auto m = identity_matrix(6);
  for (unsigned d = 0; d < 6; ++d) EXPECT_TRUE(is_d_disjunct(m, d)) << d;
}

TEST(IsDisjunct, AllOnesRowIsNot) {
  const TestMatrix m(3, {{0, 1, 2}});
  const auto rep = check_d_disjunct(m, 1);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.counterexample);
  EXPECT_EQ(rep.counterexample->subset, (std::vector<ItemIndex>{0}));
}

TEST(IsDisjunct, CrsN16D2) {
  EXPECT_TRUE(is_d_disjunct(build_crs_matrix(16, select_prime_plan(16, 2)), 2));
}

TEST(IsDisjunct, DMustBeBelowN) {
  EXPECT_THROW(is_d_disjunct(identity_matrix(3), 3), InputError);
  EXPECT_THROW(is_separable_upto(identity_matrix(3), 3), InputError);
}

TEST(IsDisjunct, GuardRefusesLargeInstances) {
  const auto big = identity_matrix(65);
  EXPECT_THROW(is_d_disjunct(big, 1), GuardExceeded);
  VerifyGuard forced;
  forced.force = true;
  EXPECT_TRUE(is_d_disjunct(big, 1, forced));
  VerifyGuard tight;
  tight.max_subsets = 10;
  EXPECT_THROW(is_d_disjunct(identity_matrix(6), 2, tight), GuardExceeded);
}

TEST(IsSeparable, Examples) {
  EXPECT_TRUE(is_separable_upto(identity_matrix(3), 2));
  const TestMatrix twins(3, {{0, 1}, {2}});
  EXPECT_FALSE(is_separable_upto(twins, 1));
  const auto d2 = build_d2_matrix(2, 9);
  ASSERT_EQ(d2.t(), 7u);
  const auto rep = check_separable_upto(d2, 2);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.subsets_checked, 46u);
}

TEST(SamplingRate, Examples) {
  EXPECT_EQ(sampling_rate(identity_matrix(5)), 1u);
  const auto plan = select_prime_plan(100, 2);
  EXPECT_EQ(sampling_rate(build_crs_matrix(100, plan)), plan.entries.size());
}

// Outcomes only gain positives as defectives are added.
TEST(Properties, OutcomesAreMonotone) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_matrix(12, 10, 0.25, gen);
    std::vector<ItemIndex> items;
    OutcomeVector prev = run_tests(m, {});
    for (ItemIndex i : {3u, 7u, 0u, 11u}) {
      items.push_back(i);
      const OutcomeVector next = run_tests(m, DefectiveSet(items));
      for (std::size_t r = 0; r < m.t(); ++r) EXPECT_LE(prev.bits[r], next.bits[r]);
      prev = next;
    }
  }
}

TEST(Properties, DisjunctImpliesSeparable) {
  std::mt19937_64 gen(11);
  int disjunct_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = testing::random_matrix(8, 12, 0.3, gen);
    for (unsigned d = 1; d <= 2; ++d) {
      if (is_d_disjunct(m, d)) {
        ++disjunct_seen;
        EXPECT_TRUE(is_separable_upto(m, d));
      }
    }
  }
  EXPECT_GT(disjunct_seen, 0);
}

TEST(Properties, DecodeNeverIdentifiesMoreThanD) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_matrix(10, 8, 0.3, gen);
    testing::for_each_subset_upto(10, 3, [&](const std::vector<ItemIndex>& s) {
      for (unsigned d = 0; d <= 3; ++d) {
        const auto r = decode_disjunct(m, run_tests(m, DefectiveSet(s)), d);
        if (auto* id = std::get_if<Identified>(&r)) EXPECT_LE(id->items.size(), d);
        if (auto* ov = std::get_if<Overflow>(&r)) EXPECT_GT(ov->count, d);
      }
    });
  }
}

// The bitset kernel agrees with the definition on random matrices, and the
// serial and parallel policies report the same first counterexample.
TEST(Properties, KernelMatchesDefinitionAndPoliciesAgree) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = testing::random_matrix(9, 14, 0.35, gen);
    for (unsigned d = 0; d <= 3; ++d) {
      const auto serial = check_d_disjunct(m, d, {}, Exec::kSerial);
      const auto parallel = check_d_disjunct(m, d, {}, Exec::kParallel);
      EXPECT_EQ(serial.pass, testing::naive_disjunct(m, d));
      EXPECT_EQ(serial.pass, parallel.pass);
      if (!serial.pass) {
        EXPECT_EQ(serial.counterexample->subset, parallel.counterexample->subset);
        EXPECT_EQ(serial.counterexample->witness, parallel.counterexample->witness);
      }
    }
  }
}

TEST(MatrixIo, RoundTripsEveryMethod) {
  std::vector<TestMatrix> ms{crs_6(), build_d2_matrix(2, 7), build_d3_matrix(3, 8),
                             identity_matrix(4)};
  PrimePowerPlan plan = optimized_prime_plan(100, 2);
  ms.push_back(build_crs_matrix(100, plan));
  for (const auto& m : ms) {
    std::stringstream ss;
    write_matrix(ss, m);
    EXPECT_EQ(read_matrix(ss), m);
  }
}

TEST(MatrixIo, HeaderLayout) {
  std::stringstream ss;
  write_matrix(ss, crs_6());
  EXPECT_EQ(ss.str(), "CGT1\nmethod=crs\nn=6 t=5 d=1\nparams=primepowers=2,3\n0 2 4\n1 3 5\n0 3\n1 4\n2 5\n");
}

TEST(MatrixIo, RejectsMalformedFiles) {
  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return read_matrix(is);
  };
  EXPECT_THROW(parse("CGT2\n"), InputError);
  EXPECT_THROW(parse("CGT1\nmethod=foo\n"), InputError);
  EXPECT_THROW(parse("CGT1\nmethod=custom\nn=3 t=2 d=1\nparams=\n0 1\n"), InputError);
  EXPECT_THROW(parse("CGT1\nmethod=custom\nn=3 t=1 d=1\nparams=\n0 3\n"), InputError);
  EXPECT_THROW(parse("CGT1\nmethod=custom\nn=3 t=1 d=1\nparams=\n\n"), InputError);
  EXPECT_THROW(parse("CGT1\nmethod=d2\nn=3 t=3 d=2\nparams=effn=3\n0\n1\n2\n"), InputError);
  EXPECT_NO_THROW(parse("CGT1\nmethod=rw\nn=3 t=2 d=1\nparams=tparam=1;k=1;seed=4;gen=x\n\n0 1 2\n"));
}

TEST(OutcomeVector, ParseRejectsOtherCharacters) {
  EXPECT_THROW(OutcomeVector::parse("01x"), InputError);
  EXPECT_EQ(OutcomeVector::parse("0110").to_string(), "0110");
}

}  // namespace
}  // namespace cgt
