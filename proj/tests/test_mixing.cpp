// Copyright 2026 The rieszmix Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace fixtures;

namespace {

struct Ops {
  CondExpectation t, u, v;
};

Ops ops(const GroundSpace& s, const Partition& u, const Partition& v) {
  return {CondExpectation::over_blocks(s), CondExpectation(u), CondExpectation(v)};
}

}  // namespace

TEST(AlphaBrute, S1Identical) {
  auto a = s1();
  auto o = ops(a, c1(a), c1(a));
  auto r = alpha_brute(o.t, o.u, o.v);
  EXPECT_EQ(r.block_value(0), q("1/4"));
  EXPECT_EQ(r.enumeration_count, 16U);
  ASSERT_TRUE(r.witnesses[0].p_event);
  EXPECT_EQ(r.witnesses[0].p_event->ids(), (IdSet{"a", "b"}));
  EXPECT_EQ(r.witnesses[0].q_event.ids(), (IdSet{"a", "b"}));
  EXPECT_EQ(alpha_expression(o.t, 0, *r.witnesses[0].p_event, r.witnesses[0].q_event), q("1/4"));
}

TEST(AlphaBrute, IndependentPartitions) {
  auto a = s1();
  auto o = ops(a, c1(a), c2(a));
  EXPECT_EQ(alpha_brute(o.t, o.u, o.v).block_value(0), Rational(0));
  EXPECT_EQ(alpha_fast(o.t, o.u, o.v).block_value(0), Rational(0));
  EXPECT_EQ(phi(o.t, o.u, o.v).block_value(0), Rational(0));
}

TEST(AlphaBrute, S2Blocks) {
  auto b = s2();
  auto o = ops(b, cd(b), cd(b));
  auto r = alpha_brute(o.t, o.u, o.v);
  EXPECT_EQ(r.coefficient.cell_values(), (std::vector<Rational>{q("1/4"), q("3/16")}));
  EXPECT_EQ(r.enumeration_count, 32U);
}

TEST(AlphaFast, MatchesBruteOnFixtures) {
  auto b = s2();
  auto o = ops(b, cd(b), cd(b));
  auto fast = alpha_fast(o.t, o.u, o.v);
  EXPECT_EQ(fast.coefficient, alpha_brute(o.t, o.u, o.v).coefficient);
  EXPECT_EQ(fast.enumeration_count, 8U);
  for (std::size_t blk = 0; blk < 2; ++blk) {
    const auto& w = fast.witnesses[blk];
    ASSERT_TRUE(w.p_event);
    EXPECT_EQ(alpha_expression(o.t, blk, *w.p_event, w.q_event), fast.block_value(blk));
  }
}

TEST(AlphaFast, S1ProofFormula) {
  auto a = s1();
  auto o = ops(a, c1(a), c1(a));
  auto qe = EventSet::from_ids(a, {"a", "b"});
  auto x = detail::centered_projection(o.t, o.u, qe.indicator());
  EXPECT_EQ(x, fn(a, {q("1/2"), q("1/2"), q("-1/2"), q("-1/2")}));
  EXPECT_EQ(o.t(positive_part(x)), LatticeFunction::constant(a, q("1/4")));
  EXPECT_EQ(alpha_fast(o.t, o.u, o.v).block_value(0), q("1/4"));
}

TEST(AlphaFast, TrivialV) {
  auto b = s2();
  auto o = ops(b, cd(b), Partition::blocks(b));
  EXPECT_TRUE(alpha_fast(o.t, o.u, o.v).coefficient.value().is_zero());
}

TEST(PositiveBand, Examples) {
  auto a = s1();
  CondExpectation t = CondExpectation::over_blocks(a), u(c1(a));
  EXPECT_EQ(positive_band(t, u, EventSet::from_ids(a, {"a", "b"})).ids(), (IdSet{"a", "b"}));
  EXPECT_TRUE(positive_band(t, u, EventSet::all(a)).is_empty());
  EXPECT_TRUE(positive_band(t, u, EventSet::empty(a)).is_empty());
  EXPECT_EQ(negative_band(t, u, EventSet::from_ids(a, {"a", "b"})).ids(), (IdSet{"c", "d"}));
}

TEST(Phi, Fixtures) {
  auto a = s1();
  auto o1 = ops(a, c1(a), c1(a));
  auto r1 = phi(o1.t, o1.u, o1.v);
  EXPECT_EQ(r1.block_value(0), q("1/2"));
  EXPECT_EQ(phi_expression(o1.t, o1.u, 0, r1.witnesses[0].q_event), q("1/2"));

  auto b = s2();
  auto o2 = ops(b, cd(b), cd(b));
  auto r2 = phi(o2.t, o2.u, o2.v);
  EXPECT_EQ(r2.coefficient.cell_values(), (std::vector<Rational>{q("1/2"), q("3/4")}));
  for (std::size_t blk = 0; blk < 2; ++blk)
    EXPECT_EQ(phi_expression(o2.t, o2.u, blk, r2.witnesses[blk].q_event), r2.block_value(blk));
}

TEST(Mixing, InputChecks) {
  auto a = s1();
  CondExpectation t(c1(a));
  try {
    alpha_brute(t, CondExpectation(c1(a)), CondExpectation(c1(a)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::blocks_mismatch);
  }
}

TEST(Classical, Values) {
  auto a = s1();
  EXPECT_EQ(classical_alpha(a, c1(a), c1(a)), q("1/4"));
  EXPECT_EQ(classical_alpha(a, c1(a), c2(a)), Rational(0));
  for (PhiRoute r : {PhiRoute::conditional_prob, PhiRoute::linf_norm}) {
    EXPECT_EQ(classical_phi(a, c1(a), c1(a), r), q("1/2"));
    EXPECT_EQ(classical_phi(a, c1(a), c2(a), r), Rational(0));
  }
  auto b = s2();
  EXPECT_EQ(classical_alpha(b, cd(b), cd(b), 1), q("3/16"));
  EXPECT_EQ(classical_phi(b, cd(b), cd(b), PhiRoute::conditional_prob, 1), q("3/4"));
  EXPECT_EQ(classical_phi(b, cd(b), cd(b), PhiRoute::linf_norm, 1), q("3/4"));
}

// Randomised cross-checks against the dense-matrix oracle.
class MixingRandom : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(MixingRandom, AgreesWithOracle) {
  InstanceSpec spec{GetParam(), 7, 2, 3, 5, 4};
  Instance inst = random_instance(spec);
  std::vector<Rational> w(inst.space.weights().begin(), inst.space.weights().end());
  auto bl = block_labels(inst.space), ul = labels_of(inst.u.partition()), vl = labels_of(inst.v.partition());

  auto brute = alpha_brute(inst.t, inst.u, inst.v);
  auto fast = alpha_fast(inst.t, inst.u, inst.v);
  auto ph = phi(inst.t, inst.u, inst.v);
  auto swapped = alpha_brute(inst.t, inst.v, inst.u);
  EXPECT_EQ(brute.coefficient, fast.coefficient);
  EXPECT_EQ(brute.coefficient, swapped.coefficient);
  for (std::size_t b = 0; b < inst.space.block_count(); ++b) {
    int blk = static_cast<int>(b);
    EXPECT_EQ(brute.block_value(b), oracle::alpha(w, bl, ul, vl, blk));
    EXPECT_EQ(ph.block_value(b), oracle::phi(w, bl, ul, vl, blk));
    EXPECT_EQ(classical_alpha(inst.space, inst.u.partition(), inst.v.partition(), b), brute.block_value(b));
    EXPECT_EQ(classical_phi(inst.space, inst.u.partition(), inst.v.partition(), PhiRoute::linf_norm, b), ph.block_value(b));
    const auto& fw = fast.witnesses[b];
    ASSERT_TRUE(fw.p_event);
    EXPECT_EQ(alpha_expression(inst.t, b, *fw.p_event, fw.q_event), fast.block_value(b));
    EXPECT_EQ(phi_expression(inst.t, inst.u, b, ph.witnesses[b].q_event), ph.block_value(b));
  }

  // Coarsening U to the blocks can only lower both coefficients.
  CondExpectation coarse = CondExpectation::over_blocks(inst.space);
  EXPECT_TRUE(leq(alpha_brute(inst.t, coarse, inst.v).coefficient, brute.coefficient));
  EXPECT_TRUE(leq(phi(inst.t, coarse, inst.v).coefficient, ph.coefficient));
  // Refining U to singletons can only raise them.
  CondExpectation fine(Partition::discrete(inst.space));
  EXPECT_TRUE(leq(brute.coefficient, alpha_brute(inst.t, fine, inst.v).coefficient));
}

INSTANTIATE_TEST_SUITE_P(Seeds, MixingRandom, ::testing::Range<std::uint64_t>(0, 40));
