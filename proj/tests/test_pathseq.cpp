// Copyright 2023 The Authors.
//
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

#include "fragilis/gf_rep.hpp"
#include "fragilis/pathseq.hpp"

namespace fragilis {
namespace {

PathSequence one_delta() {
  PathSequence s;
  s.steps.push_back(DeltaNablaStep{SetTag::kS, Direction::kDelta, {{"s1", "e1_s1"}}});
  return s;
}

const std::vector<GeneratedMatroid>& small() { return generated_up_to(10); }

TEST(PathSeq, EmptySequenceIsX8) {
  const PathSequence empty;
  EXPECT_EQ(evaluate(empty), make_x8());
  const Path3Sep p = associated_path(empty);
  ASSERT_EQ(p.cells.size(), 2u);
  EXPECT_EQ(p.cells[0], x8_segment());
  EXPECT_EQ(p.cells[1], x8_cosegment());
}

TEST(PathSeq, DeltaStepMatchesManualConstruction) {
  const Matroid x = make_x8();
  const std::vector<ExtensionPair> ext{{0, "e1_s1"}};
  const Matroid q = parallel_extend(x, ext);
  const ElementSet s = q.set_of(std::vector<std::string>{"s1", "s2", "s3", "s4"});
  const Matroid manual = delta_exchange(q, s);
  const PathState st = evaluate_state(one_delta());
  EXPECT_TRUE(same_labeled(st.m, manual));
  EXPECT_TRUE(is_cosegment(st.m, st.set_of(SetTag::kS)));
  EXPECT_EQ(st.m.size(), 9);
}

TEST(PathSeq, GlueStepMatchesManualConstruction) {
  PathSequence s;
  s.steps.push_back(GlueStep{SetTag::kS, {"s1", "s4", "s2"}, 3, {"s1", "s4"}});
  const Matroid x = make_x8();
  const Matroid manual = glue_wheel(x, GluingSpec{0, 3, 1, 3, element_bit(0) | element_bit(3), glue_prefix(0)});
  EXPECT_TRUE(same_labeled(evaluate(s), manual));
}

TEST(PathSeq, StepErrorsCarryTheIndex) {
  PathSequence s = one_delta();
  s.steps.push_back(DeltaNablaStep{SetTag::kS, Direction::kDelta, {}});  // S is now a cosegment
  try {
    evaluate(s);
    FAIL() << "expected a StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  PathSequence bad;
  bad.steps.push_back(GlueStep{SetTag::kS, {"s1", "c1", "s2"}, 3, {"c1"}});
  EXPECT_THROW(evaluate(bad), StepError);
}

TEST(PathSeq, ScriptRoundTripOnGenerated) {
  for (const auto& g : small()) {
    const std::string text = to_script(g.witness);
    EXPECT_EQ(parse_script(text), g.witness) << text;
  }
}

TEST(PathSeq, ScriptErrorsHavePositions) {
  try {
    parse_script("X8\ndn S sideways p=\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_script("Y8\n"), FormatError);
  EXPECT_THROW(parse_script("X8\nglue S sub=s1,s4 r=3 X=s4\n"), FormatError);
}

TEST(PathSeq, DualSequenceEvaluatesToTheDual) {
  for (const auto& g : small()) {
    const PathSequence d = dual_sequence(g.witness);
    EXPECT_TRUE(is_isomorphic(evaluate(d), dual(g.matroid))) << to_script(g.witness);
    EXPECT_TRUE(same_labeled(evaluate_from_dual(g.witness), dual(evaluate(g.witness))));
  }
}

TEST(PathSeq, GeneratedOutputsAreClosedUnderDuality) {
  std::set<CanonicalKey> keys;
  for (const auto& g : small()) keys.insert(canonical_key(g.matroid));
  for (const auto& g : small()) EXPECT_EQ(keys.count(canonical_key(dual(g.matroid))), 1u);
}

TEST(PathSeq, ThreeConnectedOutputsAreStrictlyFragileH5) {
  int eights = 0;
  for (const auto& g : small()) {
    EXPECT_EQ(g.three_connected, is_3connected(g.matroid));
    EXPECT_TRUE(is_isomorphic(evaluate(g.witness), g.matroid));
    if (!g.three_connected) continue;
    EXPECT_TRUE(is_strictly_fragile(g.matroid));
    EXPECT_EQ(is_h5(g.matroid), H5Status::kYes);
    EXPECT_TRUE(path_width_le3(g.matroid).at_most_three);
    eights += g.matroid.size() == 8;
  }
  EXPECT_EQ(eights, 4);
}

TEST(PathSeq, AssociatedPathsAreValid) {
  for (const auto& g : small()) {
    if (!g.three_connected || g.witness.steps.empty()) continue;
    EXPECT_TRUE(is_valid_path(evaluate(g.witness), associated_path(g.witness)));
  }
}

TEST(PathSeq, InternalElementsOfOppositePair) {
  PathSequence s = one_delta();
  s.steps.push_back(DeltaNablaStep{SetTag::kS, Direction::kNabla, {{"s2", "e2_s2"}}});
  const Matroid m = evaluate(s);
  const InternalElements ie = internal_elements(s);
  EXPECT_EQ(ie.guts, m.set_of(std::vector<std::string>{"e1_s1"}));
  EXPECT_EQ(ie.coguts, m.set_of(std::vector<std::string>{"e2_s2"}));
  EXPECT_EQ(adjacency_sequence(s), (std::vector<SetTag>{SetTag::kS, SetTag::kS}));
}

TEST(PathSeq, Describes) {
  auto w = describes(make_x8());
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->steps.empty());
  EXPECT_FALSE(describes(uniform(2, 5)).has_value());
  for (const auto& g : small()) {
    if (g.matroid.size() != 9) continue;
    auto d = describes(g.matroid);
    ASSERT_TRUE(d.has_value());
    EXPECT_TRUE(is_isomorphic(evaluate(*d), g.matroid));
  }
}

TEST(PathSeq, NormalizeKeepsTheMatroid) {
  for (const auto& g : small()) {
    EXPECT_TRUE(is_isomorphic(evaluate(normalize(g.witness)), g.matroid));
  }
}

TEST(PathSeq, GenerateRejectsBounds) {
  GenerateOptions o;
  o.n_max = 7;
  EXPECT_THROW(generate_all(o), PreconditionError);
}

}  // namespace
}  // namespace fragilis
