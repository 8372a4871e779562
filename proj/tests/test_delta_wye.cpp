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

#include "fragilis/builders.hpp"
#include "fragilis/canonical.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/delta_wye.hpp"
#include "fragilis/fragility.hpp"
#include "fragilis/named.hpp"

namespace fragilis {
namespace {

using Edges = std::vector<std::pair<int, int>>;

// Oracle: in a rank-3 matroid a line is modular iff it meets every other line.
bool line_meets_all(const Matroid& m, ElementSet line) {
  for (ElementSet g : subsets_of(m.ground())) {
    if (m.rank(g) != 2 || closure(m, g) != g) continue;
    if ((g & line) == 0) return false;
  }
  return true;
}

TEST(DeltaWye, ModularLinesInRankThree) {
  const Matroid p6 = rational_matroid({{1, 0, 1, 0, 1, 1}, {0, 1, 1, 0, 0, 2}, {0, 0, 0, 1, 1, 3}});
  for (const Matroid& m : {uniform(3, 6), wheel(3), p6}) {
    for (ElementSet f : subsets_of(m.ground())) {
      if (m.rank(f) != 2 || closure(m, f) != f) continue;
      EXPECT_EQ(is_modular_flat(m, f), line_meets_all(m, f));
    }
  }
  EXPECT_FALSE(is_modular_flat(wheel(3), 0b000011));  // not a flat
}

TEST(DeltaWye, ThetaStructure) {
  EXPECT_TRUE(is_isomorphic(theta(3).matroid, wheel(3)));
  for (int k = 2; k <= 7; ++k) {
    const ThetaK th = theta(k);
    EXPECT_TRUE(th.matroid.same_structure(theta_rational(k))) << k;
    EXPECT_TRUE(is_segment(th.matroid, th.a_side()));
    EXPECT_TRUE(th.matroid.is_independent(th.b_side()));
    EXPECT_TRUE(is_cosegment(th.matroid, th.b_side()) || k == 2);
  }
}

TEST(DeltaWye, GraphicDeltaWye) {
  // W4 with the triangle hub,1,2 replaced by a Y centred at a new vertex 5.
  const Matroid w = wheel(4);
  const ElementSet tri = w.set_of(std::vector<std::string>{"s1", "r1", "s2"});
  const Matroid d = delta_exchange(w, tri);
  const Matroid y = graphic(6, Edges{{5, 0}, {5, 1}, {5, 2}, {2, 3}, {0, 3}, {3, 4}, {0, 4}, {4, 1}});
  EXPECT_TRUE(is_isomorphic(d, y));
  EXPECT_TRUE(is_triad(d, tri));
  EXPECT_EQ(d.labels(), w.labels());
  // K4 goes to K_{2,3}.
  const Matroid k = delta_exchange(wheel(3), 0b000111);
  EXPECT_TRUE(is_isomorphic(k, graphic(5, Edges{{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}})));
}

TEST(DeltaWye, RoundTripsOnX8) {
  const Matroid x = make_x8();
  const Matroid d = delta_exchange(x, x8_segment());
  EXPECT_TRUE(is_cosegment(d, x8_segment()));
  EXPECT_EQ(nabla_exchange(d, x8_segment()), x);
  const Matroid n = nabla_exchange(x, x8_cosegment());
  EXPECT_TRUE(is_segment(n, x8_cosegment()));
  EXPECT_EQ(delta_exchange(n, x8_cosegment()), x);
  EXPECT_TRUE(is_strictly_fragile(d));
  EXPECT_TRUE(is_strictly_fragile(n));
  // Disjoint S and C commute.
  EXPECT_EQ(nabla_exchange(delta_exchange(x, x8_segment()), x8_cosegment()),
            delta_exchange(nabla_exchange(x, x8_cosegment()), x8_segment()));
}

TEST(DeltaWye, TwoElementExchangeSwaps) {
  const Matroid u = uniform(3, 5);
  const Matroid d = delta_exchange(u, 0b00011);
  std::vector<int> swap{1, 0, 2, 3, 4};
  EXPECT_TRUE(d.same_structure(permute(u, swap)));
}

TEST(DeltaWye, DeletionLaw) {
  // Δ_A(M)/x = Δ_{A-x}(M\x) for x in A.
  const Matroid x8 = make_x8();
  const ElementSet a = x8_segment();
  const Matroid d = delta_exchange(x8, a);
  for_each_element(a, [&](ElementId e) {
    const Matroid mx = delete_element(x8, e);
    const ElementSet rest = mx.set_of(x8.labels_of(a & ~element_bit(e)));
    EXPECT_TRUE(same_labeled(contract_element(d, e), delta_exchange(mx, rest)));
  });
}

TEST(DeltaWye, Preconditions) {
  const Matroid x = make_x8();
  EXPECT_THROW(delta_exchange(x, x8_cosegment()), PreconditionError);
  EXPECT_THROW(nabla_exchange(x, x8_segment()), PreconditionError);
  EXPECT_THROW(delta_exchange(x, 1u << 20), DomainError);
  EXPECT_THROW(delta_exchange(uniform(2, 5), 0b11111), PreconditionError);
}

TEST(DeltaWye, GluingMatchesCliqueSum) {
  // Host K4 on 0..3 with triangle a=01, b=12, c=02 at hub 0 (spokes a, c).
  const Matroid k4 = graphic(4, Edges{{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
  for (int r = 3; r <= 5; ++r) {
    GluingSpec spec{0, 1, 2, r, element_bit(1), "w"};
    const Matroid g = glue_wheel(k4, spec);
    // Wheel rim runs 2 -> v3 -> ... -> v_r -> 1 around hub 0.
    Edges e{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
    int prev = 2;
    for (int i = 3; i <= r; ++i) {
      const int v = 4 + i - 3;
      e.push_back({prev, v});
      e.push_back({0, v});
      prev = v;
    }
    e.push_back({prev, 1});
    const Matroid oracle = graphic(4 + r - 2, e);
    EXPECT_TRUE(is_isomorphic(g, oracle)) << r;
    EXPECT_EQ(g.size(), k4.size() + 2 * r - 4);
  }
}

TEST(DeltaWye, GluingPreconditions) {
  const Matroid w = wheel(3);
  EXPECT_THROW(glue_wheel(w, GluingSpec{0, 1, 2, 3, element_bit(0), "w"}), PreconditionError);
  EXPECT_THROW(glue_wheel(w, GluingSpec{0, 1, 3, 3, element_bit(1), "w"}), PreconditionError);
  EXPECT_THROW(glue_wheel(w, GluingSpec{0, 1, 2, 2, element_bit(1), "w"}), PreconditionError);
  EXPECT_THROW(glue_wheel(w, GluingSpec{0, 1, 2, 3, element_bit(1), "r"}), PreconditionError);
}

}  // namespace
}  // namespace fragilis
