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

#include <random>

#include "fragilis/builders.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/named.hpp"

namespace fragilis {
namespace {

int brute_rank(const Matroid& m, ElementSet x) {
  int best = 0;
  for (ElementSet b : m.bases()) best = std::max(best, set_size(b & x));
  return best;
}

int brute_lambda(const Matroid& m, ElementSet x) {
  return brute_rank(m, x) + brute_rank(m, m.ground() & ~x) - m.rank();
}

// Tutte k-connectivity straight from the definition.
bool brute_k_connected(const Matroid& m, int k) {
  for (ElementSet x : subsets_of(m.ground())) {
    const int a = set_size(x), b = m.size() - a;
    for (int j = 1; j < k; ++j) {
      if (a >= j && b >= j && brute_lambda(m, x) < j) return false;
    }
  }
  return true;
}

std::vector<Matroid> zoo() {
  return {uniform(2, 5),
          uniform(3, 6),
          wheel(3),
          wheel(4),
          dual(wheel(4)),
          make_x8(),
          graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),  // K4 minus an edge
          graphic(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}),  // C5
          direct_sum(uniform(2, 4), uniform(1, 3))};
}

TEST(Connectivity, LambdaMatchesBruteForce) {
  for (const Matroid& m : zoo()) {
    for (ElementSet x : subsets_of(m.ground())) ASSERT_EQ(lambda(m, x), brute_lambda(m, x));
  }
}

TEST(Connectivity, ThreeConnectedMatchesDefinition) {
  for (const Matroid& m : zoo()) {
    EXPECT_EQ(is_connected(m), brute_k_connected(m, 2));
    EXPECT_EQ(is_3connected(m), brute_k_connected(m, 3));
  }
  EXPECT_TRUE(is_3connected(wheel(5)));
  EXPECT_FALSE(is_3connected(graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}})));
  EXPECT_FALSE(is_connected(direct_sum(uniform(2, 4), uniform(1, 3))));
}

TEST(Connectivity, SeriesParallelRelaxations) {
  // K4 with one edge doubled is 3-connected up to parallel pairs only.
  const Matroid p = graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}, {1, 3}});
  EXPECT_FALSE(is_3connected(p));
  EXPECT_TRUE(is_3connected_up_to_parallel(p));
  EXPECT_TRUE(is_3connected_up_to_sp(p));
  EXPECT_FALSE(is_3connected_up_to_series(p));
  EXPECT_TRUE(is_3connected_up_to_series(dual(p)));
}

TEST(Connectivity, TrianglesAndTriadsOfWheels) {
  for (int r = 4; r <= 6; ++r) {
    const Matroid w = wheel(r);
    EXPECT_EQ(triangles(w).size(), static_cast<std::size_t>(r)) << r;
    EXPECT_EQ(triads(w).size(), static_cast<std::size_t>(r)) << r;
    for (ElementSet t : triangles(w)) EXPECT_TRUE(is_triad(dual(w), t));
  }
}

TEST(Connectivity, SegmentsOfX8) {
  const Matroid x = make_x8();
  EXPECT_TRUE(is_segment(x, x8_segment()));
  EXPECT_TRUE(is_cosegment(x, x8_cosegment()));
  EXPECT_FALSE(is_segment(x, x8_cosegment()));
  auto segs = segments(x, 4);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0], x8_segment());
  EXPECT_EQ(cosegments(x, 4).size(), 1u);
}

TEST(Connectivity, SegmentsOfUniformLine) {
  EXPECT_EQ(segments(uniform(2, 6), 3).size(), 1u);
  EXPECT_TRUE(segments(uniform(3, 6), 3).empty());
}

TEST(Connectivity, ClosureDualityOnRandomPartitions) {
  std::mt19937 rng(3);
  for (const Matroid& m : zoo()) {
    for (int t = 0; t < 200; ++t) {
      const ElementId e = static_cast<ElementId>(rng() % m.size());
      const ElementSet x = static_cast<ElementSet>(rng()) & m.ground() & ~element_bit(e);
      const ElementSet y = m.ground() & ~x & ~element_bit(e);
      EXPECT_NE(contains(closure(m, x), e), contains(coclosure(m, y), e));
    }
  }
}

TEST(Connectivity, BlockingFormsAgree) {
  for (const Matroid& m : {make_x8(), wheel(4), uniform(3, 6)}) {
    for (ElementId x = 0; x < m.size(); ++x) {
      const ElementSet rest = m.ground() & ~element_bit(x);
      for (ElementSet a : subsets_of(rest)) {
        const ElementSet b = rest & ~a;
        if (a == 0 || b == 0) continue;
        const int k = detail::lambda_without(m, x, a, b) + 1;
        if (k < 2 || k > 3 || set_size(a) < k || set_size(b) < k) continue;
        EXPECT_EQ(blocks(m, x, a, b), blocks_direct(m, x, a, b));
      }
    }
  }
}

TEST(Connectivity, PathsFromX8Segment) {
  const Matroid x = make_x8();
  ASSERT_TRUE(is_path_generating(x, x8_segment()));
  const Path3Sep p = derive_path(x, x8_segment());
  EXPECT_TRUE(is_valid_path(x, p));
  EXPECT_EQ(p.cells.front(), x8_segment());
  EXPECT_THROW(derive_path(x, element_bit(0)), PreconditionError);
}

TEST(Connectivity, PathWidth) {
  const auto pw = path_width_le3(make_x8());
  ASSERT_TRUE(pw.at_most_three);
  // The returned ordering is an oracle-checkable witness.
  ElementSet prefix = 0;
  for (ElementId e : pw.ordering) {
    prefix |= element_bit(e);
    EXPECT_LE(brute_lambda(make_x8(), prefix), 2);
  }
  EXPECT_EQ(prefix, make_x8().ground());
  EXPECT_FALSE(path_width_le3(uniform(4, 8)).at_most_three);
  EXPECT_TRUE(path_width_le3(wheel(6)).at_most_three);
}

TEST(Connectivity, FansOfWheel) {
  const Matroid w = wheel(5);
  const auto fans = find_fans(w);
  ASSERT_FALSE(fans.empty());
  for (const Fan& f : fans) {
    const auto& o = f.ordering;
    for (std::size_t i = 0; i + 2 < o.size(); ++i) {
      const ElementSet t = element_bit(o[i]) | element_bit(o[i + 1]) | element_bit(o[i + 2]);
      EXPECT_TRUE(is_triangle(w, t) || is_triad(w, t));
    }
  }
}

}  // namespace
}  // namespace fragilis
