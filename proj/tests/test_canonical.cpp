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

#include <algorithm>
#include <numeric>
#include <random>

#include "fragilis/builders.hpp"
#include "fragilis/canonical.hpp"
#include "fragilis/named.hpp"

namespace fragilis {
namespace {

// Oracle: try every permutation.
bool brute_isomorphic(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.bases().size() != b.bases().size()) return false;
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permute(a, perm).same_structure(b)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Matroid random_relabel(const Matroid& m, std::mt19937& rng) {
  std::vector<int> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return permute(m, perm);
}

std::vector<Matroid> small_zoo() {
  return {uniform(2, 5), uniform(3, 5), uniform(2, 6), uniform(3, 6), wheel(3),
          dual(wheel(3)), graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {0, 2}}),
          graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}}),
          direct_sum(uniform(1, 2), uniform(2, 4)), direct_sum(uniform(2, 3), uniform(1, 3))};
}

TEST(Canonical, KeysAgreeWithBruteForce) {
  const auto zoo = small_zoo();
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    for (std::size_t j = i; j < zoo.size(); ++j) {
      EXPECT_EQ(is_isomorphic(zoo[i], zoo[j]), brute_isomorphic(zoo[i], zoo[j]))
          << i << " vs " << j;
    }
  }
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937 rng(11);
  for (const Matroid& m : small_zoo()) {
    const CanonicalKey k = canonical_key(m);
    for (int t = 0; t < 20; ++t) EXPECT_EQ(canonical_key(random_relabel(m, rng)), k);
  }
  const Matroid x = make_x8();
  for (int t = 0; t < 10; ++t) EXPECT_EQ(canonical_key(random_relabel(x, rng)), canonical_key(x));
}

TEST(Canonical, FormIsIsomorphicAndIdempotent) {
  for (const Matroid& m : small_zoo()) {
    const Matroid f = canonical_form(m);
    EXPECT_TRUE(brute_isomorphic(m, f));
    EXPECT_TRUE(canonical_form(f).same_structure(f));
  }
}

TEST(Canonical, FindIsomorphismIsAMap) {
  std::mt19937 rng(5);
  const Matroid w = wheel(4);
  const Matroid v = random_relabel(w, rng);
  auto map = find_isomorphism(w, v);
  ASSERT_TRUE(map.has_value());
  EXPECT_TRUE(permute(w, *map).same_structure(v));
  EXPECT_FALSE(find_isomorphism(uniform(2, 5), uniform(3, 5)).has_value());
}

TEST(Canonical, ColorsRestrictIsomorphisms) {
  const Matroid u = uniform(2, 4);
  const std::vector<int> c1{0, 0, 1, 1}, c2{0, 1, 1, 1};
  EXPECT_NE(canonical_key(u, c1), canonical_key(u, c2));
  const std::vector<int> c3{1, 0, 1, 0};
  EXPECT_EQ(canonical_key(u, c1), canonical_key(u, c3));
  // In M(K4) the spokes of W3 form a triad and the rims a triangle.
  const Matroid w = wheel(3);
  std::vector<int> spokes(6), rims(6);
  for (int e = 0; e < 6; ++e) {
    spokes[e] = e % 2;
    rims[e] = 1 - e % 2;
  }
  EXPECT_TRUE(find_isomorphism(w, w, spokes, spokes).has_value());
  EXPECT_FALSE(find_isomorphism(w, w, spokes, rims).has_value());
}

TEST(Canonical, X8IsSelfDual) {
  EXPECT_TRUE(is_isomorphic(make_x8(), dual(make_x8())));
  EXPECT_FALSE(is_isomorphic(make_x8(), uniform(4, 8)));
}

}  // namespace
}  // namespace fragilis
