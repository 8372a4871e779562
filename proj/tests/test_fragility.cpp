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
#include "fragilis/fragility.hpp"
#include "fragilis/named.hpp"

namespace fragilis {
namespace {

// Oracle: some 5-element minor is uniform of rank 2 or 3.
bool brute_has_line_minor(const Matroid& m) {
  if (m.size() < 5) return false;
  for (ElementSet keep : subsets_of(m.ground())) {
    if (set_size(keep) != 5) continue;
    const ElementSet rest = m.ground() & ~keep;
    for (ElementSet c : subsets_of(rest)) {
      const Matroid mc = contract_set(m, c);
      const Matroid n = delete_set(mc, mc.set_of(m.labels_of(rest & ~c)));
      const int r = n.rank();
      if ((r == 2 && n.bases().size() == 10) || (r == 3 && n.bases().size() == 10)) return true;
    }
  }
  return false;
}

bool brute_strictly_fragile(const Matroid& m) {
  if (!brute_has_line_minor(m)) return false;
  for (ElementId e = 0; e < m.size(); ++e) {
    if (brute_has_line_minor(delete_element(m, e)) &&
        brute_has_line_minor(contract_element(m, e))) {
      return false;
    }
  }
  return true;
}

Matroid random_rational(std::mt19937& rng, int rank, int n) {
  std::vector<std::vector<long long>> rows(rank, std::vector<long long>(n));
  for (auto& row : rows) {
    for (auto& v : row) v = static_cast<long long>(rng() % 4) - 1;
  }
  return rational_matroid(rows);
}

TEST(Fragility, MinorTestMatchesBruteForce) {
  std::vector<Matroid> zoo{uniform(2, 5), uniform(3, 5), uniform(2, 4), wheel(3), wheel(4),
                           make_x8(), uniform(3, 7), dual(wheel(4))};
  std::mt19937 rng(17);
  for (int i = 0; i < 30; ++i) zoo.push_back(random_rational(rng, 3, 7));
  for (int i = 0; i < 10; ++i) zoo.push_back(random_rational(rng, 4, 8));
  for (const Matroid& m : zoo) EXPECT_EQ(has_minor(m), brute_has_line_minor(m));
}

TEST(Fragility, StrictFragilityMatchesBruteForce) {
  std::vector<Matroid> zoo{uniform(2, 6), uniform(4, 6), uniform(3, 6), wheel(4), make_x8()};
  std::mt19937 rng(23);
  for (int i = 0; i < 20; ++i) zoo.push_back(random_rational(rng, 3, 7));
  int fragile = 0;
  for (const Matroid& m : zoo) {
    const bool s = is_strictly_fragile(m);
    EXPECT_EQ(s, brute_strictly_fragile(m));
    fragile += s;
  }
  EXPECT_GE(fragile, 3);
  EXPECT_TRUE(is_strictly_fragile(make_x8()));
  EXPECT_FALSE(is_strictly_fragile(uniform(3, 6)));
}

TEST(Fragility, ElementClassesOfX8) {
  const Matroid x = make_x8();
  const ElementClass c = classify_elements(x);
  EXPECT_EQ(c.flexible(), 0u);
  for (ElementId e = 0; e < x.size(); ++e) {
    EXPECT_EQ(contains(c.deletable, e), brute_has_line_minor(delete_element(x, e)));
    EXPECT_EQ(contains(c.contractible, e), brute_has_line_minor(contract_element(x, e)));
  }
}

TEST(Fragility, DualFamily) {
  const TargetFamily f({uniform(2, 5)});
  const TargetFamily d = f.dual_family();
  EXPECT_TRUE(f.has_minor(uniform(2, 6)));
  EXPECT_FALSE(f.has_minor(uniform(4, 6)));
  EXPECT_TRUE(d.has_minor(uniform(4, 6)));
  EXPECT_FALSE(d.has_minor(uniform(2, 6)));
}

TEST(Fragility, AllowableSets) {
  const Matroid x = make_x8();
  EXPECT_TRUE(allowable_segment(x, x8_segment()));
  EXPECT_TRUE(allowable_cosegment(x, x8_cosegment()));
  EXPECT_TRUE(is_allowable_set(x, x8_segment()));
  EXPECT_THROW(allowable_segment(x, x8_cosegment()), PreconditionError);
  // In U(2,6) every element is deletable, so no segment is allowable.
  EXPECT_FALSE(allowable_segment(uniform(2, 6), 0b000111));
}

TEST(Fragility, AllowableExtensionsAreParallel) {
  const Matroid x = make_x8();
  const auto ext = allowable_extensions(x, x8_segment(), false);
  ASSERT_FALSE(ext.empty());
  const ElementClass c = classify_elements(x);
  for (const Matroid& q : ext) {
    EXPECT_GT(q.size(), x.size());
    for (int i = x.size(); i < q.size(); ++i) {
      const std::string& lab = q.label(i);
      ASSERT_EQ(lab[0], 'p');
      const ElementId partner = *x.find(lab.substr(1));
      EXPECT_TRUE(contains(c.deletable & x8_segment(), partner));
      EXPECT_TRUE(are_parallel(q, i, partner));
    }
    EXPECT_TRUE(same_labeled(delete_set(q, q.ground() & ~x.ground()), x));
  }
  for (const Matroid& q : allowable_extensions(x, x8_cosegment(), true)) {
    for (int i = x.size(); i < q.size(); ++i) {
      EXPECT_TRUE(are_series(q, i, *x.find(q.label(i).substr(1))));
    }
  }
}

}  // namespace
}  // namespace fragilis
