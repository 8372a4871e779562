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

#include <set>

#include "fragilis/builders.hpp"
#include "fragilis/gf_rep.hpp"
#include "fragilis/named.hpp"

namespace fragilis {
namespace {

using Matrix = std::vector<std::vector<int>>;  // r rows of D

// Oracle: count scaling classes of D with M[I|D] = M, basis {0..r-1}.
int brute_count(const Matroid& m, int q) {
  const int r = m.rank(), k = m.size() - r;
  const int cells = r * k;
  long long total = 1;
  for (int i = 0; i < cells; ++i) total *= q;
  std::set<Matrix> classes;
  Matrix d(r, std::vector<int>(k));
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < k; ++j) {
        d[i][j] = static_cast<int>(c % q);
        c /= q;
      }
    }
    std::vector<std::vector<int>> cols;
    for (int i = 0; i < r; ++i) {
      std::vector<int> e(r, 0);
      e[i] = 1;
      cols.push_back(e);
    }
    for (int j = 0; j < k; ++j) {
      std::vector<int> col(r);
      for (int i = 0; i < r; ++i) col[i] = d[i][j];
      cols.push_back(col);
    }
    if (!gf_matroid(q, cols).same_structure(m)) continue;
    // Least image under row scalings, each column scaled to lead with 1.
    Matrix best;
    std::vector<int> s(r, 1);
    for (;;) {
      Matrix t(r, std::vector<int>(k));
      for (int j = 0; j < k; ++j) {
        int lead = 0;
        for (int i = 0; i < r; ++i) {
          t[i][j] = d[i][j] * s[i] % q;
          if (!lead && t[i][j]) lead = t[i][j];
        }
        int inv = 1;
        while (lead && inv * lead % q != 1) ++inv;
        for (int i = 0; i < r; ++i) t[i][j] = t[i][j] * inv % q;
      }
      if (best.empty() || t < best) best = t;
      int i = 0;
      while (i < r && s[i] == q - 1) s[i++] = 1;
      if (i == r) break;
      ++s[i];
    }
    classes.insert(best);
  }
  return static_cast<int>(classes.size());
}

TEST(GfRep, CountsMatchBruteForce) {
  for (const Matroid& m : {uniform(2, 4), uniform(2, 5), uniform(2, 6), uniform(3, 5), uniform(2, 3)}) {
    for (int q : {2, 3, 5}) {
      EXPECT_EQ(count_representations(m, q), brute_count(m, q)) << m.rank() << "," << m.size() << " q" << q;
    }
  }
}

TEST(GfRep, KnownCounts) {
  EXPECT_EQ(count_representations(uniform(2, 5), 5), 6);
  EXPECT_EQ(count_representations(uniform(3, 5), 5), 6);
  EXPECT_EQ(count_representations(wheel(3), 5), 1);
  EXPECT_EQ(count_representations(wheel(4), 7), 1);
  EXPECT_EQ(count_representations(uniform(2, 7), 5), 0);
  EXPECT_FALSE(is_representable(uniform(2, 4), 2));
  EXPECT_TRUE(is_representable(uniform(2, 4), 3));
}

TEST(GfRep, RepresentationsRealizeTheMatroid) {
  for (const Matroid& m : {uniform(2, 5), make_x8(), wheel(4)}) {
    for (const Representation& rep : representations(m, 5)) {
      EXPECT_TRUE(matroid_of(rep).same_structure(m));
    }
  }
}

TEST(GfRep, H5Status) {
  EXPECT_EQ(is_h5(make_x8()), H5Status::kYes);
  EXPECT_EQ(is_h5(uniform(2, 5)), H5Status::kYes);
  EXPECT_EQ(is_h5(wheel(4)), H5Status::kNotApplicable);
  EXPECT_EQ(is_h5(uniform(3, 6)), H5Status::kYes);
  EXPECT_EQ(is_h5(uniform(2, 7)), H5Status::kNo);
  EXPECT_STREQ(to_string(H5Status::kNotApplicable), "not-applicable");
}

TEST(GfRep, CountInvariantUnderDuality) {
  for (const Matroid& m : {uniform(2, 6), make_x8(), wheel(3)}) {
    EXPECT_EQ(count_representations(m, 5), count_representations(dual(m), 5));
  }
}

TEST(GfRep, Preconditions) {
  EXPECT_THROW(count_representations(uniform(2, 4), 4), PreconditionError);
  EXPECT_THROW(gf_matroid(9, {{1}}), PreconditionError);
}

}  // namespace
}  // namespace fragilis
