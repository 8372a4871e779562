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
#include <sstream>

#include "fragilis/catalog.hpp"

namespace fragilis {
namespace {

std::shared_ptr<const Catalog> cat9() { return cached_catalog(9); }

bool in_class(const Matroid& m) {
  return is_3connected(m) && is_strictly_fragile(m) && count_representations(m, 5, 7) == 6;
}

// Oracle for small layers: every simple rank-3 matroid on n elements comes
// from a family of dependent triples; rank 2 and n-2 give only lines.
std::set<CanonicalKey> brute_layer(int n) {
  std::set<CanonicalKey> out;
  for (const Matroid& m : {uniform(2, n), uniform(n - 2, n)}) {
    if (in_class(m)) out.insert(canonical_key(m));
  }
  std::vector<ElementSet> triples;
  for_each_k_subset(n, 3, [&](ElementSet s) { triples.push_back(s); });
  const std::uint64_t families = std::uint64_t{1} << triples.size();
  std::set<CanonicalKey> seen;
  for (std::uint64_t f = 0; f < families; ++f) {
    std::vector<ElementSet> bases;
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (!(f >> i & 1)) bases.push_back(triples[i]);
    }
    if (bases.empty()) continue;
    Matroid m(n, bases);
    if (!satisfies_basis_exchange(m)) continue;
    if (!seen.insert(canonical_key(m)).second) continue;
    if (in_class(m)) out.insert(canonical_key(m));
  }
  return out;
}

std::set<CanonicalKey> layer_keys(const Catalog& c, int n) {
  std::set<CanonicalKey> out;
  for (const auto* r : c.layer(n)) out.insert(canonical_key(r->matroid));
  return out;
}

TEST(Catalog, SmallLayersMatchBruteForce) {
  EXPECT_EQ(layer_keys(*cat9(), 5), brute_layer(5));
  EXPECT_EQ(layer_keys(*cat9(), 6), brute_layer(6));
}

TEST(Catalog, LayerSizes) {
  const std::vector<std::size_t> want{2, 4, 4, 8, 20};
  for (int n = 5; n <= 9; ++n) EXPECT_EQ(cat9()->layer(n).size(), want[n - 5]) << n;
}

TEST(Catalog, RecordsAreInTheClass) {
  for (const auto& r : cat9()->records()) {
    EXPECT_TRUE(in_class(r.matroid)) << r.id;
    EXPECT_TRUE(r.strictly_fragile && r.h5);
    EXPECT_NE(r.case_tag, CaseTag::kNone) << r.id;
  }
  EXPECT_TRUE(cat9()->closed_under_duality());
}

TEST(Catalog, Names) {
  const Catalog& c = *cat9();
  for (const char* n : {"U25", "U35", "U26", "U46", "P6", "X8", "Y8", "Y8*", "M86", "M71", "M71*"}) {
    EXPECT_NE(c.find_name(n), nullptr) << n;
  }
  EXPECT_EQ(c.find(make_x8())->id, "X8");
  EXPECT_EQ(c.find(dual(make_x8()))->id, "X8");
  EXPECT_TRUE(is_isomorphic(c.find_name("Y8*")->matroid, dual(c.find_name("Y8")->matroid)));
  EXPECT_EQ(c.find_name("Y8")->rank(), 3);
  EXPECT_EQ(segments(c.find_name("Y8")->matroid, 4, true).size(), 2u);
  EXPECT_EQ(c.find_name("P6")->rank(), 3);
  EXPECT_EQ(triangles(c.find_name("P6")->matroid).size(), 1u);
  EXPECT_EQ(c.find(wheel(4)), nullptr);
}

TEST(Catalog, CaseTags) {
  const Catalog& c = *cat9();
  EXPECT_EQ(c.find_name("X8")->case_tag, CaseTag::kI);
  EXPECT_EQ(c.find_name("U25")->case_tag, CaseTag::kIII);
  EXPECT_EQ(c.find_name("U26")->case_tag, CaseTag::kII);
  for (const auto& r : c.records()) {
    // Case (i) is exactly the records with an X8, Y8 or Y8* minor.
    const TargetFamily x({make_x8(), c.find_name("Y8")->matroid, c.find_name("Y8*")->matroid});
    EXPECT_EQ(r.case_tag == CaseTag::kI, x.has_minor(r.matroid)) << r.id;
  }
}

TEST(Catalog, GluingConstructionsStayInTheClass) {
  const Matroid u25 = uniform(2, 5, {"a", "b", "c", "d", "e"});
  const auto keys = gluing_constructions(u25, "U25", {{0, 2, 1}, {0, 3, 1}}, 9);
  EXPECT_TRUE(keys.count(canonical_key(u25)));
  std::set<CanonicalKey> all;
  for (const auto& r : cat9()->records()) all.insert(canonical_key(r.matroid));
  int in = 0;
  for (const auto& [k, trace] : keys) in += all.count(k);
  EXPECT_GT(in, 1);
}

TEST(Catalog, SaveLoadRoundTrip) {
  std::stringstream ss;
  save(*cat9(), ss);
  const Catalog back = load(ss);
  ASSERT_EQ(back.size(), cat9()->size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back.records()[i].id, cat9()->records()[i].id);
    EXPECT_EQ(back.records()[i].matroid.bases(), cat9()->records()[i].matroid.bases());
  }
}

std::string expect_format_error(const std::string& text) {
  std::istringstream is(text);
  try {
    load(is);
  } catch (const FormatError& e) {
    return e.what();
  }
  return "no error";
}

TEST(Catalog, LoadDiagnostics) {
  EXPECT_NE(expect_format_error("FMC2\n").find("line 1"), std::string::npos);
  EXPECT_NE(expect_format_error("FMC1\n\nname U25\nelems 5 rank 2 nbases 2\n3\n3\n")
                .find("ascending"), std::string::npos);
  // {0,1} and {2,3} alone violate basis exchange.
  EXPECT_NE(expect_format_error("FMC1\n\nname Q\nelems 4 rank 2 nbases 2\n3\nc\n").find("exchange"),
            std::string::npos);
  EXPECT_NE(expect_format_error("FMC1\n\nname U25\nelems 5 rank 2 nbases 1\nzz\n")
                .find("hexadecimal"), std::string::npos);
  // A valid record stored under the wrong name.
  std::stringstream ss;
  save(*cat9(), ss);
  std::string text = ss.str();
  text.replace(text.find("name X8"), 7, "name Z8");
  EXPECT_NE(expect_format_error(text).find("disagrees"), std::string::npos);
}

TEST(Catalog, EnumerateBounds) {
  EXPECT_THROW(enumerate(4), PreconditionError);
  EXPECT_THROW(enumerate(13), PreconditionError);
}

}  // namespace
}  // namespace fragilis
