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

#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <memory>
#include <bit>
#include <cstdio>
#include <cstdint>
#include <map>
#include <mutex>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fragilis/canonical.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/fragility.hpp"
#include "fragilis/gf_rep.hpp"
#include "fragilis/matroid.hpp"
#include "fragilis/named.hpp"
#include "fragilis/parallel.hpp"
#include "fragilis/pathseq.hpp"

namespace fragilis {

namespace detail {

// Points of PG(r−1, q): nonzero vectors whose first nonzero entry is 1.
inline std::vector<std::vector<int>> projective_points(int r, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(r, 0);
  for (int lead = 0; lead < r; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    const int free_count = r - lead - 1;
    long long total = 1;
    for (int i = 0; i < free_count; ++i) total *= q;
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      for (int i = lead + 1; i < r; ++i) {
        v[i] = static_cast<int>(c % q);
        c /= q;
      }
      out.push_back(v);
    }
  }
  return out;
}

// A nonzero vector orthogonal to the given r−1 independent vectors in GF(q)^r.
inline std::vector<int> normal_vector(std::vector<std::vector<int>> a, int q) {
  const int rows = static_cast<int>(a.size());
  const int r = rows + 1;
  std::vector<int> pivot_col(rows, -1);
  int rk = 0;
  for (int c = 0; c < r && rk < rows; ++c) {
    int p = rk;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rk]);
    int inv = inverse_mod(a[rk][c], q);
    for (int& x : a[rk]) x = x * inv % q;
    for (int i = 0; i < rows; ++i) {
      if (i == rk || a[i][c] == 0) continue;
      int f = a[i][c];
      for (int j = 0; j < r; ++j) a[i][j] = ((a[i][j] - f * a[rk][j]) % q + q) % q;
    }
    pivot_col[rk++] = c;
  }
  if (rk != rows) throw PreconditionError("vectors are dependent");
  int free_col = 0;
  for (int c = 0; c < r; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
      free_col = c;
      break;
    }
  }
  std::vector<int> x(r, 0);
  x[free_col] = 1;
  for (int i = 0; i < rows; ++i) x[pivot_col[i]] = (q - a[i][free_col]) % q;
  return x;
}

// 128-bit fingerprint of a canonical key; rejected extensions are remembered
// by fingerprint only.
inline std::pair<std::uint64_t, std::uint64_t> fingerprint(const CanonicalKey& k) {
  std::uint64_t a = CanonicalKeyHash{}(k);
  std::uint64_t b = 0x243f6a8885a308d3ull ^ static_cast<std::uint64_t>(k.n);
  for (ElementSet x : k.bases) {
    b += x + 0x9e3779b97f4a7c15ull;
    b = (b ^ (b >> 30)) * 0xbf58476d1ce4e5b9ull;
    b = (b ^ (b >> 27)) * 0x94d049bb133111ebull;
    b ^= b >> 31;
  }
  return {a, b ^ static_cast<std::uint64_t>(k.rank)};
}

}  // namespace detail

/// Single-element extensions of M obtained by appending one nonzero column
/// to any of the given GF(q) representations, one per distinct set of
/// hyperplanes spanning the new element. The new element is appended last.
inline std::vector<Matroid> gf_extensions(const Matroid& m,
                                          const std::vector<Representation>& reps,
                                          const std::string& new_label) {
  std::vector<Matroid> out;
  if (reps.empty()) return out;
  const int r = m.rank();
  const int n = m.size();
  if (n + 1 > kMaxElements) throw CapacityError("extension exceeds capacity");
  if (r == 0) return out;
  // Hyperplanes, with one spanning independent set each, and the hyperplane
  // spanned by every independent (r−1)-set.
  std::map<ElementSet, int> hyper_index;
  std::vector<ElementSet> hyper_span;
  std::vector<std::pair<ElementSet, int>> indep;
  for_each_k_subset(n, r - 1, [&](ElementSet s) {
    if (!m.is_independent(s)) return;
    ElementSet h = closure(m, s);
    auto [it, fresh] = hyper_index.emplace(h, static_cast<int>(hyper_span.size()));
    if (fresh) hyper_span.push_back(s);
    indep.emplace_back(s, it->second);
  });
  const int q = reps.front().q;
  const auto points = detail::projective_points(r, q);
  std::set<std::vector<bool>> cuts;
  for (const Representation& rep : reps) {
    std::vector<std::vector<int>> normals;
    for (ElementSet s : hyper_span) {
      std::vector<std::vector<int>> rows;
      for_each_element(s, [&](ElementId e) { rows.push_back(rep.columns[e]); });
      normals.push_back(r == 1 ? std::vector<int>{1}
                               : detail::normal_vector(rows, q));
      if (r == 1) normals.back() = std::vector<int>(1, 1);
    }
    for (const auto& v : points) {
      std::vector<bool> cut(hyper_span.size());
      for (std::size_t h = 0; h < normals.size(); ++h) {
        int dot = 0;
        for (int i = 0; i < r; ++i) dot += normals[h][i] * v[i];
        cut[h] = dot % q == 0;
      }
      cuts.insert(std::move(cut));
    }
  }
  std::vector<std::string> labels = m.labels();
  labels.push_back(new_label);
  for (const auto& cut : cuts) {
    std::vector<ElementSet> bases = m.bases();
    for (auto [s, h] : indep) {
      if (!cut[h]) bases.push_back(s | element_bit(n));
    }
    out.emplace_back(n + 1, std::move(bases), labels);
  }
  return out;
}

/// The 3-connected, strictly {U(2,5), U(3,5)}-fragile matroids with six
/// inequivalent GF(5) representations, grouped by size, in canonical form
/// with labels "0".."n-1". Each layer is the set of single-element
/// extensions of the previous layer closed under duality.
inline std::vector<std::vector<Matroid>> grow_layers(int n_max, int jobs = 0) {
  if (n_max < 5 || n_max > 14) throw PreconditionError("size bound must be 5..14");
  auto plain = [](const Matroid& m) { return Matroid(m.size(), m.bases()); };
  std::vector<std::vector<Matroid>> layers(n_max + 1);
  layers[5] = {plain(canonical_form(uniform(2, 5))),
               plain(canonical_form(uniform(3, 5)))};
  for (int n = 5; n < n_max; ++n) {
    const auto& parents = layers[n];
    std::mutex mu;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::map<CanonicalKey, Matroid> next;
    parallel_for(parents.size(), jobs, [&](std::size_t i) {
      const Matroid& p = parents[i];
      auto reps = representations(p, 5);
      for (const Matroid& ext : gf_extensions(p, reps, std::to_string(n))) {
        if (!is_3connected(ext)) continue;
        CanonicalKey key = canonical_key(ext);
        {
          std::lock_guard<std::mutex> lock(mu);
          if (!seen.insert(detail::fingerprint(key)).second) continue;
        }
        if (!is_strictly_fragile(ext) || count_representations(ext, 5, 6) != 6) {
          continue;
        }
        std::lock_guard<std::mutex> lock(mu);
        Matroid m(key.n, key.bases);
        next.emplace(std::move(key), std::move(m));
      }
    });
    std::vector<Matroid> added;
    for (const auto& [key, m] : next) added.push_back(m);
    for (const Matroid& m : added) {
      Matroid d = dual(m);
      CanonicalKey dk = canonical_key(d);
      if (!next.count(dk)) next.emplace(dk, Matroid(dk.n, dk.bases));
    }
    for (const auto& [key, m] : next) layers[n + 1].push_back(m);
  }
  return layers;
}

// ---------------------------------------------------------------------------
// Records and classification.

enum class CaseTag { kNone, kI, kII, kIII, kIV, kV };

inline const char* to_string(CaseTag c) {
  switch (c) {
    case CaseTag::kI: return "i";
    case CaseTag::kII: return "ii";
    case CaseTag::kIII: return "iii";
    case CaseTag::kIV: return "iv";
    case CaseTag::kV: return "v";
    case CaseTag::kNone: return "none";
  }
  return "none";
}

struct CatalogRecord {
  Matroid matroid;  // canonical form, labels "0".."n-1"
  std::string id;   // name if any, otherwise C<n>.<index>
  std::optional<std::string> name;
  bool provisional = false;
  bool strictly_fragile = false;
  bool h5 = false;
  bool has_s_minor = false;
  CaseTag case_tag = CaseTag::kNone;
  std::string provenance;

  int size() const { return matroid.size(); }
  int rank() const { return matroid.rank(); }
};

/// Ordered triangle (a, b, c) of a base matroid; b is the rim.
using GluingSite = std::array<ElementId, 3>;

/// Canonical keys of every matroid obtained from base by gluing wheels of
/// rank 3.. onto any subset of the sites (in order), deleting each rim and
/// any further spokes of used sites, together with the duals. Sizes are
/// bounded by n_max. Each key maps to a readable construction trace.
inline std::map<CanonicalKey, std::string> gluing_constructions(
    const Matroid& base, const std::string& base_name,
    const std::vector<GluingSite>& sites, int n_max) {
  std::map<CanonicalKey, std::string> out;
  const int k = static_cast<int>(sites.size());
  std::vector<int> ranks(k, 0);
  auto add = [&](const Matroid& m, const std::string& trace) {
    if (m.size() > n_max) return;
    out.emplace(canonical_key(m), trace);
    out.emplace(canonical_key(dual(m)), trace + " dual");
  };
  while (true) {
    int grown = base.size();
    for (int r : ranks) grown += r ? 2 * r - 4 : 0;
    ElementSet spokes = 0;
    for (int i = 0; i < k; ++i) {
      if (ranks[i]) spokes |= element_bit(sites[i][0]) | element_bit(sites[i][2]);
    }
    if (grown - set_size(spokes) <= n_max) {
      Matroid m = base;
      std::string trace = base_name;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        if (!ranks[i]) continue;
        GluingSpec spec;
        auto find = [&](ElementId e) { return *m.find(base.label(e)); };
        spec.a = find(sites[i][0]);
        spec.b = find(sites[i][1]);
        spec.c = find(sites[i][2]);
        spec.r = ranks[i];
        spec.x = element_bit(spec.b);
        spec.prefix = "w" + std::to_string(i + 1) + "_";
        try {
          m = glue_wheel(m, spec);
        } catch (const PreconditionError&) {
          ok = false;
        }
        trace += " glue(" + base.label(sites[i][0]) + "," +
                 base.label(sites[i][1]) + "," + base.label(sites[i][2]) +
                 ") r=" + std::to_string(ranks[i]);
      }
      if (ok) {
        for (ElementSet d : subsets_of(spokes)) {
          Matroid r = m;
          std::vector<std::string> gone = base.labels_of(d);
          if (!gone.empty()) r = delete_set(m, m.set_of(gone));
          std::string t = trace;
          if (!gone.empty()) {
            t += " delete ";
            for (std::size_t i = 0; i < gone.size(); ++i) t += (i ? "," : "") + gone[i];
          }
          add(r, t);
        }
      }
    }
    int i = 0;
    while (i < k) {
      // ranks cycle 0, 3, 4, ... while the smallest possible size fits
      int next = ranks[i] ? ranks[i] + 1 : 3;
      if (base.size() + 2 * next - 6 <= n_max) {
        ranks[i] = next;
        break;
      }
      ranks[i++] = 0;
    }
    if (i == k) break;
  }
  return out;
}

class Catalog {
 public:
  Catalog() = default;

  const std::vector<CatalogRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  int max_size() const { return max_size_; }

  const CatalogRecord* find(const Matroid& m) const {
    auto it = by_key_.find(canonical_key(m));
    return it == by_key_.end() ? nullptr : &records_[it->second];
  }
  const CatalogRecord* find_name(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &records_[it->second];
  }
  std::vector<const CatalogRecord*> layer(int n) const {
    std::vector<const CatalogRecord*> out;
    for (const auto& r : records_) {
      if (r.size() == n) out.push_back(&r);
    }
    return out;
  }
  bool closed_under_duality() const {
    for (const auto& r : records_) {
      if (!find(dual(r.matroid))) return false;
    }
    return true;
  }

  /// Builds a catalog from canonical matroids: sorts, names, flags and
  /// classifies. n_max bounds the classification constructions.
  static Catalog build(std::vector<Matroid> ms, int n_max, int jobs = 0);

 private:
  std::vector<CatalogRecord> records_;
  std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> by_key_;
  std::map<std::string, std::size_t> by_id_;
  int max_size_ = 0;

  void index();
  void derive_names();
  void compute_flags(int jobs);
  void classify_all(int jobs);
};

class NamingError : public Error {
 public:
  using Error::Error;
};

inline void Catalog::index() {
  by_key_.clear();
  by_id_.clear();
  for (std::size_t i = 0; i < records_.size(); ++i) {
    by_key_.emplace(canonical_key(records_[i].matroid), i);
  }
  std::map<int, int> counter;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    auto& r = records_[i];
    const int serial = ++counter[r.size()];
    r.id = r.name ? *r.name
                  : "C" + std::to_string(r.size()) + "." + std::to_string(serial);
    if (!by_id_.emplace(r.id, i).second) throw NamingError("duplicate name " + r.id);
  }
}

namespace detail {

inline bool same_class(const Matroid& a, const Matroid& b) {
  return canonical_key(a) == canonical_key(b);
}

}  // namespace detail

inline void Catalog::derive_names() {
  auto name = [&](const Matroid& m, const std::string& n, bool provisional) {
    auto it = by_key_.find(canonical_key(m));
    if (it == by_key_.end()) return false;
    auto& r = records_[it->second];
    if (r.name) return false;
    r.name = n;
    r.provisional = provisional;
    return true;
  };
  auto name_pair = [&](const Matroid& m, const std::string& n, bool provisional) {
    name(m, n, provisional);
    if (!detail::same_class(m, dual(m))) name(dual(m), n + "*", provisional);
  };
  name(uniform(2, 5), "U25", false);
  name(uniform(3, 5), "U35", false);
  name(uniform(2, 6), "U26", false);
  name(uniform(4, 6), "U46", false);
  // P6: rank 3 on six elements with exactly one triangle.
  std::vector<const CatalogRecord*> p6;
  for (const auto* r : layer(6)) {
    if (r->rank() == 3 && triangles(r->matroid).size() == 1) p6.push_back(r);
  }
  if (p6.size() == 1) name(p6[0]->matroid, "P6", false);
  if (max_size_ >= 8) {
    name(make_x8(), "X8", false);
    std::vector<Matroid> y8;
    for (const auto* r : layer(8)) {
      // Two 4-element segments; they meet in one element.
      if (segments(r->matroid, 4, true).size() == 2) y8.push_back(r->matroid);
    }
    if (y8.size() != 1) {
      throw NamingError("Y8 fingerprint matches " + std::to_string(y8.size()) +
                        " records");
    }
    name_pair(y8[0], "Y8", false);
    // M86: the 8-element matroid described by a path sequence other than
    // X8, Y8 and Y8*.
    std::vector<Matroid> m86;
    for (const auto& g : generated_up_to(8)) {
      const Matroid& m = g.matroid;
      if (m.size() != 8 || detail::same_class(m, make_x8()) ||
          detail::same_class(m, y8[0]) || detail::same_class(m, dual(y8[0]))) {
        continue;
      }
      m86.push_back(m);
    }
    if (m86.size() == 1) {
      name_pair(m86[0], "M86", false);
    } else {
      throw NamingError("M86 fingerprint matches " + std::to_string(m86.size()) +
                        " matroids");
    }
  }
  index();
  for (const auto& r : records_) {
    if (r.name) register_name(*r.name, r.matroid);
  }
}

inline void Catalog::compute_flags(int jobs) {
  std::vector<Matroid> s_members;
  for (const char* n : {"M86", "X8", "Y8", "Y8*"}) {
    if (const auto* r = find_name(n)) s_members.push_back(r->matroid);
  }
  const TargetFamily s_family(s_members);
  parallel_for(records_.size(), jobs, [&](std::size_t i) {
    auto& r = records_[i];
    r.strictly_fragile = is_strictly_fragile(r.matroid);
    r.h5 = is_h5(r.matroid) == H5Status::kYes;
    r.has_s_minor = !s_members.empty() && s_family.has_minor(r.matroid);
  });
}

inline void Catalog::classify_all(int jobs) {
  std::vector<Matroid> x_members;
  for (const char* n : {"X8", "Y8", "Y8*"}) {
    if (const auto* r = find_name(n)) x_members.push_back(r->matroid);
  }
  const TargetFamily x_family(x_members);
  const int n_max = max_size_;
  const Matroid u25 = uniform(2, 5, {"a", "b", "c", "d", "e"});
  // (a,c,b), (a,d,b), (a,e,b) and (a,b,c), (c,d,e); the middle is the rim.
  const auto case3 = gluing_constructions(u25, "U25", {{0, 2, 1}, {0, 3, 1}, {0, 4, 1}}, n_max);
  const auto case4 = gluing_constructions(u25, "U25", {{0, 1, 2}, {2, 3, 4}}, n_max);
  std::vector<bool> in_i(records_.size(), false);
  parallel_for(records_.size(), jobs, [&](std::size_t i) {
    in_i[i] = !x_members.empty() && x_family.has_minor(records_[i].matroid);
  });
  const std::set<std::string> case2 = {"U26", "U46", "P6", "M99", "M99*"};
  auto early_case = [&](std::size_t i) {
    const auto& r = records_[i];
    CanonicalKey key = canonical_key(r.matroid);
    if (in_i[i]) return std::pair{CaseTag::kI, std::string("has an X8, Y8 or Y8* minor")};
    if (r.name && case2.count(*r.name)) return std::pair{CaseTag::kII, "named " + *r.name};
    if (auto it = case3.find(key); it != case3.end()) return std::pair{CaseTag::kIII, it->second};
    if (auto it = case4.find(key); it != case4.end()) return std::pair{CaseTag::kIV, it->second};
    return std::pair{CaseTag::kNone, std::string()};
  };
  // M71: the 7-element record from which one wheel gluing gives M86.
  auto glue_sites = [](const Matroid& base) {
    std::vector<GluingSite> sites;
    for (ElementSet t : triangles(base)) {
      auto e = elements_of(t);
      sites.push_back({e[0], e[1], e[2]});
      sites.push_back({e[1], e[0], e[2]});
      sites.push_back({e[0], e[2], e[1]});
    }
    return sites;
  };
  std::map<CanonicalKey, std::string> case5;
  if (const auto* m86 = find_name("M86")) {
    const CanonicalKey target = canonical_key(m86->matroid);
    std::vector<std::size_t> m71;
    for (std::size_t i = 0; i < records_.size(); ++i) {
      if (records_[i].size() != 7) continue;
      for (const GluingSite& site : glue_sites(records_[i].matroid)) {
        if (gluing_constructions(records_[i].matroid, "", {site}, 8).count(target)) {
          m71.push_back(i);
          break;
        }
      }
    }
    if (!m71.empty()) {
      records_[m71[0]].name = "M71";
      records_[m71[0]].provisional = m71.size() > 1;
      const Matroid& base = records_[m71[0]].matroid;
      if (const auto* d = find(dual(base)); d && !detail::same_class(base, d->matroid)) {
        auto& rd = records_[by_key_.at(canonical_key(d->matroid))];
        if (!rd.name) {
          rd.name = "M71*";
          rd.provisional = m71.size() > 1;
        }
      }
      for (const GluingSite& site : glue_sites(base)) {
        for (auto& [k, t] : gluing_constructions(base, "M71", {site}, n_max)) {
          case5.emplace(k, t);
        }
      }
    }
  }
  std::vector<std::size_t> leftover9;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    auto [tag, trace] = early_case(i);
    if (tag == CaseTag::kNone) {
      if (auto it = case5.find(canonical_key(records_[i].matroid)); it != case5.end()) {
        tag = CaseTag::kV;
        trace = it->second;
      }
    }
    records_[i].case_tag = tag;
    if (tag != CaseTag::kNone) records_[i].provenance = trace;
    if (tag == CaseTag::kNone && records_[i].size() == 9) leftover9.push_back(i);
  }
  // M99: the 9-element records in no other case, when they form a dual pair.
  if (leftover9.size() <= 2 && !leftover9.empty()) {
    const bool pair = leftover9.size() == 2 &&
                      detail::same_class(records_[leftover9[1]].matroid,
                                         dual(records_[leftover9[0]].matroid));
    const bool self = leftover9.size() == 1 &&
                      detail::same_class(records_[leftover9[0]].matroid,
                                         dual(records_[leftover9[0]].matroid));
    if (pair || self) {
      std::size_t first = leftover9[0];
      if (pair && records_[leftover9[1]].rank() < records_[first].rank()) {
        first = leftover9[1];
      }
      for (std::size_t i : leftover9) {
        records_[i].name = i == first ? "M99" : "M99*";
        records_[i].provisional = true;
        records_[i].case_tag = CaseTag::kII;
        records_[i].provenance = "named " + *records_[i].name;
      }
    }
  }
  // M97: the 9-element case-(v) matroid without an X8, Y8 or Y8* minor that
  // has a 5-element fan, up to duality.
  std::vector<std::size_t> m97;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.size() != 9 || r.case_tag != CaseTag::kV || in_i[i] || r.name) continue;
    bool five = false;
    for (const Fan& f : find_fans(r.matroid)) five = five || f.ordering.size() == 5;
    if (five) m97.push_back(i);
  }
  if (!m97.empty()) {
    const bool unique = m97.size() == 1 ||
                        (m97.size() == 2 && detail::same_class(
                             records_[m97[1]].matroid, dual(records_[m97[0]].matroid)));
    records_[m97[0]].name = "M97";
    records_[m97[0]].provisional = !unique;
    if (m97.size() == 2 && unique) records_[m97[1]].name = "M97*";
  }
  index();
  for (const auto& r : records_) {
    if (r.name) register_name(*r.name, r.matroid);
  }
}

inline Catalog Catalog::build(std::vector<Matroid> ms, int n_max, int jobs) {
  Catalog c;
  std::sort(ms.begin(), ms.end(), [](const Matroid& a, const Matroid& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.bases() < b.bases();
  });
  for (Matroid& m : ms) {
    CatalogRecord r;
    CanonicalKey key = canonical_key(m);
    r.matroid = Matroid(key.n, key.bases);
    r.provenance = "grown";
    c.records_.push_back(std::move(r));
  }
  c.max_size_ = std::max(n_max, ms.empty() ? 0 : ms.back().size());
  c.index();
  if (c.by_key_.size() != c.records_.size()) {
    throw PreconditionError("catalog contains isomorphic records");
  }
  c.derive_names();
  c.compute_flags(jobs);
  c.classify_all(jobs);
  // Path-sequence witnesses as provenance for records in case (i).
  if (c.max_size_ >= 9) {
    for (const auto& g : generated_up_to(c.max_size_, jobs)) {
      auto it = c.by_key_.find(canonical_key(g.matroid));
      if (it == c.by_key_.end()) continue;
      auto& r = c.records_[it->second];
      if (r.case_tag != CaseTag::kI) continue;
      std::string script = to_script(g.witness);
      std::replace(script.begin(), script.end(), '\n', ';');
      if (!script.empty() && script.back() == ';') script.pop_back();
      r.provenance = "pathseq " + script;
    }
  }
  return c;
}

/// 3-connected strictly fragile matroids with six GF(5) classes on up to
/// n_max elements, named and classified.
inline Catalog enumerate(int n_max, int jobs = 0) {
  if (n_max < 5 || n_max > 12) throw PreconditionError("size bound must be 5..12");
  std::vector<Matroid> all;
  for (auto& layer : grow_layers(n_max, jobs)) {
    for (auto& m : layer) all.push_back(std::move(m));
  }
  return Catalog::build(std::move(all), n_max, jobs);
}

// ---------------------------------------------------------------------------
// .fmc files.

inline void save(const Catalog& c, std::ostream& os) {
  os << "FMC1\n";
  for (const auto& r : c.records()) {
    os << '\n';
    os << "name " << r.id << (r.provisional ? " provisional" : "") << '\n';
    os << "elems " << r.size() << " rank " << r.rank() << " nbases "
       << r.matroid.bases().size() << '\n';
    char buf[16];
    for (ElementSet b : r.matroid.bases()) {
      std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(b));
      os << buf << '\n';
    }
  }
}

inline void save(const Catalog& c, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  save(c, os);
}

/// Reads a catalog and rebuilds it; stored names must agree with the
/// derived ones.
inline Catalog load(std::istream& is, int jobs = 0) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what, std::size_t col) {
    throw FormatError("line " + std::to_string(line_no) + ", column " +
                      std::to_string(col + 1) + ": " + what);
  };
  auto next = [&]() {
    if (!std::getline(is, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next() || line != "FMC1") fail("expected 'FMC1'", 0);
  std::vector<Matroid> ms;
  std::vector<std::pair<std::string, bool>> stored;
  while (next()) {
    if (line.empty()) continue;
    if (line.rfind("name ", 0) != 0) fail("expected 'name'", 0);
    std::istringstream ns(line.substr(5));
    std::string id, flag;
    ns >> id >> flag;
    if (id.empty()) fail("empty name", 5);
    if (!flag.empty() && flag != "provisional") fail("unknown flag '" + flag + "'", 6 + id.size());
    stored.emplace_back(id, !flag.empty());
    if (!next()) fail("unexpected end of file", 0);
    int n = -1, r = -1;
    long long k = -1;
    {
      std::istringstream hs(line);
      std::string w1, w2, w3;
      if (!(hs >> w1 >> n >> w2 >> r >> w3 >> k) || w1 != "elems" ||
          w2 != "rank" || w3 != "nbases") {
        fail("expected 'elems <n> rank <r> nbases <k>'", 0);
      }
    }
    if (n < 0 || n > kMaxElements) fail("element count out of range", 6);
    if (r < 0 || r > n || k < 1) fail("bad rank or basis count", 0);
    std::vector<std::string> labels;
    std::vector<ElementSet> bases;
    for (long long i = 0; i < k; ++i) {
      if (!next()) fail("unexpected end of file", 0);
      if (i == 0 && line.rfind("labels ", 0) == 0) {
        std::istringstream ls(line.substr(7));
        std::string l;
        while (std::getline(ls, l, ',')) labels.push_back(l);
        --i;
        continue;
      }
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(line, &used, 16);
      } catch (const std::exception&) {
        fail("expected a hexadecimal basis", 0);
      }
      if (used != line.size()) fail("trailing characters", used);
      if (v >> n) fail("basis outside the ground set", 0);
      if (std::popcount(v) != r) fail("basis of wrong size", 0);
      if (!bases.empty() && v <= bases.back()) fail("bases not strictly ascending", 0);
      bases.push_back(static_cast<ElementSet>(v));
    }
    Matroid m;
    try {
      m = Matroid(n, bases, labels);
    } catch (const Error& e) {
      fail(e.what(), 0);
    }
    if (!satisfies_basis_exchange(m)) fail("bases violate the exchange axiom", 0);
    if (canonical_key(m).bases != m.bases()) fail("record not in canonical form", 0);
    ms.push_back(std::move(m));
  }
  int n_max = 0;
  for (const auto& m : ms) n_max = std::max(n_max, m.size());
  Catalog c = Catalog::build(ms, n_max, jobs);
  for (std::size_t i = 0; i < stored.size(); ++i) {
    const auto* r = c.find(ms[i]);
    if (r->id != stored[i].first || r->provisional != stored[i].second) {
      throw FormatError("record " + std::to_string(i + 1) + ": stored name '" +
                        stored[i].first + "' disagrees with derived '" + r->id + "'");
    }
  }
  return c;
}

inline Catalog load(const std::string& path, int jobs = 0) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path);
  return load(is, jobs);
}

namespace detail {

struct CatalogCache {
  std::mutex mu;
  std::map<int, std::shared_ptr<const Catalog>> by_size;
};

inline CatalogCache& catalog_cache() {
  static CatalogCache c;
  return c;
}

}  // namespace detail

/// enumerate(n_max), memoized in process and, when FRAGILIS_CACHE_DIR is
/// set, on disk as catalog-<n>.fmc.
inline std::shared_ptr<const Catalog> cached_catalog(int n_max, int jobs = 0) {
  auto& c = detail::catalog_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto it = c.by_size.find(n_max);
  if (it != c.by_size.end()) return it->second;
  std::shared_ptr<const Catalog> cat;
  std::string path;
  if (const char* dir = std::getenv("FRAGILIS_CACHE_DIR"); dir && *dir) {
    path = std::string(dir) + "/catalog-" + std::to_string(n_max) + ".fmc";
    std::ifstream probe(path);
    if (probe) {
      try {
        cat = std::make_shared<const Catalog>(load(probe, jobs));
      } catch (const Error&) {
        cat.reset();  // stale or damaged; rebuild
      }
    }
  }
  if (!cat) {
    cat = std::make_shared<const Catalog>(enumerate(n_max, jobs));
    if (!path.empty()) {
      std::ofstream os(path + ".tmp", std::ios::binary);
      if (os) {
        save(*cat, os);
        os.close();
        std::rename((path + ".tmp").c_str(), path.c_str());
      }
    }
  }
  c.by_size.emplace(n_max, cat);
  return cat;
}

}  // namespace fragilis
