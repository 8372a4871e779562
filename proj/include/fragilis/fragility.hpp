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

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fragilis/builders.hpp"
#include "fragilis/canonical.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/matroid.hpp"

namespace fragilis {

namespace detail {

// Memo of minor queries for one family, keyed by canonical form. Cleared
// wholesale when it reaches its bound.
struct MinorCache {
  std::mutex mu;
  std::unordered_map<CanonicalKey, bool, CanonicalKeyHash> entries;
  std::size_t limit = std::size_t{1} << 16;
};

}  // namespace detail

/// A finite family of excluded targets, stored in canonical form.
class TargetFamily {
 public:
  TargetFamily() = default;

  explicit TargetFamily(const std::vector<Matroid>& members) {
    for (const Matroid& m : members) {
      CanonicalKey key = canonical_key(m);
      bool dup = false;
      for (const Member& x : members_) dup = dup || x.key == key;
      if (dup) continue;
      Member mem{canonical_form(m), std::move(key), 0};
      const int r = m.rank(), n = m.size();
      if (r == 2 && is_simple(m) && m.bases().size() == choose2(n)) {
        mem.line_points = n;
      }
      if (n - r == 2 && is_cosimple(m) && m.bases().size() == choose2(n)) {
        mem.line_points = -n;
      }
      members_.push_back(std::move(mem));
    }
  }

  const std::vector<Matroid> members() const {
    std::vector<Matroid> out;
    for (const Member& m : members_) out.push_back(m.matroid);
    return out;
  }

  TargetFamily dual_family() const {
    std::vector<Matroid> d;
    for (const Member& m : members_) d.push_back(dual(m.matroid));
    return TargetFamily(d);
  }

  /// Whether M has a minor isomorphic to some member.
  bool has_minor(const Matroid& m) const {
    std::vector<const Member*> generic;
    for (const Member& t : members_) {
      if (!fits(m, t.matroid)) continue;
      if (t.line_points > 0) {
        if (has_line_minor(m, t.line_points)) return true;
      } else if (t.line_points < 0) {
        if (has_line_minor(dual(m), -t.line_points)) return true;
      } else {
        generic.push_back(&t);
      }
    }
    return !generic.empty() && search(m, generic);
  }

  void set_cache_limit(std::size_t limit) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->limit = limit;
  }

 private:
  struct Member {
    Matroid matroid;
    CanonicalKey key;
    int line_points;  // q for U(2,q), -q for U(q-2,q), else 0
  };

  static std::size_t choose2(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
  }

  static bool fits(const Matroid& m, const Matroid& t) {
    return m.size() >= t.size() && m.rank() >= t.rank() &&
           m.size() - m.rank() >= t.size() - t.rank();
  }

  // M has a U(2,q) minor iff contracting some independent set of size r−2
  // leaves at least q parallel classes of non-loops.
  static bool has_line_minor(const Matroid& m, int q) {
    const int r = m.rank();
    if (r < 2) return false;
    bool found = false;
    for_each_k_subset(m.size(), r - 2, [&](ElementSet i) {
      if (found || !m.is_independent(i)) return;
      std::vector<ElementId> reps;
      for (ElementId e = 0; e < m.size() && !found; ++e) {
        if (contains(i, e)) continue;
        ElementSet ie = i | element_bit(e);
        if (m.rank_unchecked(ie) != r - 1) continue;
        bool fresh = true;
        for (ElementId f : reps) {
          if (m.rank_unchecked(ie | element_bit(f)) == r - 1) {
            fresh = false;
            break;
          }
        }
        if (fresh) {
          reps.push_back(e);
          found = static_cast<int>(reps.size()) >= q;
        }
      }
    });
    return found;
  }

  // Recursive single-element removal with memo on canonical keys.
  bool search(const Matroid& m, const std::vector<const Member*>& targets) const {
    std::vector<const Member*> live;
    for (const Member* t : targets) {
      if (fits(m, t->matroid)) live.push_back(t);
    }
    if (live.empty()) return false;
    CanonicalKey key = canonical_key(m);
    for (const Member* t : live) {
      if (t->key == key) return true;
    }
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->entries.find(key);
      if (it != cache_->entries.end()) return it->second;
    }
    bool found = false;
    for (ElementId e = 0; e < m.size() && !found; ++e) {
      if (!m.is_coloop(e)) found = search(delete_element(m, e), live);
      if (!found && !m.is_loop(e)) found = search(contract_element(m, e), live);
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->entries.size() >= cache_->limit) cache_->entries.clear();
    cache_->entries.emplace(std::move(key), found);
    return found;
  }

  std::vector<Member> members_;
  std::shared_ptr<detail::MinorCache> cache_ =
      std::make_shared<detail::MinorCache>();
};

/// The family {U(2,5), U(3,5)}, used wherever no family is given.
inline const TargetFamily& default_family() {
  static const TargetFamily family({uniform(2, 5), uniform(3, 5)});
  return family;
}

inline bool has_minor(const Matroid& m,
                      const TargetFamily& t = default_family()) {
  return t.has_minor(m);
}

struct ElementClass {
  ElementSet deletable = 0;
  ElementSet contractible = 0;
  int n = 0;
  ElementSet flexible() const { return deletable & contractible; }
  ElementSet essential() const { return full_set(n) & ~(deletable | contractible); }
};

inline ElementClass classify_elements(const Matroid& m,
                                      const TargetFamily& t = default_family()) {
  ElementClass out;
  out.n = m.size();
  for (ElementId e = 0; e < m.size(); ++e) {
    if (t.has_minor(delete_element(m, e))) out.deletable |= element_bit(e);
    if (t.has_minor(contract_element(m, e))) out.contractible |= element_bit(e);
  }
  return out;
}

inline bool is_fragile(const Matroid& m,
                       const TargetFamily& t = default_family()) {
  for (ElementId e = 0; e < m.size(); ++e) {
    if (t.has_minor(delete_element(m, e)) &&
        t.has_minor(contract_element(m, e))) {
      return false;
    }
  }
  return true;
}

inline bool is_strictly_fragile(const Matroid& m,
                                const TargetFamily& t = default_family()) {
  return t.has_minor(m) && is_fragile(m, t);
}

/// A coindependent segment with an element that is not deletable.
inline bool allowable_segment(const Matroid& m, ElementSet a,
                              const TargetFamily& t = default_family()) {
  if (!is_segment(m, a)) throw PreconditionError("A is not a segment");
  if (!is_coindependent(m, a)) return false;
  bool found = false;
  for_each_element(a, [&](ElementId e) {
    if (!found && !t.has_minor(delete_element(m, e))) found = true;
  });
  return found;
}

/// The segment condition in M* for the dual family.
inline bool allowable_cosegment(const Matroid& m, ElementSet a,
                                const TargetFamily& t = default_family()) {
  if (!is_cosegment(m, a)) throw PreconditionError("A is not a cosegment");
  return allowable_segment(dual(m), a, t.dual_family());
}

inline bool is_allowable_set(const Matroid& m, ElementSet a,
                             const TargetFamily& t = default_family()) {
  if (is_segment(m, a) && allowable_segment(m, a, t)) return true;
  return is_cosegment(m, a) && allowable_cosegment(m, a, t);
}

/// All nonempty allowable parallel (or, with `series`, series) extensions
/// along A: one new element beside each member of a nonempty set of
/// deletable (contractible) elements of A, up to isomorphism fixing the
/// roles of old and new elements. New elements are named prefix + partner
/// label.
inline std::vector<Matroid> allowable_extensions(
    const Matroid& m, ElementSet a, bool series,
    const TargetFamily& t = default_family(), const std::string& prefix = "p") {
  if (series ? !is_cosegment(m, a) : !is_segment(m, a)) {
    throw PreconditionError("A is not a segment/cosegment as required");
  }
  ElementSet eligible = 0;
  for_each_element(a, [&](ElementId e) {
    bool ok = series ? t.has_minor(contract_element(m, e))
                     : t.has_minor(delete_element(m, e));
    if (ok) eligible |= element_bit(e);
  });
  std::vector<Matroid> out;
  std::vector<CanonicalKey> seen;
  for (ElementSet sub = eligible; sub != 0; sub = (sub - 1) & eligible) {
    if (m.size() + set_size(sub) > kMaxElements) {
      throw CapacityError("extension exceeds capacity");
    }
    std::vector<ExtensionPair> pairs;
    for_each_element(sub, [&](ElementId e) {
      pairs.push_back({e, prefix + m.label(e)});
    });
    Matroid q = series ? series_extend(m, pairs) : parallel_extend(m, pairs);
    std::vector<int> colors(q.size(), 0);
    for_each_element(a, [&](ElementId e) { colors[e] = 1; });
    for (int i = m.size(); i < q.size(); ++i) colors[i] = 2;
    CanonicalKey key = canonical_key(q, colors);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace fragilis
