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
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fragilis/element_set.hpp"

namespace fragilis {

namespace detail {

// Lazily built rank table shared by all copies of one Matroid value.
struct RankCache {
  std::once_flag once;
  std::vector<std::uint8_t> table;
};

inline constexpr int kRankTableLimit = 20;

}  // namespace detail

/// A finite matroid stored as its full basis family over elements 0..n-1.
///
/// Values are immutable after construction. Bases are kept sorted ascending
/// by mask value, which makes equality of basis families a vector compare.
/// Labels are carried alongside and follow elements through every operation.
class Matroid {
 public:
  /// The empty matroid.
  Matroid() : bases_{0} {}

  /// Builds a matroid on n elements from a basis family. The family is sorted
  /// and deduplicated; all bases must share one cardinality.
  Matroid(int n, std::vector<ElementSet> bases,
          std::vector<std::string> labels = {})
      : n_(n), bases_(std::move(bases)), labels_(std::move(labels)) {
    if (n < 0 || n > kMaxElements) {
      throw CapacityError("matroid size " + std::to_string(n) +
                          " exceeds capacity " + std::to_string(kMaxElements));
    }
    if (bases_.empty()) throw PreconditionError("empty basis family");
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    rank_ = set_size(bases_.front());
    const ElementSet g = ground();
    for (ElementSet b : bases_) {
      if (!is_subset(b, g)) throw DomainError("basis outside ground set");
      if (set_size(b) != rank_) {
        throw PreconditionError("bases of different cardinality");
      }
    }
    if (labels_.empty()) {
      labels_.reserve(n_);
      for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
    }
    if (static_cast<int>(labels_.size()) != n_) {
      throw PreconditionError("label count does not match ground set size");
    }
  }

  int size() const { return n_; }
  int rank() const { return rank_; }
  ElementSet ground() const { return full_set(n_); }
  const std::vector<ElementSet>& bases() const { return bases_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(ElementId e) const { return labels_.at(e); }

  std::optional<ElementId> find(std::string_view name) const {
    for (int i = 0; i < n_; ++i) {
      if (labels_[i] == name) return i;
    }
    return std::nullopt;
  }

  /// Element set named by labels; throws DomainError on an unknown label.
  ElementSet set_of(std::span<const std::string> names) const {
    ElementSet s = 0;
    for (const auto& name : names) {
      auto e = find(name);
      if (!e) throw DomainError("unknown element label '" + name + "'");
      s |= element_bit(*e);
    }
    return s;
  }

  std::vector<std::string> labels_of(ElementSet s) const {
    std::vector<std::string> out;
    for_each_element(s, [&](ElementId e) { out.push_back(labels_[e]); });
    return out;
  }

  /// r(X). Throws DomainError if X is not inside the ground set.
  int rank(ElementSet x) const {
    if (!is_subset(x, ground())) throw DomainError("set not in ground set");
    return rank_unchecked(x);
  }

  int rank_unchecked(ElementSet x) const {
    if (n_ <= detail::kRankTableLimit) return table()[x];
    int best = 0;
    for (ElementSet b : bases_) {
      best = std::max(best, set_size(b & x));
      if (best == rank_) break;
    }
    return best;
  }

  int corank(ElementSet x) const {
    return set_size(x) + rank_unchecked(ground() & ~x) - rank_;
  }

  bool is_independent(ElementSet x) const {
    return rank_unchecked(x) == set_size(x);
  }

  bool is_basis(ElementSet x) const {
    if (set_size(x) != rank_) return false;
    if (n_ <= detail::kRankTableLimit) return table()[x] == rank_;
    return std::binary_search(bases_.begin(), bases_.end(), x);
  }

  bool is_loop(ElementId e) const { return rank_unchecked(element_bit(e)) == 0; }
  bool is_coloop(ElementId e) const {
    return rank_unchecked(ground() & ~element_bit(e)) < rank_;
  }

  ElementSet loops() const {
    ElementSet any = 0;
    for (ElementSet b : bases_) any |= b;
    return ground() & ~any;
  }

  ElementSet coloops() const {
    ElementSet all = ground();
    for (ElementSet b : bases_) all &= b;
    return all;
  }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.n_ == b.n_ && a.bases_ == b.bases_ && a.labels_ == b.labels_;
  }

  /// Same basis family on the same number of elements, labels ignored.
  bool same_structure(const Matroid& other) const {
    return n_ == other.n_ && bases_ == other.bases_;
  }

 private:
  const std::vector<std::uint8_t>& table() const {
    std::call_once(cache_->once, [this] { build_table(); });
    return cache_->table;
  }

  void build_table() const {
    const std::size_t count = std::size_t{1} << n_;
    std::vector<std::uint8_t> indep(count, 0);
    for (ElementSet b : bases_) indep[b] = 1;
    const ElementSet g = ground();
    for (std::size_t m = count; m-- > 0;) {
      if (indep[m]) continue;
      ElementSet missing = g & ~static_cast<ElementSet>(m);
      while (missing != 0) {
        ElementSet low = missing & -missing;
        if (indep[m | low]) {
          indep[m] = 1;
          break;
        }
        missing &= missing - 1;
      }
    }
    std::vector<std::uint8_t>& rk = cache_->table;
    rk.assign(count, 0);
    for (std::size_t m = 1; m < count; ++m) {
      if (indep[m]) {
        rk[m] = static_cast<std::uint8_t>(std::popcount(m));
        continue;
      }
      std::uint8_t best = 0;
      ElementSet rest = static_cast<ElementSet>(m);
      while (rest != 0) {
        ElementSet low = rest & -rest;
        best = std::max(best, rk[m & ~low]);
        rest &= rest - 1;
      }
      rk[m] = best;
    }
  }

  int n_ = 0;
  int rank_ = 0;
  std::vector<ElementSet> bases_;
  std::vector<std::string> labels_;
  std::shared_ptr<detail::RankCache> cache_ =
      std::make_shared<detail::RankCache>();
};

// ---------------------------------------------------------------------------
// Rank-derived views.

inline int rank(const Matroid& m, ElementSet x) { return m.rank(x); }

inline ElementSet closure(const Matroid& m, ElementSet x) {
  const int rx = m.rank(x);
  ElementSet out = x;
  for_each_element(m.ground() & ~x, [&](ElementId e) {
    if (m.rank_unchecked(x | element_bit(e)) == rx) out |= element_bit(e);
  });
  return out;
}

/// Closure in the dual, computed from the rank oracle of M.
inline ElementSet coclosure(const Matroid& m, ElementSet x) {
  if (!is_subset(x, m.ground())) throw DomainError("set not in ground set");
  const int cx = m.corank(x);
  ElementSet out = x;
  for_each_element(m.ground() & ~x, [&](ElementId e) {
    if (m.corank(x | element_bit(e)) == cx) out |= element_bit(e);
  });
  return out;
}

inline bool is_coindependent(const Matroid& m, ElementSet x) {
  return m.rank(m.ground() & ~x) == m.rank();
}

// ---------------------------------------------------------------------------
// Duality and minors.

inline Matroid dual(const Matroid& m) {
  std::vector<ElementSet> out;
  out.reserve(m.bases().size());
  const ElementSet g = m.ground();
  for (ElementSet b : m.bases()) out.push_back(g & ~b);
  return Matroid(m.size(), std::move(out), m.labels());
}

namespace detail {

inline std::vector<std::string> kept_labels(const Matroid& m, ElementSet keep) {
  std::vector<std::string> out;
  for_each_element(keep, [&](ElementId e) { out.push_back(m.label(e)); });
  return out;
}

}  // namespace detail

/// M \ X, reindexed so that surviving elements keep their relative order.
inline Matroid delete_set(const Matroid& m, ElementSet x) {
  if (!is_subset(x, m.ground())) throw DomainError("set not in ground set");
  const ElementSet keep = m.ground() & ~x;
  int best = 0;
  for (ElementSet b : m.bases()) best = std::max(best, set_size(b & keep));
  std::vector<ElementSet> out;
  for (ElementSet b : m.bases()) {
    if (set_size(b & keep) == best) out.push_back(compress_set(b, keep));
  }
  return Matroid(set_size(keep), std::move(out), detail::kept_labels(m, keep));
}

/// M / X, reindexed like delete_set.
inline Matroid contract_set(const Matroid& m, ElementSet x) {
  if (!is_subset(x, m.ground())) throw DomainError("set not in ground set");
  const ElementSet keep = m.ground() & ~x;
  int rx = 0;
  for (ElementSet b : m.bases()) rx = std::max(rx, set_size(b & x));
  std::vector<ElementSet> out;
  for (ElementSet b : m.bases()) {
    if (set_size(b & x) == rx) out.push_back(compress_set(b, keep));
  }
  return Matroid(set_size(keep), std::move(out), detail::kept_labels(m, keep));
}

inline Matroid delete_element(const Matroid& m, ElementId e) {
  return delete_set(m, element_bit(e));
}

inline Matroid contract_element(const Matroid& m, ElementId e) {
  return contract_set(m, element_bit(e));
}

/// M | X.
inline Matroid restrict_to(const Matroid& m, ElementSet x) {
  if (!is_subset(x, m.ground())) throw DomainError("set not in ground set");
  return delete_set(m, m.ground() & ~x);
}

/// Renames elements: element e of M becomes element perm[e].
inline Matroid permute(const Matroid& m, std::span<const int> perm) {
  const int n = m.size();
  if (static_cast<int>(perm.size()) != n) {
    throw PreconditionError("permutation size mismatch");
  }
  std::vector<ElementSet> out;
  out.reserve(m.bases().size());
  for (ElementSet b : m.bases()) {
    ElementSet t = 0;
    for_each_element(b, [&](ElementId e) { t |= element_bit(perm[e]); });
    out.push_back(t);
  }
  std::vector<std::string> labels(n);
  for (int e = 0; e < n; ++e) labels[perm[e]] = m.label(e);
  return Matroid(n, std::move(out), std::move(labels));
}

/// Equality of labeled matroids regardless of element order.
inline bool same_labeled(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> perm(b.size());
  for (int e = 0; e < b.size(); ++e) {
    auto f = a.find(b.label(e));
    if (!f) return false;
    perm[e] = *f;
  }
  return permute(b, perm) == a;
}

inline Matroid with_labels(const Matroid& m, std::vector<std::string> labels) {
  return Matroid(m.size(), m.bases(), std::move(labels));
}

/// Direct sum; labels of the second summand follow those of the first.
inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  const int n = a.size() + b.size();
  if (n > kMaxElements) throw CapacityError("direct sum exceeds capacity");
  std::vector<ElementSet> out;
  for (ElementSet x : a.bases()) {
    for (ElementSet y : b.bases()) out.push_back(x | (y << a.size()));
  }
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return Matroid(n, std::move(out), std::move(labels));
}

// ---------------------------------------------------------------------------
// Parallel and series structure.

inline bool are_parallel(const Matroid& m, ElementId e, ElementId f) {
  if (e == f || m.is_loop(e) || m.is_loop(f)) return false;
  return m.rank_unchecked(element_bit(e) | element_bit(f)) == 1;
}

inline bool are_series(const Matroid& m, ElementId e, ElementId f) {
  if (e == f || m.is_coloop(e) || m.is_coloop(f)) return false;
  return m.corank(element_bit(e) | element_bit(f)) == 1;
}

/// Parallel classes of non-loops, each as a set; ordered by least element.
inline std::vector<ElementSet> parallel_classes(const Matroid& m) {
  std::vector<ElementSet> out;
  ElementSet seen = m.loops();
  for (ElementId e = 0; e < m.size(); ++e) {
    if (contains(seen, e)) continue;
    ElementSet cls = element_bit(e);
    for (ElementId f = e + 1; f < m.size(); ++f) {
      if (!contains(seen, f) && are_parallel(m, e, f)) cls |= element_bit(f);
    }
    seen |= cls;
    out.push_back(cls);
  }
  return out;
}

inline std::vector<ElementSet> series_classes(const Matroid& m) {
  return parallel_classes(dual(m));
}

/// Deletes loops and all but the lowest element of every parallel class.
inline Matroid simplify(const Matroid& m) {
  ElementSet drop = m.loops();
  for (ElementSet cls : parallel_classes(m)) {
    drop |= cls & ~(cls & -cls);
  }
  return delete_set(m, drop);
}

/// Contracts coloops and all but the lowest element of every series class.
inline Matroid cosimplify(const Matroid& m) { return dual(simplify(dual(m))); }

inline bool is_simple(const Matroid& m) { return simplify(m).size() == m.size(); }
inline bool is_cosimple(const Matroid& m) {
  return cosimplify(m).size() == m.size();
}

/// One requested extension element: placed in parallel (or series) with
/// `partner`, named `label`.
struct ExtensionPair {
  ElementId partner;
  std::string label;
};

/// Adds each new element in parallel with its partner. New elements are
/// appended after the existing ones, in the order given.
inline Matroid parallel_extend(const Matroid& m,
                               std::span<const ExtensionPair> pairs) {
  const int n = m.size() + static_cast<int>(pairs.size());
  if (n > kMaxElements) {
    throw CapacityError("parallel extension exceeds capacity");
  }
  std::vector<ElementSet> bases = m.bases();
  std::vector<std::string> labels = m.labels();
  int next = m.size();
  for (const ExtensionPair& p : pairs) {
    if (p.partner < 0 || p.partner >= next) {
      throw DomainError("extension partner out of range");
    }
    if (m.size() > p.partner && m.is_loop(p.partner)) {
      throw PreconditionError("cannot extend in parallel with a loop");
    }
    if (std::find(labels.begin(), labels.end(), p.label) != labels.end()) {
      throw PreconditionError("label '" + p.label + "' already in use");
    }
    const std::size_t count = bases.size();
    for (std::size_t i = 0; i < count; ++i) {
      if (contains(bases[i], p.partner)) {
        bases.push_back((bases[i] & ~element_bit(p.partner)) | element_bit(next));
      }
    }
    labels.push_back(p.label);
    ++next;
  }
  return Matroid(n, std::move(bases), std::move(labels));
}

inline Matroid series_extend(const Matroid& m,
                             std::span<const ExtensionPair> pairs) {
  for (const ExtensionPair& p : pairs) {
    if (p.partner >= 0 && p.partner < m.size() && m.is_coloop(p.partner)) {
      throw PreconditionError("cannot extend in series with a coloop");
    }
  }
  return dual(parallel_extend(dual(m), pairs));
}

// ---------------------------------------------------------------------------
// Validation.

/// Checks the basis-exchange axiom directly. Quadratic in the number of
/// bases; intended for test builds on small instances.
inline bool satisfies_basis_exchange(const Matroid& m) {
  const auto& bs = m.bases();
  for (ElementSet b1 : bs) {
    for (ElementSet b2 : bs) {
      ElementSet out = b1 & ~b2;
      ElementSet in = b2 & ~b1;
      bool ok = true;
      for_each_element(out, [&](ElementId x) {
        if (!ok) return;
        bool found = false;
        for_each_element(in, [&](ElementId y) {
          if (found) return;
          ElementSet c = (b1 & ~element_bit(x)) | element_bit(y);
          found = std::binary_search(bs.begin(), bs.end(), c);
        });
        ok = found;
      });
      if (!ok) return false;
    }
  }
  return true;
}

inline std::string describe(const Matroid& m) {
  std::ostringstream os;
  os << "Matroid(n=" << m.size() << ", r=" << m.rank()
     << ", bases=" << m.bases().size() << ")";
  return os.str();
}

}  // namespace fragilis
