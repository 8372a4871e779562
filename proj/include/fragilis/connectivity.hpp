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
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fragilis/matroid.hpp"

namespace fragilis {

/// λ(X) = r(X) + r(E−X) − r(M).
inline int lambda(const Matroid& m, ElementSet x) {
  if (!is_subset(x, m.ground())) throw DomainError("set not in ground set");
  return m.rank_unchecked(x) + m.rank_unchecked(m.ground() & ~x) - m.rank();
}

/// A two-sided partition with its order λ+1. Sizes are not constrained; use
/// `is_k_separation` for Tutte's size condition.
struct Separation {
  ElementSet side_a = 0;
  ElementSet side_b = 0;
  int order = 0;
};

inline Separation make_separation(const Matroid& m, ElementSet a) {
  if (!is_subset(a, m.ground())) throw DomainError("set not in ground set");
  const ElementSet b = m.ground() & ~a;
  if (a == 0 || b == 0) throw PreconditionError("separation side is empty");
  return Separation{a, b, lambda(m, a) + 1};
}

inline bool is_k_separation(const Matroid& m, ElementSet a, int k) {
  const ElementSet b = m.ground() & ~a;
  return set_size(a) >= k && set_size(b) >= k && lambda(m, a) <= k - 1;
}

inline bool is_connected(const Matroid& m) {
  const int n = m.size();
  if (n <= 1) return true;
  // Sets containing element 0 suffice by symmetry of λ.
  const ElementSet g = m.ground();
  for (ElementSet rest = 0; rest < (ElementSet{1} << (n - 1)); ++rest) {
    ElementSet x = (rest << 1) | 1u;
    if (x == g) continue;
    if (lambda(m, x) == 0) return false;
  }
  return true;
}

namespace detail {

template <class F>
void for_each_two_separation(const Matroid& m, F&& f) {
  const int n = m.size();
  if (n < 4) return;
  const ElementSet g = m.ground();
  for (ElementSet rest = 0; rest < (ElementSet{1} << (n - 1)); ++rest) {
    ElementSet x = (rest << 1) | 1u;
    ElementSet y = g & ~x;
    if (set_size(x) < 2 || set_size(y) < 2) continue;
    if (m.rank_unchecked(x) + m.rank_unchecked(y) - m.rank() <= 1) {
      if (!f(x, y)) return;
    }
  }
}

}  // namespace detail

/// Tutte 3-connectivity: no 1- or 2-separation.
inline bool is_3connected(const Matroid& m) {
  if (!is_connected(m)) return false;
  bool ok = true;
  detail::for_each_two_separation(m, [&](ElementSet, ElementSet) {
    ok = false;
    return false;
  });
  return ok;
}

/// Connected, and every 2-separation has a side of rank 1 or corank 1.
inline bool is_3connected_up_to_sp(const Matroid& m) {
  if (!is_connected(m)) return false;
  bool ok = true;
  detail::for_each_two_separation(m, [&](ElementSet x, ElementSet y) {
    bool rank_one = std::min(m.rank_unchecked(x), m.rank_unchecked(y)) == 1;
    bool corank_one = std::min(m.corank(x), m.corank(y)) == 1;
    ok = rank_one || corank_one;
    return ok;
  });
  return ok;
}

/// Connected, and every 2-separation has a side of corank 1 (a set of
/// elements in series).
inline bool is_3connected_up_to_series(const Matroid& m) {
  if (!is_connected(m)) return false;
  bool ok = true;
  detail::for_each_two_separation(m, [&](ElementSet x, ElementSet y) {
    ok = std::min(m.corank(x), m.corank(y)) == 1;
    return ok;
  });
  return ok;
}

inline bool is_3connected_up_to_parallel(const Matroid& m) {
  return is_3connected_up_to_series(dual(m));
}

// ---------------------------------------------------------------------------
// Segments, triangles, triads.

/// True for a set of at least two elements, of rank 2, with every pair
/// independent. For three or more elements this is "every 3-subset is a
/// triangle".
inline bool is_segment(const Matroid& m, ElementSet a) {
  if (!is_subset(a, m.ground())) throw DomainError("set not in ground set");
  if (set_size(a) < 2 || m.rank_unchecked(a) != 2) return false;
  bool ok = true;
  for_each_element(a, [&](ElementId e) {
    for_each_element(a, [&](ElementId f) {
      if (ok && e < f && m.rank_unchecked(element_bit(e) | element_bit(f)) != 2) {
        ok = false;
      }
    });
  });
  return ok;
}

inline bool is_cosegment(const Matroid& m, ElementSet a) {
  if (!is_subset(a, m.ground())) throw DomainError("set not in ground set");
  if (set_size(a) < 2 || m.corank(a) != 2) return false;
  bool ok = true;
  for_each_element(a, [&](ElementId e) {
    for_each_element(a, [&](ElementId f) {
      if (ok && e < f && m.corank(element_bit(e) | element_bit(f)) != 2) {
        ok = false;
      }
    });
  });
  return ok;
}

inline bool is_triangle(const Matroid& m, ElementSet t) {
  return set_size(t) == 3 && is_segment(m, t);
}

inline bool is_triad(const Matroid& m, ElementSet t) {
  return set_size(t) == 3 && is_cosegment(m, t);
}

inline std::vector<ElementSet> triangles(const Matroid& m) {
  std::vector<ElementSet> out;
  for_each_k_subset(m.size(), 3, [&](ElementSet t) {
    if (is_segment(m, t)) out.push_back(t);
  });
  return out;
}

inline std::vector<ElementSet> triads(const Matroid& m) {
  std::vector<ElementSet> out;
  for_each_k_subset(m.size(), 3, [&](ElementSet t) {
    if (is_cosegment(m, t)) out.push_back(t);
  });
  return out;
}

/// Maximal rank-2 sets of loop- and coloop-free elements spanning at least k
/// points. Parallel elements are included; with `simple_only` only lines
/// without parallel pairs are reported. Sorted by mask.
inline std::vector<ElementSet> segments(const Matroid& m, int k,
                                        bool simple_only = false) {
  if (k < 3) throw PreconditionError("segments need k >= 3");
  const ElementSet usable = m.ground() & ~m.loops() & ~m.coloops();
  std::set<ElementSet> lines;
  for_each_element(usable, [&](ElementId e) {
    for_each_element(usable, [&](ElementId f) {
      if (e >= f) return;
      ElementSet pair = element_bit(e) | element_bit(f);
      if (m.rank_unchecked(pair) != 2) return;
      lines.insert(closure(m, pair) & usable);
    });
  });
  std::vector<ElementSet> out;
  for (ElementSet line : lines) {
    int points = 0;
    ElementSet seen = 0;
    for_each_element(line, [&](ElementId e) {
      if (contains(seen, e)) return;
      ++points;
      for_each_element(line, [&](ElementId f) {
        if (f == e || are_parallel(m, e, f)) seen |= element_bit(f);
      });
    });
    if (points < k) continue;
    if (simple_only && points != set_size(line)) continue;
    out.push_back(line);
  }
  return out;
}

inline std::vector<ElementSet> cosegments(const Matroid& m, int k,
                                          bool simple_only = false) {
  return segments(dual(m), k, simple_only);
}

// ---------------------------------------------------------------------------
// Full closure and paths of 3-separations.

inline ElementSet full_closure(const Matroid& m, ElementSet x) {
  if (!is_subset(x, m.ground())) throw DomainError("set not in ground set");
  while (true) {
    ElementSet y = coclosure(m, closure(m, x));
    if (y == x) return x;
    x = y;
  }
}

inline bool is_path_generating(const Matroid& m, ElementSet x) {
  return lambda(m, x) <= 2 && full_closure(m, x) == m.ground();
}

/// Ordered cells P1, P2, ... of a path of 3-separations.
struct Path3Sep {
  std::vector<ElementSet> cells;
};

/// Every prefix union is 3-separating and the cells partition the ground set.
inline bool is_valid_path(const Matroid& m, const Path3Sep& p) {
  ElementSet seen = 0;
  for (ElementSet c : p.cells) {
    if (c == 0 || (c & seen) != 0) return false;
    seen |= c;
    if (lambda(m, seen) > 2) return false;
  }
  return seen == m.ground();
}

/// Grows cells from X by alternately adding the closure and the coclosure of
/// the union so far (closure first unless `closure_first` is false). Empty
/// cells are dropped; growth stops once neither operator adds anything.
inline Path3Sep derive_path(const Matroid& m, ElementSet x,
                            bool closure_first = true) {
  if (!is_path_generating(m, x)) {
    throw PreconditionError("set is not path-generating");
  }
  Path3Sep out;
  out.cells.push_back(x);
  ElementSet cur = x;
  bool use_closure = closure_first;
  int idle = 0;
  while (cur != m.ground() && idle < 2) {
    ElementSet next = use_closure ? closure(m, cur) : coclosure(m, cur);
    if (next != cur) {
      out.cells.push_back(next & ~cur);
      cur = next;
      idle = 0;
    } else {
      ++idle;
    }
    use_closure = !use_closure;
  }
  return out;
}

/// Internal cells (all but the first and last) of size at most 3.
inline bool has_small_internal_cells(const Path3Sep& p) {
  for (std::size_t i = 1; i + 1 < p.cells.size(); ++i) {
    if (set_size(p.cells[i]) > 3) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Guts, coguts and blocking.

enum class GutsKind { kGuts, kCoguts, kNeither };

inline GutsKind guts_coguts(const Matroid& m, const Separation& sep,
                            ElementId x) {
  if (x < 0 || x >= m.size()) throw DomainError("element not in ground set");
  const ElementSet a = sep.side_a & ~element_bit(x);
  const ElementSet b = sep.side_b & ~element_bit(x);
  if (contains(closure(m, a), x) && contains(closure(m, b), x)) {
    return GutsKind::kGuts;
  }
  if (contains(coclosure(m, a), x) && contains(coclosure(m, b), x)) {
    return GutsKind::kCoguts;
  }
  return GutsKind::kNeither;
}

namespace detail {

inline void check_blocking_args(const Matroid& m, ElementId x, ElementSet a,
                                ElementSet b) {
  if (x < 0 || x >= m.size()) throw DomainError("element not in ground set");
  if ((a & b) != 0 || (a | b | element_bit(x)) != m.ground() ||
      contains(a | b, x)) {
    throw PreconditionError("(A, B) must partition E - x");
  }
}

// λ of A in M \ x, computed with M's rank function.
inline int lambda_without(const Matroid& m, ElementId x, ElementSet a,
                          ElementSet b) {
  return m.rank_unchecked(a) + m.rank_unchecked(b) -
         m.rank_unchecked(m.ground() & ~element_bit(x));
}

}  // namespace detail

/// Whether x blocks the exact separation (A, B) of M\x, by the closure
/// characterization: x is not a coloop and lies in neither cl(A) nor cl(B).
inline bool blocks(const Matroid& m, ElementId x, ElementSet a, ElementSet b) {
  detail::check_blocking_args(m, x, a, b);
  return !m.is_coloop(x) && !contains(closure(m, a), x) &&
         !contains(closure(m, b), x);
}

/// The definition itself: neither (A∪x, B) nor (A, B∪x) is k-separating in
/// M, where k is the order of (A, B) in M\x.
inline bool blocks_direct(const Matroid& m, ElementId x, ElementSet a,
                          ElementSet b) {
  detail::check_blocking_args(m, x, a, b);
  const int k = detail::lambda_without(m, x, a, b) + 1;
  return lambda(m, a | element_bit(x)) > k - 1 && lambda(m, a) > k - 1;
}

// ---------------------------------------------------------------------------
// Fans.

struct Fan {
  std::vector<ElementId> ordering;
  ElementSet spokes = 0;
  ElementSet rims = 0;
  ElementSet elements() const { return spokes | rims; }
};

/// All maximal fans with at least three elements, one canonical ordering each
/// (the lexicographically least over all valid orderings and reversals).
inline std::vector<Fan> find_fans(const Matroid& m) {
  std::vector<Fan> out;
  if (m.size() < 4) return out;
  std::set<ElementSet> tri_set, triad_set;
  for (ElementSet t : triangles(m)) tri_set.insert(t);
  for (ElementSet t : triads(m)) triad_set.insert(t);
  if (tri_set.empty() && triad_set.empty()) return out;

  // Least ordering per element set, along with whether it starts with a
  // triangle.
  std::map<ElementSet, std::pair<std::vector<ElementId>, bool>> best;
  std::vector<ElementId> seq;
  auto record = [&](bool first_is_triangle) {
    ElementSet s = 0;
    for (ElementId e : seq) s |= element_bit(e);
    auto it = best.find(s);
    if (it == best.end() || seq < it->second.first) {
      best[s] = {seq, first_is_triangle};
    }
  };
  auto kind_ok = [&](ElementSet t, bool want_triangle) {
    return want_triangle ? tri_set.count(t) > 0 : triad_set.count(t) > 0;
  };
  std::function<void(bool, bool)> extend = [&](bool first_tri, bool next_tri) {
    record(first_tri);
    ElementSet used = 0;
    for (ElementId e : seq) used |= element_bit(e);
    const ElementId y = seq[seq.size() - 2];
    const ElementId z = seq.back();
    for (ElementId w = 0; w < m.size(); ++w) {
      if (contains(used, w)) continue;
      ElementSet t = element_bit(y) | element_bit(z) | element_bit(w);
      if (!kind_ok(t, next_tri)) continue;
      seq.push_back(w);
      extend(first_tri, !next_tri);
      seq.pop_back();
    }
  };
  auto start_from = [&](const std::set<ElementSet>& family, bool is_tri) {
    for (ElementSet t : family) {
      std::vector<ElementId> els = elements_of(t);
      std::sort(els.begin(), els.end());
      do {
        seq = els;
        extend(is_tri, !is_tri);
      } while (std::next_permutation(els.begin(), els.end()));
    }
  };
  start_from(tri_set, true);
  start_from(triad_set, false);

  for (const auto& [set, entry] : best) {
    bool maximal = true;
    for (const auto& [other, unused] : best) {
      if (other != set && is_subset(set, other)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    Fan f;
    f.ordering = entry.first;
    // Triangle-first fans have spokes at even positions.
    for (std::size_t i = 0; i < f.ordering.size(); ++i) {
      bool spoke = (i % 2 == 0) == entry.second;
      (spoke ? f.spokes : f.rims) |= element_bit(f.ordering[i]);
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Fan& a, const Fan& b) {
    return a.ordering < b.ordering;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Path width.

struct PathWidthResult {
  bool at_most_three = false;
  std::vector<ElementId> ordering;
};

/// Decides whether some ordering of E has every prefix 3-separating, by
/// reachability over 3-separating sets grown one element at a time.
inline PathWidthResult path_width_le3(const Matroid& m) {
  if (m.size() > 20) throw CapacityError("path width check limited to 20");
  PathWidthResult out;
  const ElementSet g = m.ground();
  std::unordered_map<ElementSet, ElementSet> parent;  // set -> predecessor
  std::vector<ElementSet> frontier{0};
  parent[0] = 0;
  bool found = g == 0;
  while (!frontier.empty() && !found) {
    std::vector<ElementSet> next;
    for (ElementSet x : frontier) {
      for_each_element(g & ~x, [&](ElementId e) {
        if (found) return;
        ElementSet y = x | element_bit(e);
        if (parent.count(y) != 0) return;
        if (lambda(m, y) > 2) return;
        parent[y] = x;
        if (y == g) found = true;
        next.push_back(y);
      });
      if (found) break;
    }
    frontier = std::move(next);
  }
  if (!found) return out;
  out.at_most_three = true;
  for (ElementSet cur = g; cur != 0;) {
    ElementSet prev = parent[cur];
    out.ordering.push_back(std::countr_zero(cur & ~prev));
    cur = prev;
  }
  std::reverse(out.ordering.begin(), out.ordering.end());
  return out;
}

}  // namespace fragilis
