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
#include <numeric>
#include <string>
#include <vector>

#include "fragilis/builders.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/matroid.hpp"

namespace fragilis {

#ifdef FRAGILIS_VALIDATE
inline constexpr bool kValidateConstructions = true;
#else
inline constexpr bool kValidateConstructions = false;
#endif

/// Whether `f` is a flat of M that is modular with every flat of M.
inline bool is_modular_flat(const Matroid& m, ElementSet f) {
  if (closure(m, f) != f) return false;
  if (m.size() > 20) throw CapacityError("modularity check limited to 20");
  const int rf = m.rank_unchecked(f);
  const std::uint64_t count = std::uint64_t{1} << m.size();
  for (std::uint64_t x = 0; x < count; ++x) {
    ElementSet g = static_cast<ElementSet>(x);
    if (closure(m, g) != g) continue;
    if (rf + m.rank_unchecked(g) !=
        m.rank_unchecked(f | g) + m.rank_unchecked(f & g)) {
      return false;
    }
  }
  return true;
}

namespace detail {

// Labels of M restricted to A, matched against N.
inline std::vector<ElementId> match_labels(const Matroid& n, const Matroid& m,
                                           ElementSet a) {
  std::vector<ElementId> out;
  for_each_element(a, [&](ElementId e) {
    auto f = n.find(m.label(e));
    if (!f) throw PreconditionError("'" + m.label(e) + "' missing from N");
    out.push_back(*f);
  });
  return out;
}

}  // namespace detail

/// Generalized parallel connection P_A(N, M). Elements are matched by label
/// and A is a set of M. The result lists M's elements first, then N's
/// elements outside A, each in their original order.
inline Matroid gpc(const Matroid& n, const Matroid& m, ElementSet a) {
  if (!is_subset(a, m.ground())) throw DomainError("set not in ground set");
  const std::vector<ElementId> a_in_n = detail::match_labels(n, m, a);
  ElementSet a_n = 0;
  for (ElementId e : a_in_n) a_n |= element_bit(e);
  for (ElementId e = 0; e < n.size(); ++e) {
    if (contains(a_n, e)) continue;
    if (m.find(n.label(e))) {
      throw PreconditionError("label '" + n.label(e) + "' collides outside A");
    }
  }
  const int total = m.size() + n.size() - set_size(a);
  if (total > kMaxElements) throw CapacityError("gpc exceeds capacity");

  // Restrictions to A must agree elementwise.
  {
    std::vector<int> order(a_in_n.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a_in_n[x] < a_in_n[y]; });
    std::vector<int> perm(a_in_n.size());
    for (std::size_t i = 0; i < order.size(); ++i) perm[order[i]] = i;
    Matroid na = restrict_to(n, a_n);
    Matroid ma = permute(restrict_to(m, a), perm);
    if (!na.same_structure(ma)) {
      throw PreconditionError("N|A and M|A differ");
    }
  }
  // The closure of A must be modular on one side; for Θ_2, A spans Θ_2.
  if (!is_modular_flat(n, closure(n, a_n)) &&
      !(m.size() <= 20 && is_modular_flat(m, closure(m, a)))) {
    throw PreconditionError("cl(A) is not a modular flat");
  }

  // Result element i < |M| is M's element i; later ones are N's elements
  // outside A. to_n maps result elements to N where they exist.
  std::vector<ElementId> to_n(total, -1);
  for (std::size_t i = 0; i < a_in_n.size(); ++i) {
    to_n[elements_of(a)[i]] = a_in_n[i];
  }
  std::vector<std::string> labels = m.labels();
  {
    int next = m.size();
    for (ElementId e = 0; e < n.size(); ++e) {
      if (contains(a_n, e)) continue;
      to_n[next++] = e;
      labels.push_back(n.label(e));
    }
  }
  const ElementSet m_part = m.ground();
  auto n_of = [&](ElementSet x) {
    ElementSet out = 0;
    for_each_element(x, [&](ElementId e) {
      if (to_n[e] >= 0) out |= element_bit(to_n[e]);
    });
    return out;
  };
  std::vector<ElementId> from_n(n.size());
  for (int i = 0; i < total; ++i) {
    if (to_n[i] >= 0) from_n[to_n[i]] = i;
  }
  auto lift_n = [&](ElementSet y) {
    ElementSet out = 0;
    for_each_element(y, [&](ElementId e) { out |= element_bit(from_n[e]); });
    return out;
  };
  const int r_total = m.rank() + n.rank() - m.rank_unchecked(a);
  auto spans = [&](ElementSet s) {
    ElementSet f = s;
    while (true) {
      ElementSet g = f | closure(m, f & m_part) | lift_n(closure(n, n_of(f)));
      if (g == f) break;
      f = g;
    }
    return m.rank_unchecked(f & m_part) + n.rank_unchecked(n_of(f)) -
               m.rank_unchecked(f & a) ==
           r_total;
  };
  std::vector<ElementSet> bases;
  for_each_k_subset(total, r_total, [&](ElementSet s) {
    if (spans(s)) bases.push_back(s);
  });
  Matroid out(total, std::move(bases), std::move(labels));
  if constexpr (kValidateConstructions) {
    if (!satisfies_basis_exchange(out)) {
      throw Error("gpc produced a non-matroid");
    }
  }
  return out;
}

namespace detail {

inline std::string fresh_label(const Matroid& m, const std::string& stem) {
  for (int i = 0;; ++i) {
    std::string s = stem + std::to_string(i);
    if (!m.find(s)) return s;
  }
}

}  // namespace detail

/// Δ_A(M): P_A(Θ_k, M) \ A with each b_i renamed to a_i. A is paired with
/// a1..ak in ascending element order, and the result keeps M's element order.
inline Matroid delta_exchange(const Matroid& m, ElementSet a) {
  if (!is_subset(a, m.ground())) throw DomainError("set not in ground set");
  const int k = set_size(a);
  if (k < 2 || k > 10) throw PreconditionError("segment size must be 2..10");
  if (!is_segment(m, a) || !is_coindependent(m, a)) {
    throw PreconditionError("A is not a coindependent segment");
  }
  ThetaK th = theta(k);
  std::vector<std::string> labels(2 * k);
  const std::vector<ElementId> a_elems = elements_of(a);
  for (int i = 0; i < k; ++i) {
    labels[i] = m.label(a_elems[i]);
    labels[k + i] = detail::fresh_label(m, "\x01" "b" + std::to_string(i) + "_");
  }
  Matroid p = gpc(with_labels(th.matroid, labels), m, a);
  Matroid q = delete_set(p, a);
  // q lists M − A in order, then b1..bk; put b_i where a_i was.
  std::vector<int> perm(q.size());
  std::vector<std::string> out_labels(q.size());
  int pos = 0;
  for (ElementId e = 0; e < m.size(); ++e) {
    if (!contains(a, e)) perm[pos++] = e;
  }
  for (int i = 0; i < k; ++i) perm[pos + i] = a_elems[i];
  Matroid r = permute(q, perm);
  return with_labels(r, m.labels());
}

/// ∇_A(M) = (Δ_A(M*))*.
inline Matroid nabla_exchange(const Matroid& m, ElementSet a) {
  if (!is_subset(a, m.ground())) throw DomainError("set not in ground set");
  if (!is_cosegment(m, a) || !m.is_independent(a)) {
    throw PreconditionError("A is not an independent cosegment");
  }
  return dual(delta_exchange(dual(m), a));
}

/// Ordered triangle (a, b, c) of the host with a, c spokes and b the rim
/// element; X is deleted afterwards and must contain b.
struct GluingSpec {
  ElementId a = -1;
  ElementId b = -1;
  ElementId c = -1;
  int r = 3;
  ElementSet x = 0;
  std::string prefix = "w";
};

/// P_T(M, M(W_r)) \ X. The wheel's s1, r1, s2 are identified with a, b, c;
/// its other elements are named prefix + index and appended after M's.
inline Matroid glue_wheel(const Matroid& m, const GluingSpec& spec) {
  for (ElementId e : {spec.a, spec.b, spec.c}) {
    if (e < 0 || e >= m.size()) throw DomainError("element not in ground set");
  }
  const ElementSet t =
      element_bit(spec.a) | element_bit(spec.b) | element_bit(spec.c);
  if (!is_triangle(m, t)) throw PreconditionError("gluing set not a triangle");
  if (!contains(spec.x, spec.b) || !is_subset(spec.x, t)) {
    throw PreconditionError("X must lie in the triangle and contain b");
  }
  if (spec.r < 3) throw PreconditionError("wheel rank must be at least 3");
  if (m.size() + 2 * spec.r - 3 - set_size(spec.x) > kMaxElements) {
    throw CapacityError("gluing exceeds capacity");
  }
  Matroid w = wheel(spec.r);
  std::vector<std::string> labels = w.labels();
  labels[0] = m.label(spec.a);
  labels[1] = m.label(spec.b);
  labels[2] = m.label(spec.c);
  for (std::size_t i = 3; i < labels.size(); ++i) {
    labels[i] = spec.prefix + std::to_string(i - 2);
    if (m.find(labels[i])) {
      throw PreconditionError("wheel label '" + labels[i] + "' collides");
    }
  }
  w = with_labels(w, labels);
  ElementSet t_in_w = 0b111;
  if (!is_modular_flat(w, t_in_w)) throw Error("wheel triangle not modular");
  return delete_set(gpc(w, m, t), spec.x);
}

}  // namespace fragilis
