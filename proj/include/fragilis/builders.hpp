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

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fragilis/matroid.hpp"

namespace fragilis {

/// U_{r,n}. Labels default to "0".."n-1".
inline Matroid uniform(int r, int n, std::vector<std::string> labels = {}) {
  if (r < 0 || n < r) throw PreconditionError("uniform needs 0 <= r <= n");
  if (n > kMaxElements) throw CapacityError("uniform matroid exceeds capacity");
  std::vector<ElementSet> bases;
  for_each_k_subset(n, r, [&](ElementSet s) { bases.push_back(s); });
  return Matroid(n, std::move(bases), std::move(labels));
}

/// Cycle matroid of a graph on vertices 0..v-1; edge i is element i.
inline Matroid graphic(int num_vertices,
                       const std::vector<std::pair<int, int>>& edges,
                       std::vector<std::string> labels = {}) {
  const int n = static_cast<int>(edges.size());
  if (n > kMaxElements) throw CapacityError("graph has too many edges");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw DomainError("edge endpoint out of range");
    }
  }
  std::vector<int> parent(num_vertices);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto forest_size = [&](ElementSet s) {
    std::iota(parent.begin(), parent.end(), 0);
    int joined = 0;
    bool acyclic = true;
    for_each_element(s, [&](ElementId e) {
      int a = find(edges[e].first), b = find(edges[e].second);
      if (a == b) {
        acyclic = false;
      } else {
        parent[a] = b;
        ++joined;
      }
    });
    return std::pair{joined, acyclic};
  };
  const int r = forest_size(full_set(n)).first;
  std::vector<ElementSet> bases;
  for_each_k_subset(n, r, [&](ElementSet s) {
    if (forest_size(s).second) bases.push_back(s);
  });
  return Matroid(n, std::move(bases), std::move(labels));
}

/// M(W_r): hub 0, rim vertices 1..r. Elements alternate s1, r1, s2, r2, ...
/// where s_i joins the hub to vertex i and r_i joins i to i+1 (mod r).
inline Matroid wheel(int r) {
  if (r < 2) throw PreconditionError("wheel needs r >= 2");
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  for (int i = 1; i <= r; ++i) {
    edges.emplace_back(0, i);
    labels.push_back("s" + std::to_string(i));
    edges.emplace_back(i, i % r + 1);
    labels.push_back("r" + std::to_string(i));
  }
  return graphic(r + 1, edges, std::move(labels));
}

/// Matroid of the columns of an integer matrix (rows × n), dependence over Q.
inline Matroid rational_matroid(const std::vector<std::vector<long long>>& rows,
                                std::vector<std::string> labels = {}) {
  const int d = static_cast<int>(rows.size());
  const int n = d == 0 ? 0 : static_cast<int>(rows[0].size());
  if (n > kMaxElements) throw CapacityError("too many columns");
  // Fraction-free elimination for the rank of a column subset.
  auto rank_of = [&](ElementSet s) {
    std::vector<ElementId> cols = elements_of(s);
    const int c = static_cast<int>(cols.size());
    std::vector<std::vector<__int128>> a(d, std::vector<__int128>(c));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < c; ++j) a[i][j] = rows[i][cols[j]];
    }
    int rk = 0;
    __int128 prev = 1;
    for (int j = 0; j < c && rk < d; ++j) {
      int piv = rk;
      while (piv < d && a[piv][j] == 0) ++piv;
      if (piv == d) continue;
      std::swap(a[piv], a[rk]);
      for (int i = rk + 1; i < d; ++i) {
        for (int k = j + 1; k < c; ++k) {
          a[i][k] = (a[rk][j] * a[i][k] - a[i][j] * a[rk][k]) / prev;
        }
        a[i][j] = 0;
      }
      prev = a[rk][j];
      ++rk;
    }
    return rk;
  };
  const int r = rank_of(full_set(n));
  std::vector<ElementSet> bases;
  for_each_k_subset(n, r, [&](ElementSet s) {
    if (rank_of(s) == r) bases.push_back(s);
  });
  return Matroid(n, std::move(bases), std::move(labels));
}

/// Θ_k on a1..ak (elements 0..k-1) and b1..bk (elements k..2k-1), paired
/// a_i with b_i.
struct ThetaK {
  int k = 0;
  Matroid matroid;
  ElementSet a_side() const { return full_set(k); }
  ElementSet b_side() const { return full_set(2 * k) & ~full_set(k); }
  ElementId partner(ElementId e) const { return e < k ? e + k : e - k; }
};

inline std::vector<std::string> theta_labels(int k) {
  std::vector<std::string> labels;
  for (int i = 1; i <= k; ++i) labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= k; ++i) labels.push_back("b" + std::to_string(i));
  return labels;
}

/// Basis rule: a k-subset S is a basis iff |S∩A| <= 2 and S is not
/// {a_i} ∪ (B − b_i).
inline ThetaK theta(int k) {
  if (k < 2 || k > 10) throw PreconditionError("theta needs 2 <= k <= 10");
  const ElementSet a = full_set(k);
  const ElementSet b = full_set(2 * k) & ~a;
  std::vector<ElementSet> bases;
  for_each_k_subset(2 * k, k, [&](ElementSet s) {
    if (set_size(s & a) > 2) return;
    if (set_size(s & a) == 1) {
      int i = std::countr_zero(s & a);
      if ((s & b) == (b & ~element_bit(i + k))) return;
    }
    bases.push_back(s);
  });
  return ThetaK{k, Matroid(2 * k, std::move(bases), theta_labels(k))};
}

/// Θ_k from columns e_i (for b_i) and (m − i)_m (for a_i) over Q.
inline Matroid theta_rational(int k) {
  if (k < 2 || k > 10) throw PreconditionError("theta needs 2 <= k <= 10");
  std::vector<std::vector<long long>> rows(k, std::vector<long long>(2 * k, 0));
  for (int m = 0; m < k; ++m) {
    for (int i = 0; i < k; ++i) rows[m][i] = m - i;
    rows[m][k + m] = 1;
  }
  return rational_matroid(rows, theta_labels(k));
}

}  // namespace fragilis
