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
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "fragilis/matroid.hpp"

namespace fragilis {

/// Isomorphism-invariant identity of a (optionally element-colored) matroid:
/// the lexicographically least relabeled basis list found by the canonical
/// labeling search. Two keys are equal iff the matroids are isomorphic by a
/// color-preserving map.
struct CanonicalKey {
  int n = 0;
  int rank = 0;
  std::vector<int> colors;  // sorted; empty when uncolored
  std::vector<ElementSet> bases;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
    return std::tie(a.n, a.rank, a.colors, a.bases) <=>
           std::tie(b.n, b.rank, b.colors, b.bases);
  }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::uint64_t>(k.n));
    mix(static_cast<std::uint64_t>(k.rank));
    for (int c : k.colors) mix(static_cast<std::uint64_t>(c));
    for (ElementSet b : k.bases) mix(b);
    return static_cast<std::size_t>(h);
  }
};

struct CanonicalLabeling {
  std::vector<int> perm;  // element e of the input becomes perm[e]
  CanonicalKey key;
};

namespace detail {

class CanonicalSearch {
 public:
  CanonicalSearch(const Matroid& m, std::span<const int> colors)
      : m_(m), n_(m.size()) {
    weights_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (ElementSet b : m.bases()) {
      for_each_element(b, [&](ElementId e) {
        for_each_element(b, [&](ElementId f) { ++weights_[e * n_ + f]; });
      });
    }
    init_.assign(n_, 0);
    if (!colors.empty()) {
      if (static_cast<int>(colors.size()) != n_) {
        throw PreconditionError("color vector size mismatch");
      }
      std::copy(colors.begin(), colors.end(), init_.begin());
      colored_ = true;
    }
  }

  CanonicalLabeling run() {
    std::vector<std::int64_t> keys(n_);
    for (int e = 0; e < n_; ++e) {
      keys[e] = static_cast<std::int64_t>(init_[e]) * (1ll << 32) +
                weights_[e * n_ + e];
    }
    std::vector<int> colors = rank_keys(keys);
    refine(colors);
    std::vector<int> path;
    search(colors, path);

    CanonicalLabeling out;
    out.perm = best_perm_;
    out.key.n = n_;
    out.key.rank = m_.rank();
    out.key.bases = best_form_;
    if (colored_) {
      out.key.colors.assign(n_, 0);
      for (int e = 0; e < n_; ++e) out.key.colors[best_perm_[e]] = init_[e];
    }
    return out;
  }

 private:
  template <class Key>
  static std::vector<int> rank_keys(const std::vector<Key>& keys) {
    std::vector<int> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<int> colors(keys.size());
    int c = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && keys[order[i - 1]] < keys[order[i]]) c = static_cast<int>(i);
      colors[order[i]] = c;
    }
    return colors;
  }

  static int count_cells(const std::vector<int>& colors) {
    std::vector<int> sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<int>(std::unique(sorted.begin(), sorted.end()) -
                            sorted.begin());
  }

  // Equitable refinement against the pair-count matrix.
  void refine(std::vector<int>& colors) const {
    int cells = count_cells(colors);
    while (cells < n_) {
      std::vector<std::pair<int, std::vector<std::uint64_t>>> keys(n_);
      for (int e = 0; e < n_; ++e) {
        std::vector<std::uint64_t> sig;
        sig.reserve(n_ - 1);
        for (int f = 0; f < n_; ++f) {
          if (f == e) continue;
          sig.push_back((static_cast<std::uint64_t>(colors[f]) << 40) |
                        weights_[e * n_ + f]);
        }
        std::sort(sig.begin(), sig.end());
        keys[e] = {colors[e], std::move(sig)};
      }
      std::vector<int> next = rank_keys(keys);
      int next_cells = count_cells(next);
      colors = std::move(next);
      if (next_cells == cells) break;
      cells = next_cells;
    }
  }

  std::vector<int> individualize(const std::vector<int>& colors, int v) const {
    std::vector<std::int64_t> keys(n_);
    for (int e = 0; e < n_; ++e) keys[e] = 2ll * colors[e] + (e == v ? 0 : 1);
    std::vector<int> next = rank_keys(keys);
    refine(next);
    return next;
  }

  std::vector<ElementSet> form_of(const std::vector<int>& perm) const {
    std::vector<ElementSet> out;
    out.reserve(m_.bases().size());
    for (ElementSet b : m_.bases()) {
      ElementSet t = 0;
      for_each_element(b, [&](ElementId e) { t |= element_bit(perm[e]); });
      out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    int i = 0;
    while (i < static_cast<int>(a.size()) && i < static_cast<int>(b.size()) &&
           a[i] == b[i]) {
      ++i;
    }
    return i;
  }

  void record_automorphism(const std::vector<int>& p1,
                           const std::vector<int>& p2) {
    std::vector<int> inv1(n_);
    for (int e = 0; e < n_; ++e) inv1[p1[e]] = e;
    std::vector<int> gamma(n_);
    for (int e = 0; e < n_; ++e) gamma[e] = inv1[p2[e]];
    automorphisms_.push_back(std::move(gamma));
  }

  // Returns the depth to resume at; a value below the current depth aborts
  // the current node.
  int search(const std::vector<int>& colors, std::vector<int>& path) {
    const int depth = static_cast<int>(path.size());
    // Target cell: the first non-singleton cell in color order.
    std::vector<int> cell_size(n_, 0);
    for (int c : colors) ++cell_size[c];
    int target = -1;
    for (int c = 0; c < n_; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) return leaf(colors, path);

    std::vector<int> members;
    for (int e = 0; e < n_; ++e) {
      if (colors[e] == target) members.push_back(e);
    }
    std::vector<int> explored;
    for (int v : members) {
      if (in_explored_orbit(v, explored, path)) continue;
      explored.push_back(v);
      path.push_back(v);
      int jump = search(individualize(colors, v), path);
      path.pop_back();
      if (jump < depth) return jump;
    }
    return depth;
  }

  bool in_explored_orbit(int v, const std::vector<int>& explored,
                         const std::vector<int>& path) const {
    if (explored.empty()) return false;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : automorphisms_) {
      bool fixes = true;
      for (int p : path) {
        if (g[p] != p) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      for (int e = 0; e < n_; ++e) {
        int a = find(e), b = find(g[e]);
        if (a != b) parent[a] = b;
      }
    }
    const int rv = find(v);
    for (int w : explored) {
      if (find(w) == rv) return true;
    }
    return false;
  }

  int leaf(const std::vector<int>& colors, const std::vector<int>& path) {
    const int depth = static_cast<int>(path.size());
    std::vector<ElementSet> form = form_of(colors);
    if (!have_first_) {
      have_first_ = true;
      first_form_ = best_form_ = std::move(form);
      first_perm_ = best_perm_ = colors;
      first_path_ = best_path_ = path;
      return depth;
    }
    if (form == first_form_) {
      record_automorphism(first_perm_, colors);
      return common_prefix(first_path_, path);
    }
    if (form == best_form_) {
      record_automorphism(best_perm_, colors);
      return common_prefix(best_path_, path);
    }
    if (form < best_form_) {
      best_form_ = std::move(form);
      best_perm_ = colors;
      best_path_ = path;
    }
    return depth;
  }

  const Matroid& m_;
  int n_;
  bool colored_ = false;
  std::vector<std::uint32_t> weights_;
  std::vector<int> init_;
  std::vector<std::vector<int>> automorphisms_;
  bool have_first_ = false;
  std::vector<ElementSet> first_form_, best_form_;
  std::vector<int> first_perm_, best_perm_, first_path_, best_path_;
};

}  // namespace detail

/// Canonical relabeling; `colors` (one per element, optional) restricts the
/// isomorphisms considered to color-preserving ones.
inline CanonicalLabeling canonical_labeling(const Matroid& m,
                                            std::span<const int> colors = {}) {
  if (m.size() == 0) {
    CanonicalLabeling out;
    out.key.bases = m.bases();
    return out;
  }
  return detail::CanonicalSearch(m, colors).run();
}

inline CanonicalKey canonical_key(const Matroid& m,
                                  std::span<const int> colors = {}) {
  return canonical_labeling(m, colors).key;
}

/// The canonical representative, with labels carried along the relabeling.
inline Matroid canonical_form(const Matroid& m) {
  return permute(m, canonical_labeling(m).perm);
}

inline bool is_isomorphic(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.rank() != b.rank() ||
      a.bases().size() != b.bases().size()) {
    return false;
  }
  return canonical_key(a) == canonical_key(b);
}

/// A color-preserving isomorphism from a to b as a map of element indices,
/// or nullopt.
inline std::optional<std::vector<int>> find_isomorphism(
    const Matroid& a, const Matroid& b, std::span<const int> colors_a = {},
    std::span<const int> colors_b = {}) {
  if (a.size() != b.size() || a.rank() != b.rank() ||
      a.bases().size() != b.bases().size()) {
    return std::nullopt;
  }
  CanonicalLabeling la = canonical_labeling(a, colors_a);
  CanonicalLabeling lb = canonical_labeling(b, colors_b);
  if (!(la.key == lb.key)) return std::nullopt;
  std::vector<int> inv_b(b.size());
  for (int e = 0; e < b.size(); ++e) inv_b[lb.perm[e]] = e;
  std::vector<int> map(a.size());
  for (int e = 0; e < a.size(); ++e) map[e] = inv_b[la.perm[e]];
  return map;
}

}  // namespace fragilis
