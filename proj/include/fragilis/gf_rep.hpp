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
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "fragilis/connectivity.hpp"
#include "fragilis/fragility.hpp"
#include "fragilis/matroid.hpp"

namespace fragilis {

/// Column vectors over GF(q), one per element, in standard form with respect
/// to `basis_order` (those columns are the identity).
struct Representation {
  int q = 0;
  int r = 0;
  std::vector<std::vector<int>> columns;
  std::vector<ElementId> basis_order;
};

namespace detail {

inline void check_field(int q) {
  if (q != 2 && q != 3 && q != 5 && q != 7) {
    throw PreconditionError("only prime q <= 7 is supported");
  }
}

inline int inverse_mod(int a, int q) {
  for (int x = 1; x < q; ++x) {
    if (a * x % q == 1) return x;
  }
  throw PreconditionError("zero has no inverse");
}

// Rank of a small dense matrix over GF(q); destroys its argument.
inline int rank_mod(std::vector<std::vector<int>>& a, int q) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int p = rk;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rk]);
    int inv = inverse_mod(a[rk][c], q);
    for (int i = rk + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      int f = a[i][c] * inv % q;
      for (int j = c; j < cols; ++j) {
        a[i][j] = ((a[i][j] - f * a[rk][j]) % q + q) % q;
      }
    }
    ++rk;
  }
  return rk;
}

}  // namespace detail

/// The matroid of the columns of a matrix over GF(q).
inline Matroid gf_matroid(int q, const std::vector<std::vector<int>>& columns,
                          std::vector<std::string> labels = {}) {
  detail::check_field(q);
  const int n = static_cast<int>(columns.size());
  if (n > kMaxElements) throw CapacityError("too many columns");
  const int d = n == 0 ? 0 : static_cast<int>(columns[0].size());
  auto rank_of = [&](ElementSet s) {
    std::vector<std::vector<int>> a;
    for_each_element(s, [&](ElementId e) { a.push_back(columns[e]); });
    // Rows of `a` are the chosen columns; rank is transpose-invariant.
    for (auto& row : a) {
      for (int& x : row) x = ((x % q) + q) % q;
    }
    return detail::rank_mod(a, q);
  };
  (void)d;
  const int r = rank_of(full_set(n));
  std::vector<ElementSet> bases;
  for_each_k_subset(n, r, [&](ElementSet s) {
    if (rank_of(s) == r) bases.push_back(s);
  });
  return Matroid(n, std::move(bases), std::move(labels));
}

inline Matroid matroid_of(const Representation& rep) {
  return gf_matroid(rep.q, rep.columns);
}

namespace detail {

// Backtracking over normalized standard forms [I | D].
class RepSearch {
 public:
  RepSearch(const Matroid& m, int q) : m_(m), q_(q) {
    check_field(q);
    if (m.size() > 14) throw CapacityError("representation search limited to 14");
    const ElementSet b0 = m.bases().front();
    rows_ = elements_of(b0);
    cols_ = elements_of(m.ground() & ~b0);
    r_ = static_cast<int>(rows_.size());
    c_ = static_cast<int>(cols_.size());
    // Support of D: (B0 − b_i) ∪ n_j is a basis.
    d_.assign(r_, std::vector<int>(c_, 0));
    state_.assign(r_, std::vector<int>(c_, kZero));
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) {
        ElementSet s = (b0 & ~element_bit(rows_[i])) | element_bit(cols_[j]);
        if (m.is_basis(s)) state_[i][j] = kFree;
      }
    }
    normalize_forest();
    // Free entries in column-major order.
    order_index_.assign(r_, std::vector<int>(c_, -1));
    for (int j = 0; j < c_; ++j) {
      for (int i = 0; i < r_; ++i) {
        if (state_[i][j] == kFree) {
          order_index_[i][j] = static_cast<int>(free_.size());
          free_.push_back({i, j});
        }
      }
    }
    checks_.resize(free_.size());
    // Every square submatrix D[X, Y] of size >= 2 is checked once its last
    // free entry is set; size-1 minors are the support itself.
    for (int k = 2; k <= std::min(r_, c_); ++k) {
      for_each_k_subset(r_, k, [&](ElementSet xs) {
        for_each_k_subset(c_, k, [&](ElementSet ys) {
          int trigger = -1;
          for_each_element(xs, [&](ElementId i) {
            for_each_element(ys, [&](ElementId j) {
              trigger = std::max(trigger, order_index_[i][j]);
            });
          });
          ElementSet s = b0;
          for_each_element(xs, [&](ElementId i) { s &= ~element_bit(rows_[i]); });
          for_each_element(ys, [&](ElementId j) { s |= element_bit(cols_[j]); });
          Minor mn{xs, ys, m.is_basis(s)};
          if (trigger < 0) {
            fixed_.push_back(mn);
          } else {
            checks_[trigger].push_back(mn);
          }
        });
      });
    }
  }

  /// Calls f(D) for each valid normalized matrix until f returns false.
  template <class F>
  void run(F&& f) {
    for (const Minor& mn : fixed_) {
      if (!minor_ok(mn)) return;
    }
    stop_ = false;
    recurse(0, f);
  }

  Representation build(const std::vector<std::vector<int>>& d) const {
    Representation rep;
    rep.q = q_;
    rep.r = r_;
    rep.basis_order = rows_;
    rep.columns.assign(m_.size(), std::vector<int>(r_, 0));
    for (int i = 0; i < r_; ++i) rep.columns[rows_[i]][i] = 1;
    for (int j = 0; j < c_; ++j) {
      for (int i = 0; i < r_; ++i) rep.columns[cols_[j]][i] = d[i][j];
    }
    return rep;
  }

  const std::vector<std::vector<int>>& matrix() const { return d_; }

 private:
  static constexpr int kZero = 0;
  static constexpr int kFree = 1;
  static constexpr int kOne = 2;

  struct Minor {
    ElementSet xs;
    ElementSet ys;
    bool nonzero;
  };

  // Entries on a spanning forest of the support graph are set to 1.
  void normalize_forest() {
    std::vector<int> parent(r_ + c_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) {
        if (state_[i][j] != kFree) continue;
        int a = find(i), b = find(r_ + j);
        if (a == b) continue;
        parent[a] = b;
        state_[i][j] = kOne;
        d_[i][j] = 1;
      }
    }
  }

  bool minor_ok(const Minor& mn) const {
    std::vector<std::vector<int>> a;
    for_each_element(mn.xs, [&](ElementId i) {
      std::vector<int> row;
      for_each_element(mn.ys, [&](ElementId j) { row.push_back(d_[i][j]); });
      a.push_back(std::move(row));
    });
    const int k = static_cast<int>(a.size());
    return (rank_mod(a, q_) == k) == mn.nonzero;
  }

  template <class F>
  void recurse(std::size_t pos, F& f) {
    if (stop_) return;
    if (pos == free_.size()) {
      if (!f(d_)) stop_ = true;
      return;
    }
    auto [i, j] = free_[pos];
    for (int v = 1; v < q_ && !stop_; ++v) {
      d_[i][j] = v;
      bool ok = true;
      for (const Minor& mn : checks_[pos]) {
        if (!minor_ok(mn)) {
          ok = false;
          break;
        }
      }
      if (ok) recurse(pos + 1, f);
    }
    d_[i][j] = 0;
  }

  const Matroid& m_;
  int q_;
  int r_ = 0;
  int c_ = 0;
  std::vector<ElementId> rows_;
  std::vector<ElementId> cols_;
  std::vector<std::vector<int>> d_;
  std::vector<std::vector<int>> state_;
  std::vector<std::vector<int>> order_index_;
  std::vector<std::pair<int, int>> free_;
  std::vector<std::vector<Minor>> checks_;
  std::vector<Minor> fixed_;
  bool stop_ = false;
};

// Least matrix over all row and column scalings of D, with the identity
// part restored by the inverse row scaling on basis columns.
inline std::vector<std::vector<int>> scaling_normal_form(
    std::vector<std::vector<int>> d, int q) {
  const int r = static_cast<int>(d.size());
  const int c = r == 0 ? 0 : static_cast<int>(d[0].size());
  std::vector<std::vector<int>> best;
  std::vector<int> scale(r, 1);
  // Row scalings are enumerated; each column is then scaled so that its
  // first nonzero entry is 1.
  std::function<void(int)> go = [&](int i) {
    if (i == r) {
      std::vector<std::vector<int>> e = d;
      for (int a = 0; a < r; ++a) {
        for (int b = 0; b < c; ++b) e[a][b] = e[a][b] * scale[a] % q;
      }
      for (int b = 0; b < c; ++b) {
        int lead = 0;
        for (int a = 0; a < r && lead == 0; ++a) lead = e[a][b];
        if (lead == 0) continue;
        int inv = inverse_mod(lead, q);
        for (int a = 0; a < r; ++a) e[a][b] = e[a][b] * inv % q;
      }
      if (best.empty() || e < best) best = std::move(e);
      return;
    }
    for (int s = 1; s < q; ++s) {
      scale[i] = s;
      go(i + 1);
    }
  };
  // A common factor on all rows is undone by the column step.
  go(r == 0 ? 0 : 1);
  return best;
}

}  // namespace detail

/// One representative per projective equivalence class over GF(q).
inline std::vector<Representation> representations(const Matroid& m, int q) {
  detail::RepSearch search(m, q);
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<Representation> out;
  search.run([&](const std::vector<std::vector<int>>& d) {
    if (seen.insert(detail::scaling_normal_form(d, q)).second) {
      out.push_back(search.build(d));
    }
    return true;
  });
  return out;
}

/// Number of classes, stopping early once `limit` is exceeded.
inline int count_representations(const Matroid& m, int q, int limit = 1 << 30) {
  detail::RepSearch search(m, q);
  std::set<std::vector<std::vector<int>>> seen;
  search.run([&](const std::vector<std::vector<int>>& d) {
    seen.insert(detail::scaling_normal_form(d, q));
    return static_cast<int>(seen.size()) <= limit;
  });
  return static_cast<int>(seen.size());
}

inline bool is_representable(const Matroid& m, int q) {
  return count_representations(m, q, 0) > 0;
}

enum class H5Status { kYes, kNo, kNotApplicable };

/// Six inequivalent GF(5) representations, for 3-connected M with a
/// {U(2,5), U(3,5)}-minor; otherwise NotApplicable.
inline H5Status is_h5(const Matroid& m) {
  if (!is_3connected(m) || !has_minor(m)) return H5Status::kNotApplicable;
  return count_representations(m, 5, 6) == 6 ? H5Status::kYes : H5Status::kNo;
}

inline const char* to_string(H5Status s) {
  switch (s) {
    case H5Status::kYes: return "true";
    case H5Status::kNo: return "false";
    case H5Status::kNotApplicable: return "not-applicable";
  }
  return "?";
}

}  // namespace fragilis
