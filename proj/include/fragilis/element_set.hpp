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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fragilis {

/// Index of an element inside one matroid, in [0, kMaxElements).
using ElementId = int;

/// Bitmask over ElementId.
using ElementSet = std::uint32_t;

inline constexpr int kMaxElements = 24;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set argument is not contained in the ground set.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation would exceed a size bound.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An operation's structural precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (files, scripts).
class FormatError : public Error {
 public:
  using Error::Error;
};

constexpr ElementSet element_bit(ElementId e) { return ElementSet{1} << e; }

constexpr ElementSet full_set(int n) {
  return n >= 32 ? ~ElementSet{0} : (ElementSet{1} << n) - 1;
}

constexpr int set_size(ElementSet s) { return std::popcount(s); }

constexpr bool contains(ElementSet s, ElementId e) { return (s >> e) & 1u; }

constexpr bool is_subset(ElementSet a, ElementSet b) { return (a & ~b) == 0; }

template <class F>
void for_each_element(ElementSet s, F&& f) {
  while (s != 0) {
    f(static_cast<ElementId>(std::countr_zero(s)));
    s &= s - 1;
  }
}

inline std::vector<ElementId> elements_of(ElementSet s) {
  std::vector<ElementId> out;
  out.reserve(set_size(s));
  for_each_element(s, [&](ElementId e) { out.push_back(e); });
  return out;
}

/// Squeezes the bits of `s` selected by `keep` into the low positions, in
/// order. Used to reindex after deleting or contracting elements.
constexpr ElementSet compress_set(ElementSet s, ElementSet keep) {
  ElementSet out = 0;
  int pos = 0;
  while (keep != 0) {
    int e = std::countr_zero(keep);
    if ((s >> e) & 1u) out |= ElementSet{1} << pos;
    ++pos;
    keep &= keep - 1;
  }
  return out;
}

/// Calls f on every k-subset of the low n bits, increasing numerically.
template <class F>
void for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(ElementSet{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = (std::uint64_t{1} << k) - 1; s < limit;) {
    f(static_cast<ElementSet>(s));
    std::uint64_t t = s | (s - 1);
    s = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(s) + 1));
  }
}

/// All subsets of s, smallest code first.
inline std::vector<ElementSet> subsets_of(ElementSet s) {
  std::vector<ElementSet> out;
  ElementSet t = 0;
  do {
    out.push_back(t);
    t = (t - s) & s;
  } while (t != 0);
  return out;
}

}  // namespace fragilis
