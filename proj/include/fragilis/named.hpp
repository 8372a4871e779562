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

#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "fragilis/builders.hpp"
#include "fragilis/delta_wye.hpp"
#include "fragilis/matroid.hpp"

namespace fragilis {

/// X8 = Δ_C(R), where R is U(2,5) on s1..s4, c4 with c_i added parallel to
/// s_i for i = 1, 2, 3. Elements are ordered s1..s4, c1..c4.
inline Matroid make_x8() {
  Matroid u = uniform(2, 5, {"s1", "s2", "s3", "s4", "c4"});
  std::vector<ExtensionPair> ext{{0, "c1"}, {1, "c2"}, {2, "c3"}};
  Matroid r = parallel_extend(u, ext);
  const std::vector<std::string> c{"c1", "c2", "c3", "c4"};
  Matroid x = delta_exchange(r, r.set_of(c));
  // r lists s1..s4, c4, c1, c2, c3.
  std::vector<int> perm{0, 1, 2, 3, 7, 4, 5, 6};
  return permute(x, perm);
}

inline ElementSet x8_segment() { return 0x0f; }
inline ElementSet x8_cosegment() { return 0xf0; }

namespace detail {

struct NameRegistry {
  std::mutex mu;
  std::map<std::string, Matroid> entries;
};

inline NameRegistry& registry() {
  static NameRegistry r;
  return r;
}

}  // namespace detail

/// Makes a catalog-derived matroid available to make_named.
inline void register_name(const std::string& name, const Matroid& m) {
  auto& r = detail::registry();
  std::lock_guard<std::mutex> lock(r.mu);
  r.entries.insert_or_assign(name, m);
}

inline std::vector<std::string> registered_names() {
  auto& r = detail::registry();
  std::lock_guard<std::mutex> lock(r.mu);
  std::vector<std::string> out;
  for (const auto& [name, m] : r.entries) out.push_back(name);
  return out;
}

/// Builds a matroid by name: U(r,n), wheel(r), MK4, theta(k), X8, and any
/// name registered from a catalog (Y8, M71, M86, ...). A trailing '*' asks
/// for the dual.
inline Matroid make_named(const std::string& name) {
  static const std::regex uniform_re(R"(U\((\d+),(\d+)\))");
  static const std::regex wheel_re(R"(wheel\((\d+)\))");
  static const std::regex theta_re(R"(theta\((\d+)\))");
  std::smatch mt;
  if (std::regex_match(name, mt, uniform_re)) {
    int r = std::stoi(mt[1]), n = std::stoi(mt[2]);
    if (r > n || n > 9) throw DomainError("unknown name '" + name + "'");
    return uniform(r, n);
  }
  if (std::regex_match(name, mt, wheel_re)) return wheel(std::stoi(mt[1]));
  if (std::regex_match(name, mt, theta_re)) {
    return theta(std::stoi(mt[1])).matroid;
  }
  if (name == "MK4") return wheel(3);
  if (name == "X8") return make_x8();
  {
    auto& r = detail::registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.entries.find(name);
    if (it != r.entries.end()) return it->second;
  }
  if (name.size() > 1 && name.back() == '*') {
    return dual(make_named(name.substr(0, name.size() - 1)));
  }
  throw DomainError("unknown name '" + name + "'");
}

}  // namespace fragilis
