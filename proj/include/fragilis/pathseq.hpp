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
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "fragilis/canonical.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/delta_wye.hpp"
#include "fragilis/fragility.hpp"
#include "fragilis/named.hpp"
#include "fragilis/parallel.hpp"

namespace fragilis {

enum class SetTag { kS, kC };
enum class Direction { kDelta, kNabla };

inline const char* to_string(SetTag t) { return t == SetTag::kS ? "S" : "C"; }
inline const char* to_string(Direction d) {
  return d == Direction::kDelta ? "delta" : "nabla";
}

/// Allowable extension along S or C followed by Δ (parallel extension) or ∇
/// (series extension) on that set. Each pair is (partner label, new label).
struct DeltaNablaStep {
  SetTag tag = SetTag::kS;
  Direction dir = Direction::kDelta;
  std::vector<std::pair<std::string, std::string>> extension;
  friend bool operator==(const DeltaNablaStep&, const DeltaNablaStep&) = default;
};

/// Wheel glued onto the triangle (or, dually, triad) sub = (a, b, c) inside S
/// or C, with b the rim element; X is then deleted.
struct GlueStep {
  SetTag tag = SetTag::kS;
  std::vector<std::string> sub;
  int r = 3;
  std::vector<std::string> x;
  friend bool operator==(const GlueStep&, const GlueStep&) = default;
};

using PathStep = std::variant<DeltaNablaStep, GlueStep>;

struct PathSequence {
  std::vector<PathStep> steps;
  friend bool operator==(const PathSequence&, const PathSequence&) = default;
};

/// Evaluation state: the current matroid plus the labels of S and C.
struct PathState {
  Matroid m = make_x8();
  std::vector<std::string> s{"s1", "s2", "s3", "s4"};
  std::vector<std::string> c{"c1", "c2", "c3", "c4"};
  bool s_usable = true;
  bool c_usable = true;
  // Labels of the fan left by the last step when it was a glue.
  std::vector<std::string> last_fan;
  bool last_glue_on_segment = false;

  std::vector<std::string>& members(SetTag t) { return t == SetTag::kS ? s : c; }
  const std::vector<std::string>& members(SetTag t) const {
    return t == SetTag::kS ? s : c;
  }
  bool usable(SetTag t) const { return t == SetTag::kS ? s_usable : c_usable; }
  ElementSet set_of(SetTag t) const { return m.set_of(members(t)); }
};

class StepError : public PreconditionError {
 public:
  StepError(std::size_t index, const std::string& what)
      : PreconditionError("step " + std::to_string(index + 1) + ": " + what),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

inline std::string glue_prefix(std::size_t index) {
  return "w" + std::to_string(index + 1) + "_";
}

namespace detail {

inline ElementId require_label(const Matroid& m, const std::string& l,
                               std::size_t index) {
  auto e = m.find(l);
  if (!e) throw StepError(index, "unknown label '" + l + "'");
  return *e;
}

}  // namespace detail

/// Applies one step, checking its preconditions.
inline PathState apply_step(const PathState& st, const PathStep& step,
                            std::size_t index,
                            const TargetFamily& t = default_family()) {
  PathState out = st;
  out.last_fan.clear();
  if (const auto* dn = std::get_if<DeltaNablaStep>(&step)) {
    if (!st.usable(dn->tag)) {
      throw StepError(index, std::string(to_string(dn->tag)) +
                                 " is unusable after a wheel glue");
    }
    if (dn->extension.empty()) throw StepError(index, "empty extension");
    const ElementSet a = st.set_of(dn->tag);
    const bool delta = dn->dir == Direction::kDelta;
    // ∇ is Δ in the dual.
    const Matroid base = delta ? st.m : dual(st.m);
    const TargetFamily fam = delta ? t : t.dual_family();
    if (set_size(a) != 4 || !is_segment(base, a)) {
      throw StepError(index, std::string(to_string(dn->tag)) + " is not a " +
                                 (delta ? "4-segment" : "4-cosegment"));
    }
    if (!is_path_generating(base, a)) {
      throw StepError(index, "set is not path-generating");
    }
    if (!allowable_segment(base, a, fam)) {
      throw StepError(index, "set is not allowable");
    }
    std::vector<ExtensionPair> pairs;
    for (const auto& [partner, label] : dn->extension) {
      ElementId p = detail::require_label(base, partner, index);
      if (!contains(a, p)) throw StepError(index, "partner outside the set");
      if (!fam.has_minor(delete_element(base, p))) {
        throw StepError(index, "partner '" + partner + "' is not " +
                                   (delta ? "deletable" : "contractible"));
      }
      pairs.push_back({p, label});
    }
    Matroid q;
    try {
      q = parallel_extend(base, pairs);
    } catch (const Error& e) {
      throw StepError(index, e.what());
    }
    Matroid r = delta_exchange(q, q.set_of(st.members(dn->tag)));
    out.m = delta ? r : dual(r);
    return out;
  }
  const auto& gl = std::get<GlueStep>(step);
  if (!st.usable(gl.tag)) {
    throw StepError(index, std::string(to_string(gl.tag)) +
                               " is unusable after a wheel glue");
  }
  if (gl.sub.size() != 3) throw StepError(index, "glue needs three labels");
  const ElementSet a = st.set_of(gl.tag);
  const bool on_segment = is_segment(st.m, a) && set_size(a) == 4;
  const bool on_cosegment = is_cosegment(st.m, a) && set_size(a) == 4;
  if (!on_segment && !on_cosegment) {
    throw StepError(index, "set is not a 4-segment or 4-cosegment");
  }
  const Matroid base = on_segment ? st.m : dual(st.m);
  const TargetFamily fam = on_segment ? t : t.dual_family();
  if (!is_path_generating(base, a)) {
    throw StepError(index, "set is not path-generating");
  }
  GluingSpec spec;
  spec.a = detail::require_label(base, gl.sub[0], index);
  spec.b = detail::require_label(base, gl.sub[1], index);
  spec.c = detail::require_label(base, gl.sub[2], index);
  spec.r = gl.r;
  spec.prefix = glue_prefix(index);
  const ElementSet tri =
      element_bit(spec.a) | element_bit(spec.b) | element_bit(spec.c);
  if (!is_subset(tri, a) || set_size(tri) != 3) {
    throw StepError(index, "glue triple must be three elements of the set");
  }
  if (!allowable_segment(base, tri, fam)) {
    throw StepError(index, "glue triple is not allowable");
  }
  if (fam.has_minor(delete_element(base, spec.b))) {
    throw StepError(index, "rim element must not be removable");
  }
  for (const auto& l : gl.x) {
    spec.x |= element_bit(detail::require_label(base, l, index));
  }
  Matroid g;
  try {
    g = glue_wheel(base, spec);
  } catch (const Error& e) {
    throw StepError(index, e.what());
  }
  out.m = on_segment ? g : dual(g);
  auto& mem = out.members(gl.tag);
  std::erase_if(mem, [&](const std::string& l) {
    return std::find(gl.x.begin(), gl.x.end(), l) != gl.x.end();
  });
  (gl.tag == SetTag::kS ? out.s_usable : out.c_usable) = false;
  for (const auto& l : gl.sub) {
    if (std::find(gl.x.begin(), gl.x.end(), l) == gl.x.end()) {
      out.last_fan.push_back(l);
    }
  }
  for (int i = 1; i <= 2 * gl.r - 3; ++i) {
    out.last_fan.push_back(spec.prefix + std::to_string(i));
  }
  out.last_glue_on_segment = on_segment;
  return out;
}

inline PathState evaluate_state(const PathSequence& seq,
                                const TargetFamily& t = default_family()) {
  PathState st;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    st = apply_step(st, seq.steps[i], i, t);
  }
  return st;
}

inline Matroid evaluate(const PathSequence& seq) {
  return evaluate_state(seq).m;
}

// ---------------------------------------------------------------------------
// Script form.

inline std::string to_script(const PathSequence& seq) {
  std::ostringstream os;
  os << "X8\n";
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  for (const PathStep& step : seq.steps) {
    if (const auto* dn = std::get_if<DeltaNablaStep>(&step)) {
      os << "dn " << to_string(dn->tag) << ' ' << to_string(dn->dir) << " p=";
      for (std::size_t i = 0; i < dn->extension.size(); ++i) {
        os << (i ? "," : "") << dn->extension[i].first << ':'
           << dn->extension[i].second;
      }
      os << '\n';
    } else {
      const auto& gl = std::get<GlueStep>(step);
      os << "glue " << to_string(gl.tag) << " sub=" << join(gl.sub)
         << " r=" << gl.r << " X=" << join(gl.x) << '\n';
    }
  }
  return os.str();
}

inline PathSequence parse_script(const std::string& text) {
  PathSequence seq;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& what, std::size_t col) {
    throw FormatError("line " + std::to_string(line_no) + ", column " +
                      std::to_string(col + 1) + ": " + what);
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "X8") fail("expected 'X8'", 0);
      header = true;
      continue;
    }
    std::vector<std::string> tok;
    std::vector<std::size_t> col;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && line[i] == ' ') ++i;
      if (i == line.size()) break;
      std::size_t j = line.find(' ', i);
      if (j == std::string::npos) j = line.size();
      tok.push_back(line.substr(i, j - i));
      col.push_back(i);
      i = j;
    }
    auto tag_of = [&](std::size_t k) {
      if (k >= tok.size()) fail("missing set tag", line.size());
      if (tok[k] == "S") return SetTag::kS;
      if (tok[k] == "C") return SetTag::kC;
      fail("set tag must be S or C", col[k]);
      return SetTag::kS;
    };
    auto value_of = [&](std::size_t k, const std::string& key) {
      if (k >= tok.size()) fail("missing " + key + "=", line.size());
      if (tok[k].rfind(key + "=", 0) != 0) fail("expected " + key + "=", col[k]);
      return tok[k].substr(key.size() + 1);
    };
    if (tok[0] == "dn") {
      if (tok.size() != 4) fail("dn takes three fields", col[0]);
      DeltaNablaStep dn;
      dn.tag = tag_of(1);
      if (tok[2] == "delta") {
        dn.dir = Direction::kDelta;
      } else if (tok[2] == "nabla") {
        dn.dir = Direction::kNabla;
      } else {
        fail("direction must be delta or nabla", col[2]);
      }
      for (const auto& item : split(value_of(3, "p"), ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
          fail("extension entries are partner:label", col[3]);
        }
        dn.extension.emplace_back(item.substr(0, colon), item.substr(colon + 1));
      }
      seq.steps.emplace_back(std::move(dn));
    } else if (tok[0] == "glue") {
      if (tok.size() != 5) fail("glue takes four fields", col[0]);
      GlueStep gl;
      gl.tag = tag_of(1);
      gl.sub = split(value_of(2, "sub"), ',');
      if (gl.sub.size() != 3) fail("sub takes three labels", col[2]);
      std::string rv = value_of(3, "r");
      try {
        std::size_t used = 0;
        gl.r = std::stoi(rv, &used);
        if (used != rv.size()) throw std::invalid_argument(rv);
      } catch (const std::exception&) {
        fail("r must be an integer", col[3]);
      }
      gl.x = split(value_of(4, "X"), ',');
      seq.steps.emplace_back(std::move(gl));
    } else {
      fail("unknown step '" + tok[0] + "'", col[0]);
    }
  }
  if (!header) throw FormatError("line 1, column 1: expected 'X8'");
  return seq;
}

/// The step-wise dual sequence: directions flip and, through the duality of
/// X8 that exchanges S and C, so do tags and the labels of X8. Its
/// evaluation is isomorphic to the dual of the evaluation of seq.
inline PathSequence dual_sequence(const PathSequence& seq) {
  static const std::map<std::string, std::string> swap = [] {
    const Matroid x8 = make_x8();
    const Matroid d = dual(x8);
    std::vector<int> ca(8), cb(8);
    for (int e = 0; e < 8; ++e) {
      ca[e] = contains(x8_segment(), e) ? 0 : 1;
      cb[e] = 1 - ca[e];
    }
    auto iso = find_isomorphism(d, x8, ca, cb);
    if (!iso) throw Error("X8 duality not found");
    std::map<std::string, std::string> out;
    for (int e = 0; e < 8; ++e) out[x8.label(e)] = x8.label((*iso)[e]);
    return out;
  }();
  auto map_label = [&](const std::string& l) {
    auto it = swap.find(l);
    return it == swap.end() ? l : it->second;
  };
  auto flip = [](SetTag t) { return t == SetTag::kS ? SetTag::kC : SetTag::kS; };
  PathSequence out;
  for (const PathStep& step : seq.steps) {
    if (const auto* dn = std::get_if<DeltaNablaStep>(&step)) {
      DeltaNablaStep d;
      d.tag = flip(dn->tag);
      d.dir = dn->dir == Direction::kDelta ? Direction::kNabla : Direction::kDelta;
      for (const auto& [p, l] : dn->extension) d.extension.emplace_back(map_label(p), l);
      out.steps.emplace_back(std::move(d));
    } else {
      GlueStep g = std::get<GlueStep>(step);
      g.tag = flip(g.tag);
      for (auto& l : g.sub) l = map_label(l);
      for (auto& l : g.x) l = map_label(l);
      out.steps.emplace_back(std::move(g));
    }
  }
  return out;
}

/// Evaluates the step-wise dual of seq from X8* with the same labels: Δ and
/// ∇ swap, tags and labels stay. Equals dual(evaluate(seq)) as a labeled
/// matroid.
inline Matroid evaluate_from_dual(const PathSequence& seq) {
  PathState st;
  st.m = dual(st.m);
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    PathStep step = seq.steps[i];
    if (auto* dn = std::get_if<DeltaNablaStep>(&step)) {
      dn->dir = dn->dir == Direction::kDelta ? Direction::kNabla : Direction::kDelta;
    }
    st = apply_step(st, step, i);
  }
  return st.m;
}

// ---------------------------------------------------------------------------
// Structure of a sequence.

inline std::vector<SetTag> adjacency_sequence(const PathSequence& seq) {
  std::vector<SetTag> out;
  for (const PathStep& step : seq.steps) {
    if (const auto* dn = std::get_if<DeltaNablaStep>(&step)) out.push_back(dn->tag);
  }
  return out;
}

struct InternalElements {
  ElementSet guts = 0;
  ElementSet coguts = 0;
};

/// For consecutive Δ-∇ steps on the same set in opposite directions, new
/// elements of the Δ step are internal guts and those of the ∇ step internal
/// coguts. Reported as sets of the evaluated matroid.
inline InternalElements internal_elements(const PathSequence& seq) {
  Matroid m = evaluate(seq);
  InternalElements out;
  for (std::size_t i = 0; i + 1 < seq.steps.size(); ++i) {
    const auto* a = std::get_if<DeltaNablaStep>(&seq.steps[i]);
    const auto* b = std::get_if<DeltaNablaStep>(&seq.steps[i + 1]);
    if (!a || !b || a->tag != b->tag || a->dir == b->dir) continue;
    for (const auto* s : {a, b}) {
      ElementSet& dst = s->dir == Direction::kDelta ? out.guts : out.coguts;
      for (const auto& [partner, label] : s->extension) {
        if (auto e = m.find(label)) dst |= element_bit(*e);
      }
    }
  }
  return out;
}

/// Path of 3-separations associated with the sequence: (S, C) for X8,
/// otherwise grown from the final 4-segment, 4-cosegment or glued fan.
inline Path3Sep associated_path(const PathSequence& seq) {
  PathState st = evaluate_state(seq);
  if (seq.steps.empty()) {
    return Path3Sep{{st.set_of(SetTag::kS), st.set_of(SetTag::kC)}};
  }
  ElementSet start = 0;
  bool closure_first = true;
  if (const auto* dn = std::get_if<DeltaNablaStep>(&seq.steps.back())) {
    start = st.set_of(dn->tag);
    closure_first = is_segment(st.m, start);
  } else {
    start = st.m.set_of(st.last_fan);
    closure_first = st.last_glue_on_segment;
  }
  if (!is_path_generating(st.m, start)) {
    throw PreconditionError("ending set is not path-generating");
  }
  return derive_path(st.m, start, closure_first);
}

// ---------------------------------------------------------------------------
// Generation.

struct GenerateOptions {
  int n_max = 12;
  int r_max = 0;  // largest wheel rank; 0 means as large as n_max allows
  bool repeat_partners = false;  // allow two new elements on one partner
  int jobs = 0;
};

struct GeneratedMatroid {
  Matroid matroid;  // canonical form, labels "0".."n-1"
  PathSequence witness;
  bool three_connected = false;
};

namespace detail {

inline CanonicalKey state_key(const PathState& st) {
  std::vector<int> colors(st.m.size(), 0);
  for_each_element(st.set_of(SetTag::kS),
                   [&](ElementId e) { colors[e] = st.s_usable ? 1 : 3; });
  for_each_element(st.set_of(SetTag::kC),
                   [&](ElementId e) { colors[e] = st.c_usable ? 2 : 4; });
  return canonical_key(st.m, colors);
}

// Candidate steps from a state, without precondition checks beyond what is
// needed to enumerate them; apply_step rejects the invalid ones.
inline std::vector<PathStep> candidate_steps(const PathState& st,
                                             std::size_t index,
                                             const GenerateOptions& opt) {
  std::vector<PathStep> out;
  const int n = st.m.size();
  for (SetTag tag : {SetTag::kS, SetTag::kC}) {
    if (!st.usable(tag)) continue;
    const ElementSet a = st.set_of(tag);
    if (set_size(a) != 4) continue;
    const bool seg = is_segment(st.m, a);
    const bool coseg = is_cosegment(st.m, a);
    if (!seg && !coseg) continue;
    const Matroid base = seg ? st.m : dual(st.m);
    const TargetFamily fam = seg ? default_family() : default_family().dual_family();
    if (!is_path_generating(base, a) || !allowable_segment(base, a, fam)) continue;
    ElementSet removable = 0;
    for_each_element(a, [&](ElementId e) {
      if (fam.has_minor(delete_element(base, e))) removable |= element_bit(e);
    });
    const std::vector<std::string> mem = st.members(tag);
    // Δ-∇ steps: one new element on each member of a nonempty subset of
    // the removable elements (two each when repeat_partners is set).
    const int reps = opt.repeat_partners ? 2 : 1;
    std::vector<ElementId> rem = elements_of(removable);
    std::vector<int> mult(rem.size(), 0);
    while (true) {
      std::size_t k = 0;
      while (k < mult.size() && mult[k] == reps) mult[k++] = 0;
      if (k == mult.size()) break;
      ++mult[k];
      int added = 0;
      for (int x : mult) added += x;
      if (n + added > opt.n_max) continue;
      DeltaNablaStep dn;
      dn.tag = tag;
      dn.dir = seg ? Direction::kDelta : Direction::kNabla;
      for (std::size_t i = 0; i < rem.size(); ++i) {
        for (int j = 0; j < mult[i]; ++j) {
          std::string label = "e" + std::to_string(index + 1) + "_" +
                              st.m.label(rem[i]) + (j ? "b" : "");
          dn.extension.emplace_back(st.m.label(rem[i]), label);
        }
      }
      out.emplace_back(std::move(dn));
    }
    // Wheel glues on triples of the set; the rim is not removable.
    for (ElementId b : elements_of(a & ~removable)) {
      for (ElementId x : elements_of(a)) {
        for (ElementId y : elements_of(a)) {
          if (x >= y || x == b || y == b) continue;
          const ElementSet tri = element_bit(x) | element_bit(y) | element_bit(b);
          if (!allowable_segment(base, tri, fam)) continue;
          for (int r = 3;; ++r) {
            if (opt.r_max > 0 && r > opt.r_max) break;
            if (n + 2 * r - 6 > opt.n_max) break;
            for (ElementSet drop = 0; drop < 8; ++drop) {
              ElementSet xs = element_bit(b);
              if (drop & 1) xs |= element_bit(x);
              if (drop & 2) xs |= element_bit(y);
              if (drop & 4) continue;
              if (n + 2 * r - 3 - set_size(xs) > opt.n_max) continue;
              GlueStep gl;
              gl.tag = tag;
              gl.sub = {st.m.label(x), st.m.label(b), st.m.label(y)};
              gl.r = r;
              gl.x = st.m.labels_of(xs);
              out.emplace_back(std::move(gl));
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Every matroid described by a path sequence with at most n_max elements,
/// one entry per isomorphism class with a shortest witness, sorted by
/// (size, rank, canonical bases).
inline std::vector<GeneratedMatroid> generate_all(const GenerateOptions& opt) {
  if (opt.n_max < 8 || opt.n_max > 14) {
    throw PreconditionError("n_max must be 8..14");
  }
  struct Node {
    PathState st;
    PathSequence seq;
  };
  std::map<CanonicalKey, PathSequence> found;
  std::set<CanonicalKey> seen_states;
  std::vector<Node> frontier{Node{PathState{}, PathSequence{}}};
  seen_states.insert(detail::state_key(frontier[0].st));
  found.emplace(canonical_key(frontier[0].st.m), PathSequence{});
  while (!frontier.empty()) {
    std::vector<std::vector<Node>> produced(frontier.size());
    parallel_for(frontier.size(), opt.jobs, [&](std::size_t i) {
      const Node& node = frontier[i];
      const std::size_t idx = node.seq.steps.size();
      for (PathStep& step : detail::candidate_steps(node.st, idx, opt)) {
        PathState next;
        try {
          next = apply_step(node.st, step, idx);
        } catch (const PreconditionError&) {
          continue;
        }
        if (next.m.size() > opt.n_max) continue;
        Node child{std::move(next), node.seq};
        child.seq.steps.push_back(std::move(step));
        produced[i].push_back(std::move(child));
      }
    });
    std::vector<Node> next_frontier;
    for (auto& group : produced) {
      for (Node& child : group) {
        CanonicalKey sk = detail::state_key(child.st);
        if (!seen_states.insert(std::move(sk)).second) continue;
        found.emplace(canonical_key(child.st.m), child.seq);
        next_frontier.push_back(std::move(child));
      }
    }
    frontier = std::move(next_frontier);
  }
  std::vector<GeneratedMatroid> out;
  for (const auto& [key, seq] : found) {
    GeneratedMatroid g{Matroid(key.n, key.bases), seq, false};
    g.three_connected = is_3connected(g.matroid);
    out.push_back(std::move(g));
  }
  return out;
}

namespace detail {

struct GenerateCache {
  std::mutex mu;
  std::map<int, std::vector<GeneratedMatroid>> by_size;
};

inline GenerateCache& generate_cache() {
  static GenerateCache c;
  return c;
}

}  // namespace detail

/// generate_all with default options, memoized per bound.
inline const std::vector<GeneratedMatroid>& generated_up_to(int n_max,
                                                            int jobs = 0) {
  auto& c = detail::generate_cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.by_size.find(n_max);
    if (it != c.by_size.end()) return it->second;
  }
  GenerateOptions opt;
  opt.n_max = n_max;
  opt.jobs = jobs;
  auto result = generate_all(opt);
  std::lock_guard<std::mutex> lock(c.mu);
  return c.by_size.emplace(n_max, std::move(result)).first->second;
}

/// A witness sequence whose evaluation is isomorphic to M, found by
/// matching against every generated matroid of M's size.
inline std::optional<PathSequence> describes(const Matroid& m, int jobs = 0) {
  if (m.size() < 8) return std::nullopt;
  if (m.size() > 14) throw CapacityError("describes limited to 14 elements");
  const CanonicalKey key = canonical_key(m);
  for (const GeneratedMatroid& g : generated_up_to(std::max(m.size(), 8), jobs)) {
    if (g.matroid.size() == m.size() && canonical_key(g.matroid) == key) {
      return g.witness;
    }
  }
  return std::nullopt;
}

/// Whether M reduces, by removing series and parallel elements, to a matroid
/// described by a path sequence.
inline bool reduces_to_described(const Matroid& m, int jobs = 0) {
  Matroid r = cosimplify(simplify(m));
  while (true) {
    Matroid next = cosimplify(simplify(r));
    if (next.size() == r.size()) break;
    r = next;
  }
  return describes(r, jobs).has_value();
}

/// Reorders steps into a canonical order: Δ-∇ steps grouped by set (S
/// first, then C, each keeping its relative order), wheel glues last. The
/// first arrangement that evaluates to an isomorphic matroid is returned;
/// the input itself if none does.
inline PathSequence normalize(const PathSequence& seq) {
  const Matroid target = evaluate(seq);
  auto arrange = [&](SetTag first) {
    PathSequence out;
    for (SetTag t : {first, first == SetTag::kS ? SetTag::kC : SetTag::kS}) {
      for (const PathStep& s : seq.steps) {
        const auto* dn = std::get_if<DeltaNablaStep>(&s);
        if (dn && dn->tag == t) out.steps.push_back(s);
      }
    }
    for (const PathStep& s : seq.steps) {
      if (std::holds_alternative<GlueStep>(s)) out.steps.push_back(s);
    }
    // Glue prefixes depend on the step index; relabel extension names
    // never refer to wheel elements, so nothing else changes.
    return out;
  };
  for (SetTag first : {SetTag::kS, SetTag::kC}) {
    PathSequence cand = arrange(first);
    try {
      if (is_isomorphic(evaluate(cand), target)) return cand;
    } catch (const PreconditionError&) {
    }
  }
  return seq;
}

}  // namespace fragilis
