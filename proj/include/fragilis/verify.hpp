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
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fragilis/builders.hpp"
#include "fragilis/catalog.hpp"
#include "fragilis/connectivity.hpp"
#include "fragilis/delta_wye.hpp"
#include "fragilis/fragility.hpp"
#include "fragilis/gf_rep.hpp"
#include "fragilis/named.hpp"
#include "fragilis/pathseq.hpp"

namespace fragilis {

struct CheckResult {
  int criterion = 0;
  std::string title;
  bool pass = false;
  long long checks = 0;
  std::string detail;  // first failure, or a summary
  double seconds = 0;
  double budget = 0;   // seconds
};

struct VerifyOptions {
  int catalog_size = 9;   // catalog bound for the Δ-Y, blocking and count suites
  int theorem_size = 12;  // bound for the main-theorem suite
  int samples = 200;
  int partitions = 10000;
  int jobs = 0;
  std::uint64_t seed = 20230417;
};

enum class Suite { kKernel, kDeltaWye, kPathseq, kTheorem, kAll };

namespace detail {

class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (!ok && failure_.empty()) failure_ = what();
  }
  bool pass() const { return failure_.empty() && checks_ > 0; }
  long long checks() const { return checks_; }
  std::string detail(const std::string& summary) const {
    if (checks_ == 0) return "no instances checked";
    return failure_.empty() ? summary : failure_;
  }

 private:
  long long checks_ = 0;
  std::string failure_;
};

template <class F>
CheckResult timed(int criterion, std::string title, double budget, F&& body) {
  CheckResult r;
  r.criterion = criterion;
  r.title = std::move(title);
  r.budget = budget;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds > budget) {
    r.pass = false;
    r.detail += " (over time budget)";
  }
  return r;
}

inline std::string set_text(const Matroid& m, ElementSet s) {
  std::string out = "{";
  bool first = true;
  for_each_element(s, [&](ElementId e) {
    out += (first ? "" : ",") + m.label(e);
    first = false;
  });
  return out + "}";
}

// Segments of M with 3 or 4 elements (simple rank-2 restrictions).
inline std::vector<ElementSet> small_segments(const Matroid& m) {
  std::set<ElementSet> out;
  for (ElementSet line : segments(m, 3)) {
    for (ElementSet s : subsets_of(line)) {
      const int k = set_size(s);
      if ((k == 3 || k == 4) && is_segment(m, s)) out.insert(s);
    }
  }
  return {out.begin(), out.end()};
}

inline std::vector<ElementSet> small_cosegments(const Matroid& m) {
  return small_segments(dual(m));
}

inline ElementSet moved(const Matroid& from, ElementSet s, const Matroid& to) {
  return to.set_of(from.labels_of(s));
}

}  // namespace detail

// 1. Θ-calculus laws on the catalog.
inline CheckResult check_theta_calculus(const VerifyOptions& opt) {
  return detail::timed(1, "theta calculus round trip and commutation", 300, [&](CheckResult& r) {
    auto cat = cached_catalog(opt.catalog_size, opt.jobs);
    detail::Tally t;
    long long pairs = 0;
    for (const auto& rec : cat->records()) {
      if (rec.size() > 9) continue;
      const Matroid& m = rec.matroid;
      auto where = [&](const std::string& law, ElementSet a) {
        return [&, law, a] {
          return rec.id + ": " + law + " fails for A=" + detail::set_text(m, a);
        };
      };
      const auto segs = detail::small_segments(m);
      std::vector<ElementSet> coindep, indep;
      for (ElementSet a : segs) {
        if (is_coindependent(m, a)) coindep.push_back(a);
      }
      for (ElementSet a : detail::small_cosegments(m)) {
        if (m.is_independent(a)) indep.push_back(a);
      }
      for (ElementSet a : coindep) {
        if (!allowable_segment(m, a)) continue;
        const Matroid d = delta_exchange(m, a);
        t.check(nabla_exchange(d, a) == m, where("nabla(delta(M)) = M", a));
        for_each_element(a, [&](ElementId x) {
          const Matroid mx = delete_element(m, x);
          const Matroid lhs = contract_element(d, x);
          const Matroid rhs =
              delta_exchange(mx, detail::moved(m, a & ~element_bit(x), mx));
          t.check(same_labeled(lhs, rhs), where("delta(M)/x = delta(M\\x)", a));
        });
      }
      for (ElementSet s : coindep) {
        for (ElementSet u : coindep) {
          if (s >= u || (s & u)) continue;
          ++pairs;
          t.check(delta_exchange(delta_exchange(m, u), s) ==
                      delta_exchange(delta_exchange(m, s), u),
                  where("delta commutation", s | u));
        }
      }
      for (ElementSet s : indep) {
        for (ElementSet u : indep) {
          if (s >= u || (s & u)) continue;
          ++pairs;
          t.check(nabla_exchange(nabla_exchange(m, u), s) ==
                      nabla_exchange(nabla_exchange(m, s), u),
                  where("nabla commutation", s | u));
        }
        for (ElementSet u : coindep) {
          if (s & u) continue;
          ++pairs;
          t.check(nabla_exchange(delta_exchange(m, u), s) ==
                      delta_exchange(nabla_exchange(m, s), u),
                  where("mixed commutation", s | u));
        }
      }
    }
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail(std::to_string(t.checks()) + " exact equalities, " +
                        std::to_string(pairs) + " commuting pairs");
  });
}

// 2. Θ_k structure.
inline CheckResult check_theta(const VerifyOptions&) {
  return detail::timed(2, "theta_k structure and rational agreement", 10, [&](CheckResult& r) {
    detail::Tally t;
    const Matroid t3 = theta(3).matroid;
    t.check(is_isomorphic(t3, wheel(3)), [] { return std::string("theta3 is not M(K4)"); });
    t.check(t3.bases().size() == 16, [&] {
      return "theta3 has " + std::to_string(t3.bases().size()) + " bases";
    });
    for (int k = 3; k <= 6; ++k) {
      const ThetaK th = theta(k);
      const std::string tag = "theta" + std::to_string(k);
      t.check(is_isomorphic(restrict_to(th.matroid, th.a_side()), uniform(2, k)),
              [&] { return tag + "|A is not U(2,k)"; });
      const Matroid free_part = delete_set(th.matroid, th.a_side());
      t.check(free_part.rank() == k && free_part.bases().size() == 1,
              [&] { return tag + "\\A is not free"; });
      t.check(th.matroid.same_structure(theta_rational(k)),
              [&] { return tag + " basis rule differs from the rational realization"; });
    }
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail("k=3..6 exact");
  });
}

// 3. X8 certificate.
inline CheckResult check_x8(const VerifyOptions&) {
  return detail::timed(3, "X8 certificate", 30, [&](CheckResult& r) {
    detail::Tally t;
    const Matroid x = make_x8();
    const ElementSet s = x8_segment(), c = x8_cosegment();
    auto fail = [](const char* w) { return [w] { return std::string(w); }; };
    t.check(x.size() == 8 && x.rank() == 4, fail("not 8 elements of rank 4"));
    t.check(is_isomorphic(x, dual(x)), fail("not self-dual"));
    t.check(is_3connected(x), fail("not 3-connected"));
    t.check(is_strictly_fragile(x), fail("not strictly fragile"));
    t.check((s | c) == x.ground() && (s & c) == 0 && set_size(s) == 4,
            fail("S and C do not split E"));
    t.check(is_segment(x, s), fail("S is not a segment"));
    t.check(is_cosegment(x, c), fail("C is not a cosegment"));
    const int reps = count_representations(x, 5, 7);
    t.check(reps == 6, [&] { return "GF(5) classes: " + std::to_string(reps); });
    t.check(path_width_le3(x).at_most_three, fail("path width exceeds 3"));
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail("8 elements, rank 4, 6 GF(5) classes");
  });
}

// 4. Catalog reproduction at nine elements.
inline CheckResult check_catalog(const VerifyOptions& opt) {
  return detail::timed(4, "catalog reproduction", 1800, [&](CheckResult& r) {
    auto cat = cached_catalog(std::max(9, opt.catalog_size), opt.jobs);
    detail::Tally t;
    auto keys_of = [&](int n) {
      std::set<CanonicalKey> out;
      for (const auto* rec : cat->layer(n)) out.insert(canonical_key(rec->matroid));
      return out;
    };
    const std::set<CanonicalKey> five{canonical_key(uniform(2, 5)), canonical_key(uniform(3, 5))};
    t.check(keys_of(5) == five, [] { return std::string("5-element layer is not {U25, U35}"); });
    const auto six = keys_of(6);
    const auto* p6 = cat->find_name("P6");
    for (const Matroid& m : {uniform(2, 6), uniform(4, 6)}) {
      t.check(six.count(canonical_key(m)) == 1, [] { return std::string("U26/U46 missing"); });
    }
    t.check(p6 && p6->size() == 6 && triangles(p6->matroid).size() == 1 && p6->rank() == 3,
            [] { return std::string("P6 missing"); });
    const auto eight = keys_of(8);
    t.check(eight.count(canonical_key(make_x8())) == 1, [] { return std::string("X8 missing"); });
    int y8 = 0;
    for (const auto* rec : cat->layer(8)) y8 += segments(rec->matroid, 4, true).size() == 2;
    t.check(y8 == 1, [&] { return "Y8 fingerprint matches " + std::to_string(y8); });
    const auto* y = cat->find_name("Y8");
    t.check(y && eight.count(canonical_key(dual(y->matroid))) == 1,
            [] { return std::string("Y8* missing"); });
    const auto* m86 = cat->find_name("M86");
    t.check(m86 && m86->size() == 8, [] { return std::string("M86 missing"); });
    int none = 0;
    for (const auto& rec : cat->records()) {
      t.check(rec.case_tag != CaseTag::kNone, [&] { return rec.id + " is in no case"; });
      none += rec.case_tag == CaseTag::kNone;
    }
    t.check(cat->closed_under_duality(), [] { return std::string("not closed under duality"); });
    std::ostringstream os;
    os << "layers";
    for (int n = 5; n <= cat->max_size(); ++n) os << ' ' << n << ':' << cat->layer(n).size();
    os << ", no-case " << none;
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail(os.str());
  });
}

// 5. Fragility preservation under Δ and wheel gluing.
inline CheckResult check_fragility_preservation(const VerifyOptions& opt) {
  return detail::timed(5, "fragility preservation", 600, [&](CheckResult& r) {
    auto cat = cached_catalog(opt.catalog_size, opt.jobs);
    std::mt19937_64 rng(opt.seed);
    struct Site {
      const CatalogRecord* rec;
      ElementSet a;
    };
    std::vector<Site> segs;
    for (const auto& rec : cat->records()) {
      if (rec.size() > 9) continue;
      for (ElementSet a : detail::small_segments(rec.matroid)) {
        if (allowable_segment(rec.matroid, a)) segs.push_back({&rec, a});
      }
    }
    std::shuffle(segs.begin(), segs.end(), rng);
    if (static_cast<int>(segs.size()) > opt.samples) segs.resize(opt.samples);
    // Allowable triangles among the sampled segments double as gluing sites.
    std::vector<Site> tris;
    for (const Site& st : segs) {
      if (set_size(st.a) == 3) tris.push_back(st);
    }
    detail::Tally t;
    long long deltas = 0, glues = 0;
    for (const Site& st : segs) {
      const Matroid& m = st.rec->matroid;
      std::vector<ElementId> partners;
      for_each_element(st.a, [&](ElementId e) {
        if (has_minor(delete_element(m, e))) partners.push_back(e);
      });
      for (ElementSet pick = 0; pick < (ElementSet{1} << partners.size()); ++pick) {
        std::vector<ExtensionPair> ext;
        for (std::size_t i = 0; i < partners.size(); ++i) {
          if (pick >> i & 1) ext.push_back({partners[i], "p" + m.label(partners[i])});
        }
        const Matroid q = ext.empty() ? m : parallel_extend(m, ext);
        const ElementSet a = detail::moved(m, st.a, q);
        const Matroid d = delta_exchange(q, a);
        ++deltas;
        t.check(is_strictly_fragile(d) && is_cosegment(d, a) && allowable_cosegment(d, a), [&] {
          return st.rec->id + ": delta on " + detail::set_text(m, st.a) +
                 " with " + std::to_string(ext.size()) + " extensions breaks fragility";
        });
      }
    }
    for (const Site& st : tris) {
      const Matroid& m = st.rec->matroid;
      const auto e = elements_of(st.a);
      for (int rot = 0; rot < 3; ++rot) {
        const ElementId b = e[rot], a = e[(rot + 1) % 3], c = e[(rot + 2) % 3];
        if (has_minor(delete_element(m, b))) continue;  // rim must be non-deletable
        for (int rank = 3; rank <= 4; ++rank) {
          for (ElementSet extra : subsets_of(element_bit(a) | element_bit(c))) {
            GluingSpec spec{a, b, c, rank, element_bit(b) | extra, "w"};
            const Matroid g = glue_wheel(m, spec);
            if (!is_3connected(g)) continue;
            ++glues;
            // Fan order c, r2, s3, ..., r_r, a of the wheel, without X.
            std::vector<std::string> order{m.label(c)};
            for (int i = 1; i <= 2 * rank - 3; ++i) order.push_back("w" + std::to_string(i));
            order.push_back(m.label(a));
            std::vector<ElementId> f;
            std::vector<bool> spoke;
            for (std::size_t i = 0; i < order.size(); ++i) {
              if (auto id = g.find(order[i])) {
                f.push_back(*id);
                spoke.push_back(i % 2 == 0);
              }
            }
            bool ok = is_strictly_fragile(g);
            for (std::size_t i = 0; i + 2 < f.size(); ++i) {
              const ElementSet tri = element_bit(f[i]) | element_bit(f[i + 1]) | element_bit(f[i + 2]);
              ok = ok && (spoke[i] ? is_triangle(g, tri) : is_triad(g, tri));
            }
            for (std::size_t i = 0; i < f.size(); ++i) {
              ok = ok && (spoke[i] ? !has_minor(contract_element(g, f[i]))
                                   : !has_minor(delete_element(g, f[i])));
            }
            t.check(ok, [&] {
              return st.rec->id + ": gluing a " + std::to_string(rank) + "-wheel onto " +
                     detail::set_text(m, st.a) + " breaks the fan statement";
            });
          }
        }
      }
    }
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail(std::to_string(segs.size()) + " sampled pairs, " +
                        std::to_string(deltas) + " exchanges, " +
                        std::to_string(glues) + " 3-connected gluings");
  });
}

// 6. Main theorem at desk scale.
inline CheckResult check_main_theorem(const VerifyOptions& opt, bool forward_only = false) {
  const int cap = opt.theorem_size;
  return detail::timed(6, "main theorem, both directions, up to " + std::to_string(cap) + " elements",
                       7200, [&](CheckResult& r) {
    auto small = cached_catalog(9, opt.jobs);
    std::vector<Matroid> s_members, x_members;
    for (const char* n : {"M86", "X8", "Y8", "Y8*"}) {
      const auto* rec = small->find_name(n);
      if (!rec) throw NamingError(std::string(n) + " not named");
      s_members.push_back(rec->matroid);
      if (std::string(n) != "M86") x_members.push_back(rec->matroid);
    }
    const TargetFamily s_family(s_members), x_family(x_members);
    detail::Tally t;
    long long forward = 0, backward = 0;
    const auto& gens = generated_up_to(cap, opt.jobs);
    std::vector<const GeneratedMatroid*> connected;
    for (const auto& g : gens) {
      if (g.three_connected) connected.push_back(&g);
    }
    std::vector<std::string> failure(connected.size());
    parallel_for(connected.size(), opt.jobs, [&](std::size_t i) {
      const Matroid& m = connected[i]->matroid;
      std::string why;
      if (!is_strictly_fragile(m)) why = "not strictly fragile";
      else if (is_h5(m) != H5Status::kYes) why = "not H5";
      else if (!s_family.has_minor(m)) why = "no S-minor";
      else if (!path_width_le3(m).at_most_three) why = "path width above 3";
      if (!why.empty()) {
        std::string script = to_script(connected[i]->witness);
        std::replace(script.begin(), script.end(), '\n', ';');
        failure[i] = "output of " + script + " " + why;
      }
    });
    for (const auto& f : failure) {
      ++forward;
      t.check(f.empty(), [&] { return f; });
    }
    if (!forward_only) {
      auto cat = cached_catalog(cap, opt.jobs);
      for (const auto& rec : cat->records()) {
        if (rec.size() < 9 || !x_family.has_minor(rec.matroid)) continue;
        ++backward;
        auto w = describes(rec.matroid, opt.jobs);
        t.check(w && is_isomorphic(evaluate(*w), rec.matroid),
                [&] { return rec.id + " has no verified path-sequence witness"; });
      }
    }
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail(std::to_string(forward) + " 3-connected outputs, " +
                        std::to_string(backward) + " catalog records described, cap " +
                        std::to_string(cap));
  });
}

// 7. Blocking characterization and the clandco equivalence.
inline CheckResult check_blocking(const VerifyOptions& opt) {
  return detail::timed(7, "blocking characterization and closure duality", 300, [&](CheckResult& r) {
    auto cat = cached_catalog(opt.catalog_size, opt.jobs);
    detail::Tally t;
    std::vector<const CatalogRecord*> recs;
    for (const auto& rec : cat->records()) {
      if (rec.size() <= 9) recs.push_back(&rec);
    }
    long long seps = 0;
    for (const auto* rec : recs) {
      const Matroid& m = rec->matroid;
      for (ElementId x = 0; x < m.size(); ++x) {
        const ElementSet rest = m.ground() & ~element_bit(x);
        for (ElementSet a : subsets_of(rest)) {
          const ElementSet b = rest & ~a;
          const int lam = detail::lambda_without(m, x, a, b);
          const int k = lam + 1;
          if (k < 2 || k > 3 || set_size(a) < k || set_size(b) < k) continue;
          ++seps;
          t.check(blocks(m, x, a, b) == blocks_direct(m, x, a, b), [&] {
            return rec->id + ": blocking mismatch at x=" + m.label(x) + ", A=" + detail::set_text(m, a);
          });
        }
      }
    }
    std::mt19937_64 rng(opt.seed + 7);
    for (int i = 0; i < opt.partitions; ++i) {
      const Matroid& m = recs[rng() % recs.size()]->matroid;
      const ElementId e = static_cast<ElementId>(rng() % m.size());
      ElementSet x = 0;
      for (ElementId f = 0; f < m.size(); ++f) {
        if (f != e && (rng() & 1)) x |= element_bit(f);
      }
      const ElementSet y = m.ground() & ~x & ~element_bit(e);
      t.check(contains(closure(m, x), e) == !contains(coclosure(m, y), e),
              [&] { return std::string("closure duality fails"); });
    }
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail(std::to_string(seps) + " exact separations, " +
                        std::to_string(opt.partitions) + " random partitions");
  });
}

// 8. GF(5) representation counts.
inline CheckResult check_rep_counts(const VerifyOptions& opt) {
  return detail::timed(8, "GF(5) representation counts", 300, [&](CheckResult& r) {
    detail::Tally t;
    auto expect = [&](const Matroid& m, int want, const char* what) {
      const int got = count_representations(m, 5);
      t.check(got == want, [&] {
        return std::string(what) + " has " + std::to_string(got) + " classes";
      });
    };
    expect(uniform(2, 5), 6, "U25");
    expect(wheel(3), 1, "M(K4)");
    expect(uniform(2, 7), 0, "U27");
    auto cat = cached_catalog(std::max(8, opt.catalog_size), opt.jobs);
    std::mt19937_64 rng(opt.seed + 8);
    for (const auto* rec : cat->layer(8)) {
      const int base = count_representations(rec->matroid, 5);
      std::vector<int> perm(8);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      expect(permute(rec->matroid, perm), base, (rec->id + " relabeled").c_str());
      expect(dual(rec->matroid), base, (rec->id + " dual").c_str());
    }
    r.checks = t.checks();
    r.pass = t.pass();
    r.detail = t.detail("U25=6, M(K4)=1, U27=0, invariant on the 8-element layer");
  });
}

inline std::vector<CheckResult> run_suite(Suite s, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const bool all = s == Suite::kAll;
  if (all || s == Suite::kDeltaWye) out.push_back(check_theta_calculus(opt));
  if (all || s == Suite::kKernel) out.push_back(check_theta(opt));
  if (all || s == Suite::kKernel) out.push_back(check_x8(opt));
  if (all || s == Suite::kTheorem) out.push_back(check_catalog(opt));
  if (all || s == Suite::kDeltaWye) out.push_back(check_fragility_preservation(opt));
  if (all || s == Suite::kTheorem) out.push_back(check_main_theorem(opt));
  if (s == Suite::kPathseq) out.push_back(check_main_theorem(opt, true));
  if (all || s == Suite::kKernel) out.push_back(check_blocking(opt));
  if (all || s == Suite::kKernel) out.push_back(check_rep_counts(opt));
  return out;
}

inline std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os << "criterion=" << r.criterion << " result=" << (r.pass ? "PASS" : "FAIL")
     << " checks=" << r.checks << " seconds=" << std::fixed;
  os.precision(2);
  os << r.seconds << " budget=" << r.budget << " tolerance=exact title=\"" << r.title
     << "\" detail=\"" << r.detail << '"';
  return os.str();
}

}  // namespace fragilis
