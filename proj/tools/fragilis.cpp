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

// fragilis: batch front end for the catalog, Δ-Y operations, path
// sequences, representations and the verification suites.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fragilis/catalog.hpp"
#include "fragilis/gf_rep.hpp"
#include "fragilis/pathseq.hpp"
#include "fragilis/verify.hpp"

namespace {

using namespace fragilis;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string hex_bases(const Matroid& m) {
  std::ostringstream os;
  os << std::hex;
  for (std::size_t i = 0; i < m.bases().size(); ++i) {
    os << (i ? "," : "") << m.bases()[i];
  }
  return os.str();
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::string one_line(std::string script) {
  std::replace(script.begin(), script.end(), '\n', ';');
  if (!script.empty() && script.back() == ';') script.pop_back();
  return script;
}

Catalog read_catalog(const std::string& path, int jobs) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UsageError("cannot read " + path);
  return load(is, jobs);
}

const CatalogRecord& record_named(const Catalog& c, const std::string& name) {
  const CatalogRecord* r = c.find_name(name);
  if (!r) throw UsageError("no record named '" + name + "'");
  return *r;
}

void print_record(std::ostream& os, const CatalogRecord& r) {
  os << "id=" << r.id << " n=" << r.size() << " rank=" << r.rank()
     << " provisional=" << (r.provisional ? "true" : "false")
     << " strictly_fragile=" << (r.strictly_fragile ? "true" : "false")
     << " h5=" << (r.h5 ? "true" : "false")
     << " s_minor=" << (r.has_s_minor ? "true" : "false")
     << " case=" << to_string(r.case_tag) << " provenance=\"" << r.provenance << "\"\n";
}

int cmd_enumerate(int max_size, const std::string& out, int jobs) {
  if (max_size < 5 || max_size > 12) throw UsageError("--max-size must be 5..12");
  auto cat = cached_catalog(max_size, jobs);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw UsageError("cannot write " + out);
  save(*cat, os);
  for (int n = 5; n <= max_size; ++n) {
    std::cout << "layer=" << n << " records=" << cat->layer(n).size() << '\n';
  }
  std::cout << "records=" << cat->size() << " out=" << out << '\n';
  return 0;
}

int cmd_classify(const std::string& in, const std::string& name, int jobs) {
  Catalog c = read_catalog(in, jobs);
  int none = 0;
  for (const auto& r : c.records()) {
    if (!name.empty() && r.id != name) continue;
    print_record(std::cout, r);
    none += r.case_tag == CaseTag::kNone;
  }
  if (!name.empty()) record_named(c, name);
  std::cout << "unclassified=" << none << '\n';
  return none ? kExitFailure : 0;
}

int cmd_op(const std::string& in, const std::string& name, const std::string& apply,
           const std::string& set, int wheel_rank, const std::string& drop, int jobs) {
  Catalog c = read_catalog(in, jobs);
  const Matroid& m = record_named(c, name).matroid;
  const std::vector<std::string> labels = split_list(set);
  for (const auto& l : labels) {
    if (!m.find(l)) throw UsageError("unknown element '" + l + "'");
  }
  const ElementSet a = m.set_of(labels);
  Matroid out;
  try {
    if (apply == "delta") {
      out = delta_exchange(m, a);
    } else if (apply == "nabla") {
      out = nabla_exchange(m, a);
    } else {
      if (labels.size() != 3) throw UsageError("--set needs three elements a,b,c for glue");
      GluingSpec spec;
      spec.a = *m.find(labels[0]);
      spec.b = *m.find(labels[1]);
      spec.c = *m.find(labels[2]);
      spec.r = wheel_rank;
      const auto dropped = drop.empty() ? std::vector<std::string>{labels[1]} : split_list(drop);
      for (const auto& l : dropped) {
        if (!m.find(l)) throw UsageError("unknown element '" + l + "'");
      }
      spec.x = m.set_of(dropped);
      out = glue_wheel(m, spec);
    }
  } catch (const PreconditionError& e) {
    std::cout << "error=\"" << e.what() << "\"\n";
    return kExitFailure;
  }
  const CatalogRecord* hit = c.find(out);
  std::cout << "n=" << out.size() << " rank=" << out.rank()
            << " labels=" << join(out.labels())
            << " three_connected=" << (is_3connected(out) ? "true" : "false")
            << " strictly_fragile=" << (is_strictly_fragile(out) ? "true" : "false")
            << " catalog=" << (hit ? hit->id : "-") << '\n';
  std::cout << "bases=" << hex_bases(out) << '\n';
  return 0;
}

int cmd_pathseq_generate(int max_size, const std::string& out, int jobs) {
  if (max_size < 8 || max_size > 14) throw UsageError("--max-size must be 8..14");
  const auto& gens = generated_up_to(max_size, jobs);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw UsageError("cannot write " + out);
  int connected = 0;
  for (const auto& g : gens) {
    os << "# n=" << g.matroid.size() << " rank=" << g.matroid.rank()
       << " three_connected=" << (g.three_connected ? "true" : "false") << '\n';
    os << to_script(g.witness) << '\n';
    connected += g.three_connected;
  }
  std::cout << "matroids=" << gens.size() << " three_connected=" << connected
            << " out=" << out << '\n';
  return 0;
}

int cmd_pathseq_describe(const std::string& in, const std::string& name, int jobs) {
  Catalog c = read_catalog(in, jobs);
  const CatalogRecord& r = record_named(c, name);
  if (r.size() > 14) throw UsageError("describe is limited to 14 elements");
  auto w = describes(r.matroid, jobs);
  if (!w) {
    std::cout << "id=" << r.id << " described=false\n";
    return kExitFailure;
  }
  const bool verified = is_isomorphic(evaluate(*w), r.matroid);
  std::cout << "id=" << r.id << " described=true verified=" << (verified ? "true" : "false")
            << " steps=" << w->steps.size() << " witness=\"" << one_line(to_script(*w))
            << "\"\n";
  return verified ? 0 : kExitFailure;
}

int cmd_rep(const std::string& in, const std::string& name, int q, bool count_only, int jobs) {
  if (q != 2 && q != 3 && q != 5 && q != 7) throw UsageError("--field must be 2, 3, 5 or 7");
  Catalog c = read_catalog(in, jobs);
  const CatalogRecord& r = record_named(c, name);
  if (count_only) {
    std::cout << "id=" << r.id << " field=" << q
              << " count=" << count_representations(r.matroid, q) << '\n';
    return 0;
  }
  const auto reps = representations(r.matroid, q);
  std::cout << "id=" << r.id << " field=" << q << " count=" << reps.size() << '\n';
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::cout << "rep=" << i + 1 << " columns=";
    for (std::size_t j = 0; j < reps[i].columns.size(); ++j) {
      std::cout << (j ? ";" : "");
      for (int v : reps[i].columns[j]) std::cout << v;
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& suite, int max_size, int jobs) {
  VerifyOptions opt;
  opt.jobs = jobs;
  Suite s = Suite::kAll;
  if (suite == "kernel") s = Suite::kKernel;
  else if (suite == "deltawye") s = Suite::kDeltaWye;
  else if (suite == "pathseq") s = Suite::kPathseq;
  else if (suite == "theorem") s = Suite::kTheorem;
  if (max_size < 9 || max_size > 12) throw UsageError("--max-size must be 9..12");
  opt.catalog_size = 9;
  opt.theorem_size = max_size;
  bool ok = true;
  for (const auto& r : run_suite(s, opt)) {
    std::cout << format_result(r) << '\n';
    ok = ok && r.pass;
  }
  std::cout << "suite=" << suite << " result=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fragilis: strictly {U25,U35}-fragile Hydra-5 matroid workbench"};
  app.require_subcommand(1);
  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  int max_size = 9;
  std::string in, out, name, apply, set, drop, suite;
  int wheel_rank = 3, field = 5;
  bool count_only = false;

  auto* en = app.add_subcommand("enumerate", "build a catalog file");
  en->add_option("--max-size", max_size, "largest ground set")->required();
  en->add_option("--out", out, "output .fmc file")->required();

  auto* cl = app.add_subcommand("classify", "report the theorem case of each record");
  cl->add_option("--in", in, "catalog file")->required();
  cl->add_option("--name", name, "single record");

  auto* op = app.add_subcommand("op", "apply delta, nabla or a wheel gluing to a record");
  op->add_option("--in", in, "catalog file")->required();
  op->add_option("--name", name, "record")->required();
  op->add_option("--apply", apply, "operation")
      ->required()
      ->check(CLI::IsMember({"delta", "nabla", "glue"}));
  op->add_option("--set", set, "element labels")->required();
  op->add_option("--wheel", wheel_rank, "wheel rank for glue")->check(CLI::Range(3, 10));
  op->add_option("--drop", drop, "labels deleted after gluing (default: the rim)");

  auto* ps = app.add_subcommand("pathseq", "path sequences");
  ps->require_subcommand(1);
  auto* gen = ps->add_subcommand("generate", "all described matroids up to a size");
  gen->add_option("--max-size", max_size, "largest ground set")->required();
  gen->add_option("--out", out, "output script file")->required();
  auto* desc = ps->add_subcommand("describe", "find a describing path sequence");
  desc->add_option("--in", in, "catalog file")->required();
  desc->add_option("--name", name, "record")->required();

  auto* rep = app.add_subcommand("rep", "GF(q) representations of a record");
  rep->add_option("--in", in, "catalog file")->required();
  rep->add_option("--name", name, "record")->required();
  rep->add_option("--field", field, "field size")->required();
  rep->add_flag("--count", count_only, "print only the number of classes");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "suite")
      ->required()
      ->check(CLI::IsMember({"kernel", "deltawye", "pathseq", "theorem"}));
  ver->add_option("--max-size", max_size, "largest ground set for the theorem suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*en) return cmd_enumerate(max_size, out, jobs);
    if (*cl) return cmd_classify(in, name, jobs);
    if (*op) return cmd_op(in, name, apply, set, wheel_rank, drop, jobs);
    if (*gen) return cmd_pathseq_generate(max_size, out, jobs);
    if (*desc) return cmd_pathseq_describe(in, name, jobs);
    if (*rep) return cmd_rep(in, name, field, count_only, jobs);
    if (*ver) return cmd_verify(suite, max_size, jobs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
