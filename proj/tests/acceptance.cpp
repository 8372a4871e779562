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

// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <cstdlib>
#include <iostream>

#include "fragilis/verify.hpp"

int main(int argc, char** argv) {
  fragilis::VerifyOptions opt;
  if (argc > 1) opt.theorem_size = std::atoi(argv[1]);
  bool ok = true;
  for (const auto& r : fragilis::run_suite(fragilis::Suite::kAll, opt)) {
    std::cout << fragilis::format_result(r) << std::endl;
    ok = ok && r.pass;
  }
  std::cout << "acceptance=" << (ok ? "PASS" : "FAIL") << std::endl;
  return ok ? 0 : 1;
}
