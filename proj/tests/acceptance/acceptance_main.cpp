// Copyright 2026 The fock-toeplitz Authors
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

// Prints one PASS/FAIL line per acceptance criterion. Exit status 0 iff all
// criteria pass. Usage: fock_acceptance [seed]

#include <cstdio>
#include <cstdlib>

#include "acceptance/suite.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
  const auto report = fock::acceptance::run_suite({}, seed);
  for (const auto& r : report.criteria) std::printf("%s\n", fock::acceptance::format_line(r).c_str());
  std::fflush(stdout);
  return report.all_pass() ? EXIT_SUCCESS : EXIT_FAILURE;
}
