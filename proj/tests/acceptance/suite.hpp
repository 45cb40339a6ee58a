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

// End-to-end acceptance checks shared by the acceptance binary and the
// `verify` subcommand of the command-line tool.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fock::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Note {
  std::string topic;
  std::string text;
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  std::vector<Note> notes;  // measured facts that are not pass/fail
  bool all_pass() const;
};

inline constexpr int kCriterionCount = 11;

/// Runs the selected criteria (all when `ids` is empty). Randomized checks
/// draw from `seed`.
SuiteReport run_suite(const std::vector<int>& ids, std::uint64_t seed);

/// "PASS"/"FAIL" line for one criterion.
std::string format_line(const CriterionResult& r);

}  // namespace fock::acceptance
