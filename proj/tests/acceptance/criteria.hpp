// Copyright 2026 The oqsim Authors
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

#include <string>
#include <vector>

namespace oqsim::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Number of acceptance criteria.
inline constexpr int kCriteria = 10;

/// Runs one criterion (1-based). Exceptions are reported as failures.
CriterionResult run_criterion(int id);

/// One line per criterion: "PASS|FAIL <id> <name> (<seconds>s / <budget>s): <detail>".
std::string format_result(const CriterionResult& r);

/// Runs the selected criteria (all when empty), printing each line as it
/// finishes. Returns the number of failures.
int run_and_print(const std::vector<int>& ids);

}  // namespace oqsim::acceptance
