// Copyright 2026 The sicbound Authors
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


// Runs the bounds on one instance and renders the results.

#ifndef SIC_REPORT_HPP_
#define SIC_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sic/chain.hpp"
#include "sic/problem.hpp"
#include "sic/spm.hpp"

namespace sic {

// Report order, which is also the expected order of the values, largest
// first.
enum class BoundKind { kMais, kSmais, kSbac, kSpm, kLower };

std::string bound_name(BoundKind kind);
// Comma-separated names; throws std::invalid_argument on unknown or
// repeated names. The result follows report order.
std::vector<BoundKind> parse_bound_list(std::string_view csv);
std::vector<BoundKind> all_bounds();

struct BoundEntry {
  BoundKind kind;
  BoundValue value = BoundValue::not_applicable();
  std::string witness;           // one-line summary
  nlohmann::ordered_json detail;  // structured witness
  double seconds = 0;            // wall time, text output only
};

struct ReportOptions {
  std::vector<BoundKind> bounds = all_bounds();
  int threads = 1;
  SbacOptions sbac;
  SpmOptions spm;
};

struct BoundReport {
  ProblemInstance instance;
  std::vector<BoundEntry> entries;  // report order
  std::vector<std::string> notes;
};

BoundReport compute_bounds(const ProblemInstance& instance,
                           const ReportOptions& options = {});

// Pairs of upper bounds that break mais >= smais >= sbac >= spm. Only
// numeric values (finite or degenerate zero) are compared.
std::vector<std::string> ordering_violations(const BoundReport& report);

// Reasons the report proves that no valid code exists: an upper bound of
// zero, a lower bound above an upper bound (the lower bound assumes some
// valid code), or a prohibited chain over all messages.
std::vector<std::string> infeasibility_evidence(const BoundReport& report);

// Deterministic: no timings.
nlohmann::ordered_json report_to_json(const BoundReport& report);
std::string report_to_text(const BoundReport& report, bool decimal = false);

}  // namespace sic

#endif  // SIC_REPORT_HPP_
