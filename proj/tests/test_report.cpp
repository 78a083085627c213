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


#include <cctype>

#include "doctest.h"
#include "sic/report.hpp"
#include "support.hpp"

using sic::BoundKind;
using sic::BoundValue;
using sic::ProblemInstance;
using sic::Rational;

namespace {

const sic::BoundEntry& entry(const sic::BoundReport& r, BoundKind kind) {
  for (const sic::BoundEntry& e : r.entries) {
    if (e.kind == kind) return e;
  }
  throw std::runtime_error("missing entry");
}

}  // namespace

TEST_CASE("bound lists") {
  CHECK(sic::parse_bound_list("spm,mais") ==
        std::vector<BoundKind>{BoundKind::kMais, BoundKind::kSpm});
  CHECK(sic::parse_bound_list("lower") == std::vector<BoundKind>{BoundKind::kLower});
  CHECK(sic::all_bounds().size() == 5);
  CHECK_THROWS_AS(sic::parse_bound_list("mais,mais"), std::invalid_argument);
  CHECK_THROWS_AS(sic::parse_bound_list("nope"), std::invalid_argument);
  CHECK_THROWS_AS(sic::parse_bound_list(""), std::invalid_argument);
}

TEST_CASE("toy report") {
  const sic::BoundReport r = sic::compute_bounds(sic::testing::toy());
  REQUIRE(r.entries.size() == 5);
  CHECK(entry(r, BoundKind::kMais).value == BoundValue::finite(Rational(1, 2)));
  CHECK(entry(r, BoundKind::kSmais).value == BoundValue::finite(Rational(1, 2)));
  CHECK(entry(r, BoundKind::kSbac).value == BoundValue::finite(Rational(1, 2)));
  CHECK(entry(r, BoundKind::kSpm).value == BoundValue::finite(Rational(1, 2)));
  CHECK(entry(r, BoundKind::kLower).value == BoundValue::finite(Rational(1, 2)));
  CHECK(sic::ordering_violations(r).empty());
  CHECK(sic::infeasibility_evidence(r).empty());
}

TEST_CASE("single bound") {
  sic::ReportOptions options;
  options.bounds = {BoundKind::kMais};
  const sic::BoundReport r = sic::compute_bounds(sic::testing::toy(), options);
  REQUIRE(r.entries.size() == 1);
  const std::string text = sic::report_to_text(r);
  CHECK(text.find("mais") != std::string::npos);
  CHECK(text.find("smais") == std::string::npos);
}

TEST_CASE("conflicting instance is reported as infeasible") {
  const ProblemInstance p = sic::parse_problem(
      sic::testing::read_data_file("conflict.sic"), sic::Notation::kSideInfo);
  const sic::BoundReport r = sic::compute_bounds(p);
  CHECK(sic::ordering_violations(r).empty());
  const auto evidence = sic::infeasibility_evidence(r);
  CHECK_FALSE(evidence.empty());
  CHECK(entry(r, BoundKind::kSpm).value == BoundValue::finite(Rational(0)));
  CHECK(entry(r, BoundKind::kSbac).value == BoundValue::degenerate_zero());
  const auto doc = sic::report_to_json(r);
  CHECK(doc["infeasibility_evidence"].size() == evidence.size());
}

TEST_CASE("guards turn into n/a") {
  std::string text = "n=13\n";
  for (int i = 1; i <= 13; ++i) text += std::to_string(i) + "|.|.\n";
  sic::ReportOptions options;
  options.bounds = {BoundKind::kMais, BoundKind::kSpm};
  const sic::BoundReport r = sic::compute_bounds(sic::testing::from_text(text), options);
  CHECK(entry(r, BoundKind::kMais).value == BoundValue::finite(Rational(1, 13)));
  CHECK(entry(r, BoundKind::kSpm).value.kind() == BoundValue::Kind::kNotApplicable);
  CHECK(entry(r, BoundKind::kSpm).witness.rfind("not computed", 0) == 0);
}

TEST_CASE("JSON echo round-trips and output is deterministic") {
  std::mt19937_64 rng(2020);
  sic::testing::RandomShape shape;
  shape.max_n = 5;
  for (int trial = 0; trial < 25; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    sic::ReportOptions one;
    sic::ReportOptions many;
    many.threads = 4;
    const std::string a = sic::report_to_json(sic::compute_bounds(p, one)).dump(2);
    const std::string b = sic::report_to_json(sic::compute_bounds(p, many)).dump(2);
    CHECK(a == b);
    const auto doc = nlohmann::json::parse(a);
    CHECK(sic::problem_from_json(doc["instance"]) == p);
    for (const auto& bound : doc["bounds"]) {
      const std::string v = bound["value"];
      if (std::isdigit(static_cast<unsigned char>(v[0]))) {
        CHECK(sic::format_rational(sic::parse_rational(v)) == v);
      }
    }
  }
}
