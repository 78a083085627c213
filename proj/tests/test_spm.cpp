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


#include <algorithm>
#include <chrono>
#include <map>

#include "doctest.h"
#include "sic/spm.hpp"
#include "support.hpp"

using sic::BoundValue;
using sic::LinearConstraint;
using sic::ProblemInstance;
using sic::Rational;
using sic::SpmLp;
using sic::SubsetMask;

namespace {

int g(std::initializer_list<int> s) { return SpmLp::g_var(SubsetMask::of(s)); }

// True when some equality row equals `terms` (= 0) up to sign.
bool has_equality(const SpmLp& lp, std::map<int, Rational> terms) {
  for (const LinearConstraint& c : lp.constraints) {
    if (c.sense != LinearConstraint::Sense::kEqual || c.rhs != 0) continue;
    std::map<int, Rational> mine(c.terms.begin(), c.terms.end());
    if (mine == terms) return true;
    for (auto& [v, coef] : mine) coef = -coef;
    if (mine == terms) return true;
  }
  return false;
}

sic::SpmResult solve(const ProblemInstance& p, sic::LpEngine engine,
                     bool exact_only = false) {
  sic::SpmOptions options;
  options.lp.engine = engine;
  options.lp.exact_only = exact_only;
  return sic::spm_symmetric(p, options);
}

}  // namespace

TEST_CASE("single message program") {
  const ProblemInstance p = sic::testing::from_text("n=1\n1|.|.\n");
  const SpmLp lp = sic::build_spm_lp(p);
  CHECK(lp.num_vars() == 3);
  CHECK(has_equality(lp, {{g({1}), 1}, {SpmLp::rate_var(), -1}}));
  const sic::SpmResult r = sic::spm_symmetric(p);
  CHECK(r.bound == BoundValue::finite(Rational(1)));
}

TEST_CASE("two-message broadcast") {
  const ProblemInstance p = sic::testing::from_text("n=2\n1|.|.\n2|.|.\n");
  const SpmLp lp = sic::build_spm_lp(p);
  CHECK(has_equality(lp, {{g({1, 2}), 1}, {g({2}), -1}, {SpmLp::rate_var(), -1}}));
  const sic::SpmResult r = sic::spm_symmetric(p);
  CHECK(r.bound == BoundValue::finite(Rational(1, 2)));
  REQUIRE(r.solution.has_value());
  CHECK(sic::satisfies(lp, *r.solution));
  CHECK(sic::spm_check_tuple(p, {Rational(1, 2), Rational(1, 2)}));
  CHECK_FALSE(sic::spm_check_tuple(p, {Rational(3, 4), Rational(3, 4)}));
}

TEST_CASE("toy instance security rows") {
  const ProblemInstance p = sic::testing::toy();
  const SpmLp lp = sic::build_spm_lp(p);
  CHECK(has_equality(lp, {{g({2, 3}), 1}, {g({3}), -1}}));
  CHECK(has_equality(lp, {{g({2, 3}), 1}, {g({2}), -1}}));
  const auto security = std::count_if(
      lp.constraints.begin(), lp.constraints.end(),
      [](const LinearConstraint& c) { return c.family == "security"; });
  // Two per party 1 and 2; the eavesdropper repeats party 1's rows.
  CHECK(security == 4);
  CHECK(sic::spm_symmetric(p).bound == BoundValue::finite(Rational(1, 2)));
}

TEST_CASE("zero tuple is always feasible") {
  std::mt19937_64 rng(1414);
  sic::testing::RandomShape shape;
  shape.max_n = 4;
  for (int trial = 0; trial < 30; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    CHECK(sic::spm_check_tuple(p, std::vector<Rational>(p.n(), Rational(0))));
  }
}

TEST_CASE("conflicting equalities force zero") {
  const ProblemInstance p = sic::parse_problem(
      sic::testing::read_data_file("conflict.sic"), sic::Notation::kSideInfo);
  const sic::SpmResult r = sic::spm_symmetric(p);
  CHECK(r.bound == BoundValue::finite(Rational(0)));
  CHECK(r.stats.forced_zero);
}

TEST_CASE("ten-message example optimum is 2/7") {
  const ProblemInstance p = sic::testing::example1();
  const auto start = std::chrono::steady_clock::now();
  const sic::SpmResult r = sic::spm_symmetric(p);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  CHECK(r.bound == BoundValue::finite(Rational(2, 7)));
  REQUIRE(r.solution.has_value());
  CHECK(sic::satisfies(sic::build_spm_lp(p), *r.solution));
  CHECK(sic::spm_check_tuple(p, std::vector<Rational>(10, Rational(2, 7))));
  MESSAGE("solve time " << seconds << " s");
}

TEST_CASE("export lists every row") {
  const ProblemInstance p = sic::testing::toy();
  const SpmLp lp = sic::build_spm_lp(p);
  const std::string text = sic::export_lp(lp);
  CHECK(text.rfind("max R\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) ==
        lp.constraints.size() + 1);
  CHECK(text.find("# security") != std::string::npos);
}

TEST_CASE("engines agree on random instances") {
  std::mt19937_64 rng(1515);
  sic::testing::RandomShape shape;
  shape.max_n = 4;
  shape.max_m = 5;
  for (int trial = 0; trial < 60; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    const sic::SpmResult a = solve(p, sic::LpEngine::kHighs);
    const sic::SpmResult b = solve(p, sic::LpEngine::kBuiltin);
    CHECK(a.bound == b.bound);
    if (p.n() <= 3) {
      CHECK(solve(p, sic::LpEngine::kBuiltin, true).bound == a.bound);
    }
    if (a.solution) CHECK(sic::satisfies(sic::build_spm_lp(p), *a.solution));
  }
}

TEST_CASE("guard on message count") {
  std::string text = "n=13\n";
  for (int i = 1; i <= 13; ++i) text += std::to_string(i) + "|.|.\n";
  CHECK_THROWS_AS(sic::build_spm_lp(sic::testing::from_text(text)),
                  sic::GuardExceeded);
}
