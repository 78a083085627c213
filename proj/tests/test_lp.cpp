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


#include <optional>
#include <random>

#include "doctest.h"
#include "sic/lp.hpp"
#include "support.hpp"

using sic::InequalityLp;
using sic::LpEngine;
using sic::LpOptions;
using sic::LpStatus;
using sic::Rational;

namespace {

// Solves the square system rows * x = rhs exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t d = b.size();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && a[piv][col] == 0) ++piv;
    if (piv == d) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < d; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < d; ++r) b[r] /= a[r][r];
  return b;
}

// Maximum over all basic feasible points; the LP must be bounded.
Rational brute_optimum(const InequalityLp& lp) {
  const int d = lp.num_vars;
  // Constraint list: the rows, then -x_i <= 0.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const sic::SparseRow& r : lp.rows) {
    std::vector<Rational> dense(d, Rational(0));
    for (const auto& [v, c] : r.terms) dense[v] += c;
    rows.push_back(dense);
    rhs.push_back(r.rhs);
  }
  for (int i = 0; i < d; ++i) {
    std::vector<Rational> dense(d, Rational(0));
    dense[i] = -1;
    rows.push_back(dense);
    rhs.push_back(0);
  }
  const int total = static_cast<int>(rows.size());
  std::optional<Rational> best;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pick.size()) == d) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (int k : pick) {
        a.push_back(rows[k]);
        b.push_back(rhs[k]);
      }
      const auto x = solve_square(a, b);
      if (!x) return;
      for (int k = 0; k < total; ++k) {
        Rational lhs = 0;
        for (int i = 0; i < d; ++i) lhs += rows[k][i] * (*x)[i];
        if (lhs > rhs[k]) return;
      }
      const Rational obj = (*x)[lp.objective_var];
      if (!best || obj > *best) best = obj;
      return;
    }
    for (int k = from; k < total; ++k) {
      pick.push_back(k);
      self(self, k + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return *best;  // x = 0 is always a vertex
}

InequalityLp random_lp(std::mt19937_64& rng, bool bounded) {
  std::uniform_int_distribution<int> dims(1, 3), count(1, 4), coef(-3, 4),
      rhs(0, 6);
  InequalityLp lp;
  lp.num_vars = dims(rng);
  lp.objective_var = std::uniform_int_distribution<int>(0, lp.num_vars - 1)(rng);
  const int m = count(rng);
  for (int r = 0; r < m; ++r) {
    sic::SparseRow row;
    for (int v = 0; v < lp.num_vars; ++v) {
      const int c = coef(rng);
      if (c != 0) row.terms.emplace_back(v, Rational(c));
    }
    row.rhs = rhs(rng);
    lp.rows.push_back(row);
  }
  if (bounded) {
    sic::SparseRow cap;
    for (int v = 0; v < lp.num_vars; ++v) cap.terms.emplace_back(v, Rational(1));
    cap.rhs = 7;
    lp.rows.push_back(cap);
  }
  return lp;
}

// Exact weak-duality certificate for an optimal answer.
void check_certificate(const InequalityLp& lp, const sic::LpSolution& s) {
  REQUIRE(s.x.size() == static_cast<std::size_t>(lp.num_vars));
  REQUIRE(s.duals.size() == lp.rows.size());
  std::vector<Rational> combo(lp.num_vars, Rational(0));
  Rational dual_obj = 0;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    CHECK(s.duals[r] >= 0);
    Rational lhs = 0;
    for (const auto& [v, c] : lp.rows[r].terms) {
      lhs += c * s.x[v];
      combo[v] += c * s.duals[r];
    }
    CHECK(lhs <= lp.rows[r].rhs);
    dual_obj += s.duals[r] * lp.rows[r].rhs;
  }
  for (int v = 0; v < lp.num_vars; ++v) {
    CHECK(s.x[v] >= 0);
    CHECK(combo[v] >= (v == lp.objective_var ? 1 : 0));
  }
  CHECK(dual_obj == s.objective);
  CHECK(s.x[lp.objective_var] == s.objective);
}

}  // namespace

TEST_CASE("rationalize recovers simple fractions") {
  CHECK(sic::rationalize(0.5, 100) == Rational(1, 2));
  CHECK(sic::rationalize(2.0 / 7.0, 1000) == Rational(2, 7));
  CHECK(sic::rationalize(-1.0 / 3.0, 1000) == Rational(-1, 3));
  CHECK(sic::rationalize(3.0, 10) == Rational(3));
  CHECK(sic::rationalize(0.0, 10) == Rational(0));
}

TEST_CASE("small LP by hand") {
  // max x0 s.t. x0 + x1 <= 4, x0 - x1 <= 1  -> x0 = 5/2
  InequalityLp lp;
  lp.num_vars = 2;
  lp.rows.push_back({{{0, Rational(1)}, {1, Rational(1)}}, Rational(4)});
  lp.rows.push_back({{{0, Rational(1)}, {1, Rational(-1)}}, Rational(1)});
  for (LpEngine engine : {LpEngine::kHighs, LpEngine::kBuiltin}) {
    LpOptions options;
    options.engine = engine;
    const sic::LpSolution s = sic::solve_lp(lp, options);
    CHECK(s.status == LpStatus::kOptimal);
    CHECK(s.objective == Rational(5, 2));
    check_certificate(lp, s);
  }
  LpOptions exact;
  exact.exact_only = true;
  CHECK(sic::solve_lp(lp, exact).objective == Rational(5, 2));
}

TEST_CASE("unbounded and malformed programs") {
  InequalityLp lp;
  lp.num_vars = 2;
  lp.rows.push_back({{{0, Rational(1)}, {1, Rational(-1)}}, Rational(1)});
  for (bool exact_only : {false, true}) {
    for (LpEngine engine : {LpEngine::kHighs, LpEngine::kBuiltin}) {
      LpOptions options;
      options.engine = engine;
      options.exact_only = exact_only;
      CHECK(sic::solve_lp(lp, options).status == LpStatus::kUnbounded);
    }
  }
  lp.rows[0].rhs = -1;
  CHECK_THROWS_AS(sic::solve_lp(lp), sic::LpError);
}

TEST_CASE("engines agree with vertex enumeration") {
  std::mt19937_64 rng(1212);
  for (int trial = 0; trial < 300; ++trial) {
    const InequalityLp lp = random_lp(rng, true);
    const Rational expected = brute_optimum(lp);
    for (int mode = 0; mode < 3; ++mode) {
      LpOptions options;
      options.engine = mode == 0 ? LpEngine::kHighs : LpEngine::kBuiltin;
      options.exact_only = mode == 2;
      const sic::LpSolution s = sic::solve_lp(lp, options);
      REQUIRE(s.status == LpStatus::kOptimal);
      CHECK(s.objective == expected);
      check_certificate(lp, s);
    }
  }
}

TEST_CASE("engines agree on boundedness") {
  std::mt19937_64 rng(1313);
  int unbounded = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const InequalityLp lp = random_lp(rng, false);
    LpOptions exact;
    exact.exact_only = true;
    const sic::LpSolution a = sic::solve_lp(lp, exact);
    const sic::LpSolution b = sic::solve_lp(lp);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::kOptimal) {
      CHECK(a.objective == b.objective);
      check_certificate(lp, b);
    } else {
      ++unbounded;
    }
  }
  MESSAGE("unbounded programs: " << unbounded);
}
