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

#include "doctest.h"
#include "sic/smais.hpp"
#include "support.hpp"

using sic::AcyclicSolver;
using sic::BoundValue;
using sic::GPartition;
using sic::Mask;
using sic::ProblemInstance;
using sic::Rational;
using sic::SubsetMask;

namespace {

// Repeats the raw update over every (S, S') pair until nothing changes.
// More than gamma sweeps with a change means a positive cycle.
BoundValue brute_smais(const ProblemInstance& p) {
  const GPartition gp = GPartition::build(p);
  AcyclicSolver solver(p);
  std::vector<long> rho(gp.gamma(), 0);
  const Mask size = Mask{1} << p.n();
  for (Mask s = 0; s < size; ++s) {
    const int c = gp.cell_of(SubsetMask(s));
    rho[c] = std::max<long>(rho[c], solver.h_mais(SubsetMask(), SubsetMask(s)));
  }
  for (int sweep = 0; sweep <= gp.gamma() + 1; ++sweep) {
    bool changed = false;
    for (Mask s = 0; s < size; ++s) {
      const int l = gp.cell_of(SubsetMask(s));
      if (l == gp.residual_cell()) continue;
      for (Mask sp = s;; sp = (sp + 1) | s) {
        const int k = gp.cell_of(SubsetMask(sp));
        if (k != l && k != gp.residual_cell()) {
          const long cand = solver.h_mais(SubsetMask(s), SubsetMask(sp)) + rho[l];
          if (cand > rho[k]) {
            rho[k] = cand;
            changed = true;
          }
        }
        if (sp == size - 1) break;
      }
    }
    if (!changed) {
      const long top = *std::max_element(rho.begin(), rho.end());
      if (top == 0) return BoundValue::plus_infinity();
      return BoundValue::finite(Rational(1, top));
    }
  }
  return BoundValue::degenerate_zero();
}

sic::SMaisResult run(const ProblemInstance& p, bool reverse = false) {
  const GPartition gp = GPartition::build(p);
  AcyclicSolver solver(p);
  return sic::smais(gp, solver, {reverse});
}

}  // namespace

TEST_CASE("ten-message example gives 1/3") {
  const sic::SMaisResult r = run(sic::testing::example1());
  CHECK(r.bound == BoundValue::finite(Rational(1, 3)));
  CHECK_FALSE(r.diverged);
}

TEST_CASE("toy instance gives 1/2") {
  // rho reaches 2 on the cell of {1,2} ({1,2} - {2,4} - {1,2,4}); nothing
  // larger: h_mais({}, [4]) = 2 and every update adds 0.
  const sic::SMaisResult r = run(sic::testing::toy());
  CHECK(r.bound == BoundValue::finite(Rational(1, 2)));
}

TEST_CASE("non-secure instances reduce to the plain bound") {
  std::mt19937_64 rng(505);
  sic::testing::RandomShape shape;
  shape.secure = false;
  for (int trial = 0; trial < 100; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    AcyclicSolver solver(p);
    const sic::SMaisResult r = run(p);
    CHECK(r.bound == sic::mais_bound(solver));
    CHECK(r.rho.size() == 1);
  }
}

TEST_CASE("fixpoint matches naive sweeps and ignores edge order") {
  std::mt19937_64 rng(606);
  sic::testing::RandomShape shape;
  shape.max_n = 5;
  int diverged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    const sic::SMaisResult a = run(p);
    const sic::SMaisResult b = run(p, true);
    CHECK(a.bound == b.bound);
    CHECK(a.rho == b.rho);
    CHECK(a.bound == brute_smais(p));
    if (a.diverged) ++diverged;
    // Never above the plain bound.
    AcyclicSolver solver(p);
    CHECK(BoundValue::less_equal(a.bound, sic::mais_bound(solver)));
  }
  MESSAGE("diverged instances: " << diverged);
}

TEST_CASE("witness updates are consistent") {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 100; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng);
    const GPartition gp = GPartition::build(p);
    AcyclicSolver solver(p);
    const sic::SMaisResult r = sic::smais(gp, solver);
    if (r.diverged) continue;
    for (int k = 0; k < gp.gamma(); ++k) {
      if (gp.members(k).empty()) continue;  // residual cell may be empty
      CHECK(r.initial_rho[k].value() ==
            solver.h_mais(SubsetMask(), r.initial_argmax[k]));
      CHECK(gp.cell_of(r.initial_argmax[k]) == k);
      if (!r.witness[k]) {
        CHECK(r.rho[k] == r.initial_rho[k]);
        continue;
      }
      const sic::RhoUpdate& u = *r.witness[k];
      CHECK(u.from.is_subset_of(u.to));
      CHECK(gp.cell_of(u.from) == u.source_cell);
      CHECK(gp.cell_of(u.to) == k);
      CHECK(u.h == solver.h_mais(u.from, u.to));
      CHECK(r.rho[k].value() == u.h + r.rho[u.source_cell].value());
    }
  }
}
