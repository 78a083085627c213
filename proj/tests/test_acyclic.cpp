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
#include "sic/acyclic.hpp"
#include "support.hpp"

using sic::AcyclicSolver;
using sic::BoundValue;
using sic::ProblemInstance;
using sic::Rational;
using sic::SubsetMask;

namespace {

// Definition applied to one ordering: each prefix must be covered by the
// unknown set of a party that wants the newest element.
bool ordering_ok(const ProblemInstance& p, SubsetMask base,
                 const std::vector<int>& order) {
  SubsetMask covered = base;
  for (int i : order) {
    covered = covered.with(i);
    bool attested = false;
    for (const sic::Party& party : p.parties()) {
      if (party.wants.contains(i) && covered.is_subset_of(party.unknown())) {
        attested = true;
      }
    }
    if (!attested) return false;
  }
  return true;
}

bool brute_acyclic(const ProblemInstance& p, SubsetMask K, SubsetMask base) {
  std::vector<int> order = K.members();
  do {
    if (ordering_ok(p, base, order)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

int brute_h_mais(const ProblemInstance& p, SubsetMask S, SubsetMask S_prime) {
  const SubsetMask free = S_prime - S;
  int best = 0;
  for (sic::Mask packed = 0; packed < (sic::Mask{1} << free.size()); ++packed) {
    const SubsetMask K(sic::deposit_bits(packed, free.bits()));
    if (K.size() > best && brute_acyclic(p, K, S)) best = K.size();
  }
  return best;
}

}  // namespace

TEST_CASE("example: {3,6} is acyclic only in the order 6, 3") {
  const ProblemInstance p = sic::testing::example1();
  AcyclicSolver solver(p);
  const auto w = solver.is_acyclic_wrt(SubsetMask::of({3, 6}), SubsetMask());
  REQUIRE(w.has_value());
  CHECK(w->order == std::vector<int>{6, 3});
  CHECK(w->attesting_parties == std::vector<int>{6, 3});
  CHECK(sic::verify_acyclic_witness(p, SubsetMask(), *w));
}

TEST_CASE("example: receivers 1 and 2 know everything else") {
  // B = {} for both, so neither unknown set covers {1, 2}.
  const ProblemInstance p = sic::testing::example1();
  AcyclicSolver solver(p);
  CHECK_FALSE(
      solver.is_acyclic_wrt(SubsetMask::of({1, 2}), SubsetMask()).has_value());
  CHECK(solver.h_mais(SubsetMask(), SubsetMask::of({1, 2})) == 1);
}

TEST_CASE("empty K has an empty witness") {
  const ProblemInstance p = sic::testing::toy();
  AcyclicSolver solver(p);
  const auto w = solver.is_acyclic_wrt(SubsetMask(), SubsetMask::of({2}));
  REQUIRE(w.has_value());
  CHECK(w->order.empty());
  CHECK(w->attesting_parties.empty());
}

TEST_CASE("h_mais values on the ten-message example") {
  const ProblemInstance p = sic::testing::example1();
  AcyclicSolver solver(p);
  CHECK(solver.h_mais(SubsetMask::of({2, 3}), SubsetMask::of({2, 3, 4})) == 1);
  CHECK(solver.h_mais(SubsetMask::of({1, 6}), SubsetMask::of({1, 6, 8})) == 1);
  CHECK(solver.h_mais(SubsetMask(), SubsetMask::of({3, 6})) == 2);
  for (SubsetMask s : {SubsetMask(), SubsetMask::of({1, 2}), p.all()}) {
    CHECK(solver.h_mais(s, s) == 0);
  }
}

TEST_CASE("preconditions are enforced") {
  const ProblemInstance p = sic::testing::toy();
  AcyclicSolver solver(p);
  CHECK_THROWS_AS(solver.h_mais(SubsetMask::of({1}), SubsetMask::of({2})),
                  sic::PreconditionError);
  CHECK_THROWS_AS(
      solver.is_acyclic_wrt(SubsetMask::of({1}), SubsetMask::of({1, 2})),
      sic::PreconditionError);
}

TEST_CASE("mais bound") {
  SUBCASE("two receivers without side information") {
    AcyclicSolver solver(sic::testing::from_text("n=2\n1|.|.\n2|.|.\n"));
    CHECK(sic::mais_bound(solver) == BoundValue::finite(Rational(1, 2)));
  }
  SUBCASE("each receiver knows the other message") {
    AcyclicSolver solver(sic::testing::from_text("n=2\n1|2|.\n2|1|.\n"));
    CHECK(sic::mais_bound(solver) == BoundValue::finite(Rational(1)));
  }
  SUBCASE("eavesdroppers only") {
    AcyclicSolver solver(sic::testing::from_text("n=2\n.|1|2\n.|.|1\n"));
    CHECK(sic::mais_bound(solver) == BoundValue::plus_infinity());
  }
}

TEST_CASE("acyclicity agrees with exhaustive orderings") {
  std::mt19937_64 rng(101);
  sic::testing::RandomShape shape;
  shape.max_n = 5;
  for (int trial = 0; trial < 60; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    AcyclicSolver solver(p);
    const sic::Mask size = sic::Mask{1} << p.n();
    for (sic::Mask s = 0; s < size; s += 3) {
      const SubsetMask S(s);
      for (sic::Mask k = 0; k < size; ++k) {
        const SubsetMask K(k);
        if (K.intersects(S)) continue;
        const auto w = solver.is_acyclic_wrt(K, S);
        CHECK(w.has_value() == brute_acyclic(p, K, S));
        if (w) CHECK(sic::verify_acyclic_witness(p, S, *w));
      }
    }
  }
}

TEST_CASE("h_mais agrees with exhaustive search and is monotone") {
  std::mt19937_64 rng(202);
  sic::testing::RandomShape shape;
  shape.max_n = 5;
  for (int trial = 0; trial < 40; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    AcyclicSolver solver(p);
    const sic::Mask size = sic::Mask{1} << p.n();
    for (sic::Mask s = 0; s < size; ++s) {
      for (sic::Mask sp = s;; sp = (sp + 1) | s) {
        const SubsetMask S(s), Sp(sp);
        const int h = solver.h_mais(S, Sp);
        CHECK(h == brute_h_mais(p, S, Sp));
        const auto best = solver.max_acyclic(S, Sp);
        CHECK(static_cast<int>(best.order.size()) == h);
        CHECK(sic::verify_acyclic_witness(p, S, best));
        // Growing S' cannot lower the value.
        for (int i : (p.all() - Sp).members()) {
          CHECK(solver.h_mais(S, Sp.with(i)) >= h);
        }
        if (sp == size - 1) break;
      }
    }
  }
}

TEST_CASE("superset enumeration matches h_mais") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 30; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng);
    AcyclicSolver solver(p);
    const SubsetMask S(static_cast<sic::Mask>(rng()) & p.all().bits());
    int visited = 0;
    solver.for_each_superset(S, [&](SubsetMask Sp, int h) {
      CHECK(S.is_subset_of(Sp));
      CHECK(h == solver.h_mais(S, Sp));
      ++visited;
    });
    CHECK(visited == (1 << (p.n() - S.size())));
  }
}
