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
#include <optional>

#include "doctest.h"
#include "sic/chain.hpp"
#include "support.hpp"

using sic::AcyclicSolver;
using sic::BoundValue;
using sic::ChainHeights;
using sic::ExtendedInt;
using sic::GPartition;
using sic::Mask;
using sic::ProblemInstance;
using sic::Rational;
using sic::SubsetMask;

namespace {

struct Fixture {
  explicit Fixture(ProblemInstance p)
      : instance(std::move(p)),
        gp(GPartition::build(instance)),
        solver(instance),
        heights(gp, solver) {}
  ProblemInstance instance;
  GPartition gp;
  AcyclicSolver solver;
  ChainHeights heights;
};

// Bellman-Ford longest path over the explicit lattice graph: an edge for
// every strict superset (weight h_mais) and every distinct same-cell set
// (weight 0).
std::vector<ExtendedInt> brute_heights(const Fixture& f) {
  const int n = f.instance.n();
  const Mask size = Mask{1} << n;
  std::vector<ExtendedInt> out(size);
  for (Mask start = 0; start < size; ++start) {
    std::vector<long> best(size, -1);
    best[start] = 0;
    bool changed = true;
    Mask rounds = 0;
    while (changed && rounds <= size) {
      changed = false;
      ++rounds;
      for (Mask a = 0; a < size; ++a) {
        if (best[a] < 0) continue;
        for (Mask b = 0; b < size; ++b) {
          if (a == b) continue;
          long w = -1;
          if ((a & ~b) == 0) {
            w = f.solver.h_mais(SubsetMask(a), SubsetMask(b));
          } else if (f.gp.same_cell(SubsetMask(a), SubsetMask(b))) {
            w = 0;
          }
          if (w >= 0 && best[a] + w > best[b]) {
            best[b] = best[a] + w;
            changed = true;
          }
        }
      }
    }
    if (changed) {
      out[start] = ExtendedInt::infinity();
    } else {
      out[start] = ExtendedInt(*std::max_element(best.begin(), best.end()));
    }
  }
  return out;
}

bool terminal_ok(const Fixture& f, int a, int b) {
  const SubsetMask pair = SubsetMask::of({a, b});
  if (!f.gp.in_gsubset(pair)) return false;
  for (SubsetMask s : f.gp.members(f.gp.cell_of(pair))) {
    if (f.solver.h_mais(SubsetMask(), s) >= 2) return true;
  }
  return false;
}

// Tightest bound over every sequence of distinct messages with requested
// interior messages and a qualifying terminal pair.
std::optional<BoundValue> brute_sbac(const Fixture& f,
                                     const std::vector<ExtendedInt>& h) {
  const int n = f.instance.n();
  const SubsetMask requested = f.instance.requested();
  std::optional<Rational> best;
  bool degenerate = false;
  std::vector<int> seq;
  auto visit = [&](auto&& self) -> void {
    const int m = static_cast<int>(seq.size()) - 1;
    if (m >= 1 && terminal_ok(f, seq.front(), seq.back())) {
      ExtendedInt sum(0);
      for (int j = 0; j < m; ++j) {
        sum = sum + h[SubsetMask::of({seq[j], seq[j + 1]}).bits()];
      }
      if (sum.is_infinite()) {
        degenerate = true;
      } else {
        Rational v(m, 1 + m + sum.value());
        v.canonicalize();
        if (!best || v < *best) best = v;
      }
    }
    for (int i = 1; i <= n; ++i) {
      if (std::find(seq.begin(), seq.end(), i) != seq.end()) continue;
      // seq.back() becomes interior once i is appended.
      if (seq.size() >= 2 && !requested.contains(seq.back())) continue;
      seq.push_back(i);
      self(self);
      seq.pop_back();
    }
  };
  visit(visit);
  if (degenerate) return BoundValue::degenerate_zero();
  if (!best) return std::nullopt;
  return BoundValue::finite(*best);
}

}  // namespace

TEST_CASE("h_pair") {
  Fixture f(sic::testing::example1());
  CHECK(sic::h_pair(f.solver, SubsetMask::of({1, 2}), SubsetMask::of({2, 3})) == 0);
  CHECK(sic::h_pair(f.solver, SubsetMask::of({2, 3}), SubsetMask::of({2, 3, 4})) ==
        1);
  CHECK(sic::h_pair(f.solver, SubsetMask::of({4, 5}), SubsetMask::of({4, 5})) == 0);
}

TEST_CASE("ten-message example heights") {
  Fixture f(sic::testing::example1());
  SUBCASE("{1,2}") {
    const sic::ChainHeight h = f.heights.height(SubsetMask::of({1, 2}));
    CHECK(h.value == ExtendedInt(2));
    CHECK(sic::verify_chain_height(f.gp, f.solver, h));
    // The realizing route found by hand: {1,2} - {1,6} in {1,6,8} in {1,6,8,9}.
    const sic::ChainHeight by_hand{
        ExtendedInt(2),
        SubsetMask::of({1, 2}),
        {{sic::ChainStep::Relation::kSameCell, SubsetMask::of({1, 6}), 0},
         {sic::ChainStep::Relation::kSubset, SubsetMask::of({1, 6, 8}), 1},
         {sic::ChainStep::Relation::kSubset, SubsetMask::of({1, 6, 8, 9}), 1}}};
    CHECK(sic::verify_chain_height(f.gp, f.solver, by_hand));
  }
  SUBCASE("{2,3}") {
    const sic::ChainHeight h = f.heights.height(SubsetMask::of({2, 3}));
    CHECK(h.value == ExtendedInt(2));
    CHECK(sic::verify_chain_height(f.gp, f.solver, h));
    const sic::ChainHeight by_hand{
        ExtendedInt(2),
        SubsetMask::of({2, 3}),
        {{sic::ChainStep::Relation::kSubset, SubsetMask::of({2, 3, 4}), 1},
         {sic::ChainStep::Relation::kSubset, SubsetMask::of({2, 3, 4, 5}), 1}}};
    CHECK(sic::verify_chain_height(f.gp, f.solver, by_hand));
  }
}

TEST_CASE("full set has height zero without g-subsets") {
  Fixture f(sic::testing::from_text("n=3\n1|.|.\n2|1|.\n3|.|.\n"));
  CHECK(f.heights.value(f.instance.all()) == ExtendedInt(0));
}

TEST_CASE("ten-message example chain bound is 2/7") {
  Fixture f(sic::testing::example1());
  const sic::SbacResult r = sic::sbac(f.gp, f.solver, f.heights);
  CHECK(r.bound == BoundValue::finite(Rational(2, 7)));
  REQUIRE(r.best.has_value());
  CHECK(r.best->messages == std::vector<int>{1, 2, 3});
  CHECK(r.best->edge_heights == std::vector<ExtendedInt>{ExtendedInt(2), ExtendedInt(2)});
  CHECK(r.best->terminal_witness == SubsetMask::of({3, 6}));
  CHECK(f.solver.h_mais(SubsetMask(), SubsetMask::of({3, 6})) == 2);
  CHECK(sic::verify_secure_chain(f.gp, f.solver, f.heights, *r.best));
}

TEST_CASE("non-secure instances have no chain") {
  std::mt19937_64 rng(808);
  sic::testing::RandomShape shape;
  shape.secure = false;
  for (int trial = 0; trial < 50; ++trial) {
    Fixture f(sic::testing::random_instance(rng, shape));
    const sic::SbacResult r = sic::sbac(f.gp, f.solver, f.heights);
    CHECK(r.bound.kind() == BoundValue::Kind::kNotApplicable);
    CHECK_FALSE(r.best.has_value());
  }
}

TEST_CASE("chain bound formula") {
  CHECK(sic::chain_bound(1, ExtendedInt(0)) == BoundValue::finite(Rational(1, 2)));
  CHECK(sic::chain_bound(1, ExtendedInt(3)) == BoundValue::finite(Rational(1, 5)));
  CHECK(sic::chain_bound(2, ExtendedInt(1)) == BoundValue::finite(Rational(1, 2)));
  CHECK(sic::chain_bound(2, ExtendedInt(1)).value().get_den() == 2);
  CHECK(sic::chain_bound(2, ExtendedInt(4)) == BoundValue::finite(Rational(2, 7)));
  CHECK(sic::chain_bound(2, ExtendedInt::infinity()) == BoundValue::degenerate_zero());
}

TEST_CASE("toy instance: chain 1-2 with terminal {1,2}") {
  Fixture f(sic::testing::toy());
  const sic::SbacResult r = sic::sbac(f.gp, f.solver, f.heights);
  CHECK(r.bound == BoundValue::finite(Rational(1, 2)));
  REQUIRE(r.best.has_value());
  CHECK(r.best->messages == std::vector<int>{1, 2});
  CHECK(r.best->terminal_witness == SubsetMask::of({1, 2}));
}

TEST_CASE("heights match an explicit lattice search") {
  std::mt19937_64 rng(909);
  sic::testing::RandomShape shape;
  shape.max_n = 4;
  int infinite = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Fixture f(sic::testing::random_instance(rng, shape));
    const std::vector<ExtendedInt> brute = brute_heights(f);
    const Mask size = Mask{1} << f.instance.n();
    for (Mask s = 0; s < size; ++s) {
      const sic::ChainHeight h = f.heights.height(SubsetMask(s));
      CHECK(h.value == brute[s]);
      if (h.value.is_infinite()) {
        ++infinite;
      } else {
        CHECK(sic::verify_chain_height(f.gp, f.solver, h));
      }
    }
  }
  MESSAGE("infinite heights: " << infinite);
}

TEST_CASE("height properties") {
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 80; ++trial) {
    Fixture f(sic::testing::random_instance(rng));
    const Mask size = Mask{1} << f.instance.n();
    for (Mask s = 0; s < size; ++s) {
      const SubsetMask L(s);
      const ExtendedInt h = f.heights.value(L);
      for (Mask sp = s;; sp = (sp + 1) | s) {
        CHECK(h >= ExtendedInt(sic::h_pair(f.solver, L, SubsetMask(sp))));
        if (sp == size - 1) break;
      }
      if (f.gp.in_gsubset(L)) {
        for (SubsetMask other : f.gp.members(f.gp.cell_of(L))) {
          CHECK(f.heights.value(other) == h);
        }
      }
    }
  }
}

TEST_CASE("chain search matches exhaustive enumeration") {
  std::mt19937_64 rng(1111);
  sic::testing::RandomShape shape;
  shape.max_n = 5;
  int chains = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Fixture f(sic::testing::random_instance(rng, shape));
    std::vector<ExtendedInt> h(std::size_t{1} << f.instance.n());
    for (Mask s = 0; s < h.size(); ++s) h[s] = f.heights.value(SubsetMask(s));
    const std::optional<BoundValue> expected = brute_sbac(f, h);
    const sic::SbacResult r = sic::sbac(f.gp, f.solver, f.heights);
    if (!expected) {
      CHECK(r.bound.kind() == BoundValue::Kind::kNotApplicable);
      continue;
    }
    ++chains;
    INFO(sic::serialize_problem(f.instance));
    CHECK(r.bound == *expected);
    REQUIRE(r.best.has_value());
    CHECK(r.best->bound == r.bound);
    CHECK(sic::verify_secure_chain(f.gp, f.solver, f.heights, *r.best));
  }
  MESSAGE("instances with a chain: " << chains);
}
