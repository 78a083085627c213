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
#include "sic/lower_bound.hpp"
#include "support.hpp"

using sic::BoundValue;
using sic::ProblemInstance;
using sic::Rational;
using sic::SubsetMask;

namespace {

// Longest ordering in which every message is prohibited for a party whose
// closure holds all earlier messages, found by trying every ordering.
int brute_k(const ProblemInstance& p) {
  const auto closures = sic::decoding_closures(p);
  int best = 0;
  for (sic::Mask s = 1; s < (sic::Mask{1} << p.n()); ++s) {
    std::vector<int> order = SubsetMask(s).members();
    if (static_cast<int>(order.size()) <= best) continue;
    do {
      SubsetMask prefix;
      bool ok = true;
      for (int i : order) {
        bool attested = false;
        for (int j = 0; j < p.m(); ++j) {
          if (p.party(j).prohibited.contains(i) &&
              prefix.is_subset_of(closures[j])) {
            attested = true;
          }
        }
        if (!attested) {
          ok = false;
          break;
        }
        prefix = prefix.with(i);
      }
      if (ok) {
        best = static_cast<int>(order.size());
        break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return best;
}

}  // namespace

TEST_CASE("closure follows decoders the party can run") {
  // Party 1 knows {1}, wants 2; party 2 knows {1,3} and so also decodes 2.
  const ProblemInstance p = sic::testing::from_text("n=4\n2|1|.\n4|1,3|.\n");
  CHECK(SubsetMask::of({1, 2, 3}).is_subset_of(sic::decoding_closure(p, 1)));
  CHECK(sic::decoding_closure(p, 0) == SubsetMask::of({1, 2}));
}

TEST_CASE("closure of a party that knows everything else") {
  const ProblemInstance p = sic::testing::from_text("n=3\n2|1,3|.\n");
  CHECK(sic::decoding_closure(p, 0) == p.all());
}

TEST_CASE("closure without usable decoders") {
  const ProblemInstance p = sic::testing::from_text("n=4\n1|3|.\n2|4|.\n");
  CHECK(sic::decoding_closure(p, 0) == SubsetMask::of({1, 3}));
  CHECK(sic::decoding_closure(p, 1) == SubsetMask::of({2, 4}));
}

TEST_CASE("no prohibitions: k = 0 and the bound is 1/n") {
  const ProblemInstance p =
      sic::testing::from_text("n=4\n1|.|.\n2|1|.\n3|4|.\n4|2|.\n");
  const sic::LowerBoundResult r = sic::chain_lower_bound(p);
  CHECK(r.k == 0);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.bound == BoundValue::finite(Rational(1, 4)));
}

TEST_CASE("eavesdropper barred from message 2") {
  const ProblemInstance p = sic::parse_problem(
      sic::testing::read_data_file("parity_eve.sic"), sic::Notation::kSideInfo);
  const sic::LowerBoundResult r = sic::chain_lower_bound(p);
  CHECK(r.k == 1);
  CHECK(r.closures[1].empty());
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->order == std::vector<int>{2});
  CHECK(r.witness->attesting_parties == std::vector<int>{2});
  CHECK(r.bound == BoundValue::finite(Rational(1)));
}

TEST_CASE("toy instance: chain 1, 2") {
  // Closures {1,4}, {2,3}, [4], {1,4}. Message 1 is barred for party 2,
  // then 2 for party 1, whose closure holds 1. No third step: only party 3
  // sees {1,2}, and it has no prohibitions.
  const sic::LowerBoundResult r = sic::chain_lower_bound(sic::testing::toy());
  CHECK(r.k == 2);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->order == std::vector<int>{1, 2});
  CHECK(r.witness->attesting_parties == std::vector<int>{2, 1});
  CHECK(r.bound == BoundValue::finite(Rational(1, 2)));
  CHECK(r.closures[2] == SubsetMask::full(4));
}

TEST_CASE("every message barred in turn") {
  const ProblemInstance p = sic::testing::from_text("n=1\n1|.|.\n.|.|1\n");
  const sic::LowerBoundResult r = sic::chain_lower_bound(p);
  CHECK(r.k == 1);
  CHECK(r.bound.kind() == BoundValue::Kind::kInfeasible);
}

TEST_CASE("leaking parties") {
  // The eavesdropper runs receiver 1's decoder and learns message 1.
  const ProblemInstance p = sic::testing::from_text("n=2\n1|2|.\n.|2|1\n");
  const sic::LowerBoundResult r = sic::chain_lower_bound(p);
  CHECK(r.leaking_parties == std::vector<int>{2});
}

TEST_CASE("maximum chain agrees with exhaustive orderings") {
  std::mt19937_64 rng(1616);
  sic::testing::RandomShape shape;
  shape.max_n = 5;
  for (int trial = 0; trial < 300; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    const sic::LowerBoundResult r = sic::chain_lower_bound(p);
    CHECK(r.k == brute_k(p));
    if (r.witness) {
      CHECK(static_cast<int>(r.witness->order.size()) == r.k);
      CHECK(sic::verify_security_chain(p, r.closures, *r.witness));
    }
    for (int j = 0; j < p.m(); ++j) {
      const sic::Party& party = p.party(j);
      CHECK((party.side_info | party.wants).is_subset_of(r.closures[j]));
    }
  }
}
