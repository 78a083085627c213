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


#include "doctest.h"
#include "sic/problem.hpp"
#include "support.hpp"

using sic::Notation;
using sic::ParseError;
using sic::ProblemInstance;
using sic::SubsetMask;

TEST_CASE("toy instance parses in A-form") {
  const ProblemInstance p = sic::testing::toy();
  REQUIRE(p.n() == 4);
  REQUIRE(p.m() == 4);
  CHECK(p.party(0).wants == SubsetMask::of({1}));
  CHECK(p.party(0).side_info == SubsetMask::of({4}));
  CHECK(p.party(0).prohibited == SubsetMask::of({2, 3}));
  CHECK(p.party(1).side_info == SubsetMask::of({3}));
  CHECK(p.party(1).prohibited == SubsetMask::of({1, 4}));
  CHECK(p.party(2).wants == SubsetMask::of({3, 4}));
  CHECK(p.party(2).prohibited.empty());
  CHECK(p.party(3).is_eavesdropper());
  CHECK(p.party(3).prohibited == SubsetMask::of({2, 3}));
  CHECK(p.validate().empty());
}

TEST_CASE("semicolons separate statements") {
  const ProblemInstance p = sic::parse_problem(
      "n=4; 1|4|2,3 ; 2|3|1,4 ; 3,4|1,2|. ; .|1,4|2,3", Notation::kSideInfo);
  CHECK(p == sic::testing::toy());
}

TEST_CASE("single receiver") {
  const ProblemInstance p = sic::testing::from_text("n=1\n1|.|.\n");
  CHECK(p.party(0).interfering.empty());
  CHECK(p.has_receiver());
  CHECK_FALSE(p.is_secure());
}

TEST_CASE("B-form derives side information") {
  const ProblemInstance p = sic::testing::example1();
  REQUIRE(p.n() == 10);
  REQUIRE(p.m() == 10);
  CHECK(p.party(9).side_info == SubsetMask::of({2, 4, 5, 7, 8, 9}));
  CHECK(p.party(9).interfering == SubsetMask::of({1, 3, 6}));
  CHECK(p.party(9).prohibited == SubsetMask::of({1, 6}));
  CHECK(p.party(6).interfering == SubsetMask::of({1, 2, 6}));
}

TEST_CASE("A-form and B-form files describe the same example") {
  const ProblemInstance a = sic::parse_problem(
      sic::testing::read_data_file("example1.sic"), Notation::kSideInfo);
  CHECK(a == sic::testing::example1());
}

TEST_CASE("derive_interfering") {
  CHECK(sic::derive_interfering(SubsetMask::of({1}), SubsetMask::of({4}), 4) ==
        SubsetMask::of({2, 3}));
  CHECK(sic::derive_interfering(SubsetMask::of({3, 4}), SubsetMask::of({1, 2}),
                                4)
            .empty());
  CHECK(sic::derive_interfering(SubsetMask::of({10}),
                                SubsetMask::of({2, 4, 5, 7, 8, 9}), 10) ==
        SubsetMask::of({1, 3, 6}));
}

TEST_CASE("validation reports rule violations") {
  SUBCASE("wants overlap side information") {
    ProblemInstance p(2, {{SubsetMask::of({1}), SubsetMask::of({1}), {}}});
    const auto v = p.validate();
    REQUIRE(v.size() == 1);
    CHECK(v[0].party == 1);
    CHECK(v[0].message == "W∩A≠∅ at party 1");
  }
  SUBCASE("prohibited message already known") {
    ProblemInstance p(3, {{SubsetMask::of({1}), {}, {}},
                          {SubsetMask::of({1}), SubsetMask::of({2}),
                           SubsetMask::of({2})}});
    const auto v = p.validate();
    REQUIRE(v.size() == 1);
    CHECK(v[0].party == 2);
    CHECK(v[0].message == "P⊄B at party 2");
  }
  SUBCASE("toy instance is clean") { CHECK(sic::testing::toy().is_valid()); }
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_AS(sic::parse_problem("n=2\n1|3|.\n", Notation::kSideInfo),
                  ParseError);
  CHECK_THROWS_AS(sic::parse_problem("n=2\n1|2\n", Notation::kSideInfo),
                  ParseError);
  CHECK_THROWS_AS(sic::parse_problem("1|2|.\n", Notation::kSideInfo),
                  ParseError);
  try {
    sic::parse_problem("n=2\n1|2|.\n1|x|.\n", Notation::kSideInfo);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(sic::parse_problem("n=2\n1|1|.\n", Notation::kSideInfo),
                  sic::InvalidInstance);
}

TEST_CASE("text and JSON round trips") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng);
    REQUIRE(p.is_valid());
    const std::string text = sic::serialize_problem(p);
    CHECK(sic::parse_problem(text, Notation::kSideInfo) == p);
    const auto doc = sic::problem_to_json(p);
    CHECK(sic::problem_from_json(nlohmann::json::parse(doc.dump())) == p);
  }
}

TEST_CASE("interfering sets partition the complement of wants") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng);
    for (const sic::Party& party : p.parties()) {
      CHECK((party.wants | party.side_info | party.interfering) == p.all());
      CHECK_FALSE(party.wants.intersects(party.side_info));
      CHECK_FALSE(party.interfering.intersects(party.side_info | party.wants));
      CHECK(party.prohibited.is_subset_of(party.interfering));
    }
  }
}
