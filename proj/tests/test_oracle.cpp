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


#include <random>

#include "doctest.h"
#include "sic/oracle.hpp"
#include "support.hpp"

using sic::CodeRate;
using sic::CodeTable;
using sic::LogLinear;
using sic::Mask;
using sic::ProblemInstance;
using sic::Rational;
using sic::SubsetMask;

namespace {

CodeTable table(int n, int t, int M, std::vector<std::uint16_t> encode) {
  return CodeTable{n, t, M, std::move(encode)};
}

CodeTable parity_code() { return table(2, 1, 2, {0, 1, 1, 0}); }

// Bits of tuple u that belong to the messages in s.
Mask restrict(const CodeTable& c, Mask u, SubsetMask s) {
  Mask out = 0;
  for (int k : s.members()) out |= c.message_value(u, k) << ((k - 1) * c.t);
  return out;
}

// Decoding by pairs: tuples that agree on A but differ on W must not share
// a codeword.
bool brute_decodes(const CodeTable& c, const sic::Party& party) {
  for (Mask u = 0; u < c.num_tuples(); ++u) {
    for (Mask v = u + 1; v < c.num_tuples(); ++v) {
      if (c.encode[u] != c.encode[v]) continue;
      if (restrict(c, u, party.side_info) != restrict(c, v, party.side_info)) continue;
      if (restrict(c, u, party.wants) != restrict(c, v, party.wants)) return false;
    }
  }
  return true;
}

CodeTable random_table(std::mt19937_64& rng, int n, int t, int M) {
  std::uniform_int_distribution<int> pick(0, M - 1);
  CodeTable c{n, t, M, std::vector<std::uint16_t>(std::size_t{1} << (n * t))};
  for (auto& y : c.encode) y = static_cast<std::uint16_t>(pick(rng));
  return c;
}

}  // namespace

TEST_CASE("parity code decodes at both receivers") {
  const ProblemInstance p = sic::testing::from_text("n=2\n1|2|.\n2|1|.\n");
  const sic::CodeVerdict v = sic::check_code(p, parity_code());
  CHECK(v.surjective);
  CHECK(v.decoding_ok == std::vector<bool>{true, true});
  CHECK(v.security.empty());
  CHECK(v.valid());
  CHECK(v.rate.to_string() == "1/1");
}

TEST_CASE("parity code hides message 1 from an outsider") {
  const ProblemInstance p =
      sic::testing::from_text("n=2\n1|2|.\n2|1|.\n.|.|1\n");
  const sic::CodeVerdict v = sic::check_code(p, parity_code());
  REQUIRE(v.security.size() == 1);
  CHECK(v.security[0].party == 3);
  CHECK(v.security[0].message == 1);
  CHECK(v.security[0].ok);
  CHECK(v.valid());
  CHECK(sic::mutual_information(parity_code(), SubsetMask::of({1}), SubsetMask())
            .is_zero());
}

TEST_CASE("identity encoder leaks") {
  const ProblemInstance p = sic::testing::toy();
  CodeTable id{4, 1, 16, {}};
  for (std::uint16_t u = 0; u < 16; ++u) id.encode.push_back(u);
  const sic::CodeVerdict v = sic::check_code(p, id);
  CHECK(v.surjective);
  CHECK_FALSE(v.valid());
  for (const sic::SecurityVerdict& s : v.security) CHECK_FALSE(s.ok);
}

TEST_CASE("dimension checks") {
  const ProblemInstance p = sic::testing::from_text("n=2\n1|2|.\n");
  CHECK_THROWS_AS(sic::check_code(p, table(2, 1, 2, {0, 1, 1})),
                  sic::DimensionMismatch);
  CHECK_THROWS_AS(sic::check_code(p, table(3, 1, 2, std::vector<std::uint16_t>(8))),
                  sic::DimensionMismatch);
  CHECK_THROWS_AS(sic::check_code(p, table(2, 1, 2, {0, 1, 2, 0})),
                  sic::DimensionMismatch);
}

TEST_CASE("rates compare exactly") {
  CHECK(CodeRate{1, 2}.to_string() == "1/1");
  CHECK(CodeRate{2, 8}.to_string() == "2/3");
  CHECK(CodeRate{1, 3}.to_string() == "1/log2(3)");
  CHECK(CodeRate{2, 4} == CodeRate{1, 2});
  CHECK(CodeRate{1, 3} < CodeRate{1, 2});
  CHECK(CodeRate{2, 3} < CodeRate{3, 4});  // 2/1.585 = 1.26 < 1.5
  CHECK(CodeRate{2, 8}.exact() == Rational(2, 3));
  CHECK_FALSE(CodeRate{1, 3}.exact().has_value());
  CHECK(CodeRate{1, 3}.at_most(Rational(2, 3)));       // 0.631 <= 0.667
  CHECK_FALSE(CodeRate{1, 3}.at_most(Rational(5, 8)));  // 0.631 > 0.625
  CHECK(CodeRate{1, 2}.at_most(sic::BoundValue::plus_infinity()));
  CHECK_FALSE(CodeRate{1, 2}.at_most(sic::BoundValue::degenerate_zero()));
  CHECK_FALSE(CodeRate{1, 2}.at_most(sic::BoundValue::not_applicable()));
}

TEST_CASE("entropies of small tables") {
  const CodeTable skew = table(2, 1, 3, {0, 1, 2, 2});
  // Codeword weights 1/4, 1/4, 1/2.
  CHECK(sic::conditional_entropy(skew, SubsetMask()) ==
        LogLinear::rational(Rational(3, 2)));
  // Given x1, y takes two equally likely values.
  CHECK(sic::conditional_entropy(skew, SubsetMask::of({1})) ==
        LogLinear::rational(1));
  const CodeTable third = table(2, 1, 3, {0, 1, 2, 0});
  // Same weights; knowing x1 leaves one bit.
  CHECK(sic::mutual_information(third, SubsetMask::of({1}), SubsetMask()) ==
        LogLinear::rational(Rational(1, 2)));
  const auto g = sic::entropic_set_function(parity_code());
  CHECK(g[0].is_zero());
  CHECK(g[1] == LogLinear::rational(1));
  CHECK(g[3] == LogLinear::rational(1));
}

TEST_CASE("non-dyadic entropy") {
  // n = 1, t = 2: three codewords with weights 2, 1, 1.
  const CodeTable c = table(1, 2, 3, {0, 0, 1, 2});
  CHECK(sic::conditional_entropy(c, SubsetMask()) ==
        LogLinear::rational(Rational(3, 2)));
  const CodeTable d = table(2, 1, 3, {0, 0, 0, 1});
  // 3/4 log(4/3) + 1/4 log 4 = 2 - 3/4 log2 3
  CHECK(sic::conditional_entropy(d, SubsetMask()) ==
        LogLinear::rational(2) - LogLinear::log2_of(3) * Rational(3, 4));
}

TEST_CASE("counting verdicts agree with pairs and entropies") {
  std::mt19937_64 rng(1818);
  sic::testing::RandomShape shape;
  shape.max_n = 3;
  shape.max_m = 4;
  for (int trial = 0; trial < 400; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    const int t = p.n() <= 2 ? 1 + static_cast<int>(rng() % 2) : 1;
    const int M = 2 + static_cast<int>(rng() % 3);
    const CodeTable c = random_table(rng, p.n(), t, M);
    const sic::CodeVerdict v = sic::check_code(p, c);
    for (int j = 0; j < p.m(); ++j) {
      const sic::Party& party = p.party(j);
      const bool by_entropy =
          sic::conditional_entropy(c, party.side_info) ==
          sic::conditional_entropy(c, party.side_info | party.wants) +
              sic::mutual_information(c, party.wants, party.side_info);
      CHECK(by_entropy);
      CHECK(v.decoding_ok[j] == brute_decodes(c, party));
    }
    for (const sic::SecurityVerdict& s : v.security) {
      const sic::Party& party = p.party(s.party - 1);
      const bool leak_free = sic::mutual_information(c, SubsetMask::singleton(s.message),
                                                     party.side_info)
                                 .is_zero();
      CHECK(s.ok == leak_free);
    }
  }
}

TEST_CASE("best rates on small instances") {
  SUBCASE("parity instance") {
    const ProblemInstance p = sic::parse_problem(
        sic::testing::read_data_file("parity.sic"), sic::Notation::kSideInfo);
    const sic::OracleResult r = sic::oracle_best_rate(p, {1, 4});
    REQUIRE(r.best.has_value());
    CHECK(*r.best == CodeRate{1, 2});
    CHECK(r.best->t == 1);
    CHECK(r.best->M == 2);
    REQUIRE(r.witness.has_value());
    CHECK(sic::check_code(p, *r.witness).valid());
  }
  SUBCASE("single message") {
    const ProblemInstance p = sic::testing::from_text("n=1\n1|.|.\n");
    const sic::OracleResult r = sic::oracle_best_rate(p, {2, 4});
    REQUIRE(r.best.has_value());
    CHECK(*r.best == CodeRate{2, 4});
    CHECK(sic::is_feasible_at(p, 2, 4));
    CHECK_FALSE(sic::is_feasible_at(p, 2, 1));
  }
  SUBCASE("conflicting instance") {
    const ProblemInstance p = sic::parse_problem(
        sic::testing::read_data_file("conflict.sic"), sic::Notation::kSideInfo);
    for (int M = 1; M <= 16; ++M) CHECK_FALSE(sic::is_feasible_at(p, 1, M));
    CHECK_FALSE(sic::oracle_best_rate(p, {1, 16}).best.has_value());
  }
}

TEST_CASE("guards") {
  const ProblemInstance p = sic::testing::toy();
  CHECK_THROWS_AS(sic::check_oracle_limits(p, 9, 99), sic::GuardExceeded);
  CHECK_THROWS_AS(sic::check_oracle_limits(p, 4, 4), sic::GuardExceeded);
  CHECK_THROWS_AS(sic::check_oracle_limits(p, 1, 17), sic::GuardExceeded);
  CHECK_NOTHROW(sic::check_oracle_limits(p, 3, 16));
}

TEST_CASE("enumeration yields only valid codes, for any thread count") {
  std::mt19937_64 rng(1919);
  sic::testing::RandomShape shape;
  shape.max_n = 3;
  shape.max_m = 4;
  for (int trial = 0; trial < 40; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng, shape);
    long seen = 0;
    sic::for_each_valid_code(p, 1, 3, [&](const CodeTable& c) {
      CHECK(sic::check_code(p, c).valid());
      CHECK(c.encode[0] == 0);
      return ++seen < 50;
    });
    sic::OracleOptions one{2, 4};
    one.max_t = p.n() <= 2 ? 2 : 1;
    sic::OracleOptions many = one;
    many.threads = 3;
    const sic::OracleResult a = sic::oracle_best_rate(p, one);
    const sic::OracleResult b = sic::oracle_best_rate(p, many);
    CHECK(a.best.has_value() == b.best.has_value());
    if (a.best && b.best) {
      CHECK(*a.best == *b.best);
      CHECK(a.best->t == b.best->t);
      CHECK(a.witness->encode == b.witness->encode);
    }
  }
}

TEST_CASE("table formatting") {
  CHECK(sic::format_code_table(parity_code()) ==
        "0 0 -> 0\n1 0 -> 1\n0 1 -> 1\n1 1 -> 0\n");
}
