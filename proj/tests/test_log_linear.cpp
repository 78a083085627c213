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


#include <cmath>
#include <random>

#include "doctest.h"
#include "sic/log_linear.hpp"

using sic::LogLinear;
using sic::Rational;

TEST_CASE("logs of prime powers reduce to rationals") {
  CHECK(LogLinear::log2_of(8) == LogLinear::rational(3));
  CHECK(LogLinear::log2_of(1).is_zero());
  CHECK(LogLinear::log2_of(6) == LogLinear::log2_of(2) + LogLinear::log2_of(3));
  CHECK(LogLinear::log2_of(9) == LogLinear::log2_of(3) * Rational(2));
  CHECK((LogLinear::log2_of(12) - LogLinear::log2_of(3)) == LogLinear::rational(2));
}

TEST_CASE("signs against powers") {
  const LogLinear l3 = LogLinear::log2_of(3);
  CHECK((l3 - LogLinear::rational(Rational(3, 2))).sign() == 1);
  CHECK((l3 - LogLinear::rational(Rational(8, 5))).sign() == -1);
  // 3^12 = 531441 > 2^19 = 524288
  CHECK((l3 * Rational(12) - LogLinear::rational(19)).sign() == 1);
  // 3^41 < 2^65
  CHECK((l3 * Rational(41) - LogLinear::rational(65)).sign() == -1);
  // 3^665 > 2^1054, a gap of about 6e-5 bits
  CHECK((l3 * Rational(665) - LogLinear::rational(1054)).sign() == 1);
  // Mixed primes.
  const LogLinear mixed =
      LogLinear::log2_of(5) * Rational(3) - LogLinear::log2_of(3) * Rational(4) -
      LogLinear::rational(Rational(-11, 10));
  CHECK(mixed.sign() == (3 * std::log2(5.0) - 4 * std::log2(3.0) + 1.1 > 0 ? 1 : -1));
}

TEST_CASE("comparison operators") {
  const LogLinear a = LogLinear::log2_of(5);
  const LogLinear b = LogLinear::log2_of(3) + LogLinear::rational(Rational(1, 2));
  CHECK(b < a);  // 2.085 < 2.322
  CHECK(b <= a);
  CHECK(a <= a);
  CHECK_FALSE(a < a);
}

TEST_CASE("approximation and text") {
  const LogLinear v = LogLinear::rational(Rational(3, 2)) -
                      LogLinear::log2_of(3) * Rational(1, 4);
  CHECK(v.approx() == doctest::Approx(1.5 - 0.25 * std::log2(3.0)));
  CHECK(v.to_string() == "3/2 + -1/4 log2(3)");
  CHECK(LogLinear().to_string() == "0");
}

TEST_CASE("exact sign matches floating point away from zero") {
  std::mt19937_64 rng(1717);
  std::uniform_int_distribution<int> coef(-20, 20), arg(1, 60);
  for (int trial = 0; trial < 2000; ++trial) {
    LogLinear v;
    double approx = 0;
    for (int term = 0; term < 4; ++term) {
      const int c = coef(rng);
      const int k = arg(rng);
      v += LogLinear::log2_of(k) * Rational(c, 7);
      approx += c / 7.0 * std::log2(static_cast<double>(k));
    }
    CHECK(v.approx() == doctest::Approx(approx));
    if (std::abs(approx) > 1e-9) CHECK(v.sign() == (approx > 0 ? 1 : -1));
  }
}
