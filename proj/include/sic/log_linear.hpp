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


// Exact values of the form sum_p c_p log2(p) over primes p with rational
// coefficients. Entropies of uniform-input deterministic maps live in this
// set, so equalities and inequalities between them can be decided without
// floating-point logarithms.

#ifndef SIC_LOG_LINEAR_HPP_
#define SIC_LOG_LINEAR_HPP_

#include <map>
#include <string>

#include "sic/values.hpp"

namespace sic {

class LogLinear {
 public:
  LogLinear() = default;
  // The rational number q (q log2 2).
  static LogLinear rational(const Rational& q);
  // log2(k) for k >= 1.
  static LogLinear log2_of(unsigned long k);

  LogLinear& operator+=(const LogLinear& other);
  LogLinear& operator-=(const LogLinear& other);
  LogLinear& operator*=(const Rational& scale);
  friend LogLinear operator+(LogLinear a, const LogLinear& b) { return a += b; }
  friend LogLinear operator-(LogLinear a, const LogLinear& b) { return a -= b; }
  friend LogLinear operator*(LogLinear a, const Rational& s) { return a *= s; }

  // -1, 0 or 1, decided exactly.
  int sign() const;
  bool is_zero() const { return coef_.empty(); }
  double approx() const;
  // e.g. "3/2 + -1/4 log2(3)".
  std::string to_string() const;

  friend bool operator==(const LogLinear&, const LogLinear&) = default;

 private:
  std::map<unsigned long, Rational> coef_;  // prime -> nonzero coefficient
};

inline bool operator<(const LogLinear& a, const LogLinear& b) {
  return (a - b).sign() < 0;
}
inline bool operator<=(const LogLinear& a, const LogLinear& b) {
  return (a - b).sign() <= 0;
}

}  // namespace sic

#endif  // SIC_LOG_LINEAR_HPP_
