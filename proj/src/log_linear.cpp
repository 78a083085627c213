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


#include "sic/log_linear.hpp"

#include <cmath>
#include <stdexcept>

namespace sic {

LogLinear LogLinear::rational(const Rational& q) {
  LogLinear v;
  if (sgn(q) != 0) v.coef_[2] = q;
  return v;
}

LogLinear LogLinear::log2_of(unsigned long k) {
  if (k == 0) throw std::domain_error("log2 of zero");
  LogLinear v;
  for (unsigned long p = 2; p * p <= k; ++p) {
    while (k % p == 0) {
      v.coef_[p] += 1;
      k /= p;
    }
  }
  if (k > 1) v.coef_[k] += 1;
  return v;
}

LogLinear& LogLinear::operator+=(const LogLinear& other) {
  for (const auto& [p, c] : other.coef_) {
    Rational& mine = coef_[p];
    mine += c;
    if (sgn(mine) == 0) coef_.erase(p);
  }
  return *this;
}

LogLinear& LogLinear::operator-=(const LogLinear& other) {
  for (const auto& [p, c] : other.coef_) {
    Rational& mine = coef_[p];
    mine -= c;
    if (sgn(mine) == 0) coef_.erase(p);
  }
  return *this;
}

LogLinear& LogLinear::operator*=(const Rational& scale) {
  if (sgn(scale) == 0) {
    coef_.clear();
    return *this;
  }
  for (auto& entry : coef_) entry.second *= scale;
  return *this;
}

double LogLinear::approx() const {
  double s = 0;
  for (const auto& [p, c] : coef_) {
    s += c.get_d() * std::log2(static_cast<double>(p));
  }
  return s;
}

int LogLinear::sign() const {
  if (coef_.empty()) return 0;
  if (coef_.size() == 1) return sgn(coef_.begin()->second);
  // The logs of distinct primes are linearly independent over Q, so the
  // value is nonzero here; the float estimate settles clear cases.
  double magnitude = 0;
  for (const auto& [p, c] : coef_) {
    magnitude += std::abs(c.get_d()) * std::log2(static_cast<double>(p));
  }
  const double estimate = approx();
  if (std::abs(estimate) > 1e-9 * magnitude) return estimate > 0 ? 1 : -1;

  // Compare prod p^(c_p D) over positive and negative coefficients.
  mpz_class d = 1;
  for (const auto& entry : coef_) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), entry.second.get_den_mpz_t());
  }
  mpz_class pos = 1, neg = 1;
  for (const auto& [p, c] : coef_) {
    const mpz_class e = c.get_num() * (d / c.get_den());
    mpz_class power;
    const mpz_class magnitude_e = abs(e);
    if (!magnitude_e.fits_ulong_p()) throw std::overflow_error("log exponent");
    mpz_ui_pow_ui(power.get_mpz_t(), p, magnitude_e.get_ui());
    (sgn(e) > 0 ? pos : neg) *= power;
  }
  return pos > neg ? 1 : -1;
}

std::string LogLinear::to_string() const {
  if (coef_.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : coef_) {
    if (!out.empty()) out += " + ";
    out += format_rational(c);
    if (p != 2) out += " log2(" + std::to_string(p) + ")";
  }
  return out;
}

}  // namespace sic
