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

#include "sic/values.hpp"

namespace sic {

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

const Rational& BoundValue::value() const {
  if (!is_numeric()) {
    throw std::logic_error("bound value " + to_string() + " has no number");
  }
  return value_;
}

std::string BoundValue::to_string() const {
  switch (kind_) {
    case Kind::kFinite:
      return format_rational(value_);
    case Kind::kPlusInfinity:
      return "+inf";
    case Kind::kDegenerateZero:
      return "degenerate-zero";
    case Kind::kNotApplicable:
      return "n/a";
    case Kind::kInfeasible:
      return "infeasible";
  }
  return "?";
}

bool BoundValue::less_equal(const BoundValue& a, const BoundValue& b) {
  const bool a_ok = a.is_numeric() || a.kind_ == Kind::kPlusInfinity;
  const bool b_ok = b.is_numeric() || b.kind_ == Kind::kPlusInfinity;
  if (!a_ok || !b_ok) return false;
  if (b.kind_ == Kind::kPlusInfinity) return true;
  if (a.kind_ == Kind::kPlusInfinity) return false;
  return a.value_ <= b.value_;
}

}  // namespace sic
