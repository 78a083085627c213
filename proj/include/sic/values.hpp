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

// Exact value types shared by every bound: GMP rationals, nonnegative
// integers extended with +infinity, and tagged bound values.

#ifndef SIC_VALUES_HPP_
#define SIC_VALUES_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sic {

using Rational = mpq_class;

// A computation would exceed a configured size or work limit.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Always "p/q" in lowest terms, including q = 1.
std::string format_rational(const Rational& q);
// Accepts "p/q" or "p"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);
double to_double(const Rational& q);

// Nonnegative integer or +infinity. Used for chain heights and rho values.
class ExtendedInt {
 public:
  constexpr ExtendedInt() = default;
  constexpr explicit ExtendedInt(std::int64_t v) : value_(v) {}
  static constexpr ExtendedInt infinity() {
    ExtendedInt e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr std::int64_t value() const {
    if (infinite_) throw std::logic_error("value() on infinite ExtendedInt");
    return value_;
  }

  friend constexpr ExtendedInt operator+(ExtendedInt a, ExtendedInt b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedInt(a.value_ + b.value_);
  }
  friend constexpr bool operator==(ExtendedInt a, ExtendedInt b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtendedInt a,
                                                    ExtendedInt b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    return infinite_ ? std::string("+inf") : std::to_string(value_);
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

// Value of a bound on the symmetric secure capacity.
class BoundValue {
 public:
  enum class Kind {
    kFinite,          // exact rational
    kPlusInfinity,    // nothing constrains the rate
    kDegenerateZero,  // a positive cycle forces the rate to zero
    kNotApplicable,   // the bound does not exist for this instance
    kInfeasible,      // the lower bound proves no positive-rate code exists
  };

  static BoundValue finite(Rational q) {
    q.canonicalize();
    return BoundValue(Kind::kFinite, std::move(q));
  }
  static BoundValue plus_infinity() { return BoundValue(Kind::kPlusInfinity, 0); }
  static BoundValue degenerate_zero() {
    return BoundValue(Kind::kDegenerateZero, 0);
  }
  static BoundValue not_applicable() {
    return BoundValue(Kind::kNotApplicable, 0);
  }
  static BoundValue infeasible() { return BoundValue(Kind::kInfeasible, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  // Finite values and degenerate zero carry a number.
  bool is_numeric() const {
    return kind_ == Kind::kFinite || kind_ == Kind::kDegenerateZero;
  }
  const Rational& value() const;

  // "p/q", "+inf", "degenerate-zero", "n/a" or "infeasible".
  std::string to_string() const;

  // Ordering on the extended reals for numeric values and +inf.
  // Returns false when either side is n/a or infeasible.
  static bool less_equal(const BoundValue& a, const BoundValue& b);

  friend bool operator==(const BoundValue& a, const BoundValue& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }

 private:
  BoundValue(Kind kind, Rational value) : kind_(kind), value_(std::move(value)) {}
  Kind kind_;
  Rational value_;
};

}  // namespace sic

#endif  // SIC_VALUES_HPP_
