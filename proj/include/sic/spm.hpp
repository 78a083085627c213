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

// Secure polymatroidal linear program.
//
// Variables are a rate scale R and one value g(S) per subset S. Message i
// carries rate w_i * R (w_i = 1 in symmetric mode). Constraints:
//
//   g({}) = 0,  g([n]) <= 1,
//   g(S) <= g(S u {i})                                (elemental monotone)
//   g(S u {i}) + g(S u {j}) >= g(S u {i,j}) + g(S)    (elemental submodular)
//   g(B_i) = g(B_i \ {j})            for j in P_i     (security)
//   g(W) = w(W) R,  g(B u W) - g(B) = w(W) R          (rate)
//
// the rate rows ranging over parties i, nonempty W in W_i and
// B in (B_i u W_i) \ W. The objective maximizes R.
//
// Before solving, the equality rows (all of the form g(S) - g(S') = c R)
// are eliminated with a union-find that tracks offsets in multiples of R.
// Two different offsets between the same pair force R = 0.

#ifndef SIC_SPM_HPP_
#define SIC_SPM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sic/lp.hpp"
#include "sic/problem.hpp"

namespace sic {

inline constexpr int kMaxSpmMessages = 12;

struct LinearConstraint {
  enum class Sense { kLessEqual, kEqual };
  std::vector<std::pair<int, Rational>> terms;  // sorted by variable
  Sense sense = Sense::kLessEqual;
  Rational rhs;
  std::string family;  // empty, total, monotone, submodular, security, rate
};

struct SpmLp {
  int n = 0;
  std::vector<LinearConstraint> constraints;

  // Variable 0 is R; variable 1 + S is g(S).
  static int rate_var() { return 0; }
  static int g_var(SubsetMask S) { return 1 + static_cast<int>(S.bits()); }
  int num_vars() const { return 1 + (1 << n); }
};

// weights: per-message multipliers of R, empty for all ones.
SpmLp build_spm_lp(const ProblemInstance& instance,
                   const std::vector<Rational>& weights = {});

struct SetFunctionSolution {
  Rational R;
  std::vector<Rational> g;  // indexed by subset mask
};

// Exact check of every constraint at (R, g).
bool satisfies(const SpmLp& lp, const SetFunctionSolution& solution);

struct SpmStats {
  int rows = 0;            // after deduplication
  int reduced_vars = 0;    // after eliminating equalities
  int reduced_rows = 0;
  long float_iterations = 0;
  long exact_iterations = 0;
  bool certified_from_float = false;
  bool forced_zero = false;  // inconsistent equalities pin R to 0
};

struct SpmResult {
  BoundValue bound = BoundValue::not_applicable();
  std::optional<SetFunctionSolution> solution;  // absent when unbounded
  SpmStats stats;
};

struct SpmOptions {
  LpOptions lp;
};

SpmResult spm_symmetric(const ProblemInstance& instance,
                        const SpmOptions& options = {});

// True iff the rate tuple (one nonnegative rate per message) satisfies the
// program for some g.
bool spm_check_tuple(const ProblemInstance& instance,
                     const std::vector<Rational>& rates,
                     const SpmOptions& options = {});

// "max R" followed by one constraint per line:
//   <coef> <var> <coef> <var> ... <= | = <rhs>   # family
// with variables named R and g{..}.
std::string export_lp(const SpmLp& lp);

}  // namespace sic

#endif  // SIC_SPM_HPP_
