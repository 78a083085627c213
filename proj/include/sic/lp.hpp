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

// Exact linear programming for problems of the form
//
//   maximize x[objective]  subject to  A x <= b,  x >= 0,
//
// with b >= 0, so that x = 0 is a feasible vertex. A floating-point solve
// (HiGHS by default, or the built-in simplex) proposes a primal point and
// dual multipliers; both are rounded to nearby rationals and certified in
// exact arithmetic (primal feasibility, dual feasibility, equal
// objectives). Without a certificate the built-in simplex finishes the job
// in exact arithmetic.
//
// The built-in solver is a primal active-set simplex: a vertex is described
// by d tight rows, whose inverse is kept densely and updated by rank-one
// corrections.

#ifndef SIC_LP_HPP_
#define SIC_LP_HPP_

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sic/values.hpp"

namespace sic {

struct SparseRow {
  std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
  Rational rhs;
};

struct InequalityLp {
  int num_vars = 0;
  int objective_var = 0;
  std::vector<SparseRow> rows;  // each row: sum coef * x <= rhs
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpEngine { kHighs, kBuiltin };

struct LpOptions {
  LpEngine engine = LpEngine::kHighs;
  long max_iterations = 500000;
  // Iterations between refactorizations of the double-precision inverse.
  int refactor_interval = 1000;
  // Skip the floating phase and run exact Bland pivoting from x = 0.
  bool exact_only = false;
};

enum class LpStatus { kOptimal, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  Rational objective;          // meaningless when unbounded
  std::vector<Rational> x;     // optimal vertex
  std::vector<Rational> duals; // one per row of the input, all >= 0
  long float_iterations = 0;
  long exact_iterations = 0;
  bool certified_from_float = false;
  LpEngine engine = LpEngine::kBuiltin;  // engine that proposed the answer
};

// Throws LpError when b has a negative entry or the iteration cap is hit.
LpSolution solve_lp(const InequalityLp& lp, const LpOptions& options = {});

// Best rational approximation with denominator at most max_den.
Rational rationalize(double v, long max_den);

}  // namespace sic

#endif  // SIC_LP_HPP_
