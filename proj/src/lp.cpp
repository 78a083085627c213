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

#include "sic/lp.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "Highs.h"

namespace sic {
namespace {

template <typename T>
struct Arith;

template <>
struct Arith<double> {
  static constexpr double kTol = 1e-9;
  static bool negative(double v) { return v < -kTol; }
  static bool positive(double v) { return v > kTol; }
  static bool zero(double v) { return std::abs(v) <= kTol; }
  static bool exactly_zero(double v) { return v == 0.0; }
  static double from(const Rational& q) { return q.get_d(); }
};

template <>
struct Arith<Rational> {
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool zero(const Rational& v) { return sgn(v) == 0; }
  static bool exactly_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational from(const Rational& q) { return q; }
};

enum class Outcome { kOptimal, kUnbounded };

// Rows 0..m-1 come from the caller; row m + k is the bound -x_k <= 0.
template <typename T>
class Simplex {
 public:
  using A = Arith<T>;

  Simplex(const InequalityLp& lp, const LpOptions& options)
      : d_(lp.num_vars),
        m_(static_cast<int>(lp.rows.size())),
        obj_(lp.objective_var),
        options_(options) {
    rows_.reserve(m_ + d_);
    rhs_.reserve(m_ + d_);
    for (const SparseRow& r : lp.rows) {
      std::vector<std::pair<int, T>> terms;
      for (const auto& [v, c] : r.terms) {
        if (sgn(c) != 0) terms.emplace_back(v, A::from(c));
      }
      rows_.push_back(std::move(terms));
      rhs_.push_back(A::from(r.rhs));
    }
    for (int k = 0; k < d_; ++k) {
      rows_.push_back({{k, T(-1)}});
      rhs_.push_back(T(0));
    }
  }

  int total_rows() const { return m_ + d_; }

  // Shifts every input row outward by a distinct small amount so that the
  // origin and later vertices are nondegenerate. Bound rows stay put.
  void perturb_rhs() {
    original_rhs_ = rhs_;
    for (int r = 0; r < m_; ++r) {
      const double phase = std::fmod(0.6180339887498949 * (r + 1), 1.0);
      rhs_[r] += T(1e-7 * (1.0 + phase));
    }
  }

  // Returns false when the current basis is singular.
  bool restore_rhs() {
    if (!original_rhs_.empty()) rhs_ = original_rhs_;
    original_rhs_.clear();
    return refactor();
  }

  bool primal_feasible() const {
    for (int r = 0; r < total_rows(); ++r) {
      if (A::negative(slack_[r])) return false;
    }
    return true;
  }

  void start_at_origin() {
    basis_.resize(d_);
    pos_.assign(total_rows(), -1);
    binv_.assign(static_cast<std::size_t>(d_) * d_, T(0));
    for (int k = 0; k < d_; ++k) {
      basis_[k] = m_ + k;
      pos_[m_ + k] = k;
      at(k, k) = T(-1);
    }
    x_.assign(d_, T(0));
    slack_ = rhs_;
  }

  // False when the rows are singular or the vertex is infeasible.
  bool start_at(const std::vector<int>& basis) {
    basis_ = basis;
    pos_.assign(total_rows(), -1);
    for (int k = 0; k < d_; ++k) pos_[basis_[k]] = k;
    if (!refactor()) return false;
    for (int r = 0; r < total_rows(); ++r) {
      if (A::negative(slack_[r])) return false;
    }
    return true;
  }

  Outcome run(bool bland_only) {
    int degenerate_run = 0;
    std::vector<T> col(d_), alpha(total_rows()), w(d_);
    while (true) {
      if (iterations_ >= options_.max_iterations) {
        throw LpError("simplex iteration cap exceeded");
      }
      const bool bland = bland_only || degenerate_run > 50;

      // Leaving row: a basic row with negative dual.
      int k_out = -1;
      for (int k = 0; k < d_; ++k) {
        const T& u = at(obj_, k);
        if (!A::negative(u)) continue;
        if (k_out < 0) {
          k_out = k;
        } else if (bland ? basis_[k] < basis_[k_out] : u < at(obj_, k_out)) {
          k_out = k;
        }
      }
      if (k_out < 0) return Outcome::kOptimal;

      for (int j = 0; j < d_; ++j) col[j] = -at(j, k_out);

      // Ratio test over nonbasic rows.
      for (int r = 0; r < total_rows(); ++r) {
        T a(0);
        for (const auto& [v, c] : rows_[r]) a += c * col[v];
        alpha[r] = a;
      }
      const int q = choose_blocking_row(alpha, bland);
      if (q < 0) return Outcome::kUnbounded;

      T t = slack_[q] / alpha[q];
      if (A::negative(t) || A::zero(t)) t = T(0);
      degenerate_run = A::zero(t) ? degenerate_run + 1 : 0;
      if (!A::zero(t)) {
        for (int j = 0; j < d_; ++j) x_[j] += t * col[j];
        for (int r = 0; r < total_rows(); ++r) slack_[r] -= t * alpha[r];
      }
      slack_[q] = T(0);

      // Replace row basis_[k_out] by q in the inverse.
      for (int j = 0; j < d_; ++j) w[j] = T(0);
      for (const auto& [v, c] : rows_[q]) {
        for (int j = 0; j < d_; ++j) w[j] += c * at(v, j);
      }
      const T piv = w[k_out];
      w[k_out] -= T(1);
      for (int j = 0; j < d_; ++j) w[j] /= piv;
      std::vector<T> ck(d_);
      for (int i = 0; i < d_; ++i) ck[i] = at(i, k_out);
      for (int i = 0; i < d_; ++i) {
        if (A::exactly_zero(ck[i])) continue;
        for (int j = 0; j < d_; ++j) {
          if (A::exactly_zero(w[j])) continue;
          at(i, j) -= ck[i] * w[j];
        }
      }
      pos_[basis_[k_out]] = -1;
      basis_[k_out] = q;
      pos_[q] = k_out;
      ++iterations_;
      if constexpr (std::is_same_v<T, double>) {
        if (iterations_ % options_.refactor_interval == 0 && !refactor()) {
          throw LpError("basis became numerically singular");
        }
      }
    }
  }

  // Blocking row for a step along the current direction, -1 if none.
  // Exact mode takes the smallest ratio, ties to the lowest row. Double
  // mode uses a two-pass test that prefers large pivots among rows whose
  // ratio is within the feasibility tolerance of the minimum.
  int choose_blocking_row(const std::vector<T>& alpha, bool bland) const {
    int q = -1;
    if constexpr (std::is_same_v<T, double>) {
      constexpr double kPivotTol = 1e-7;
      constexpr double kFeasTol = 1e-9;
      double bound = std::numeric_limits<double>::infinity();
      for (int r = 0; r < total_rows(); ++r) {
        if (pos_[r] >= 0 || alpha[r] <= kPivotTol) continue;
        bound = std::min(bound, (std::max(slack_[r], 0.0) + kFeasTol) / alpha[r]);
      }
      if (bound == std::numeric_limits<double>::infinity()) return -1;
      for (int r = 0; r < total_rows(); ++r) {
        if (pos_[r] >= 0 || alpha[r] <= kPivotTol) continue;
        if (std::max(slack_[r], 0.0) / alpha[r] > bound) continue;
        if (q < 0 || (!bland && alpha[r] > alpha[q])) q = r;
      }
    } else {
      T best(0);
      for (int r = 0; r < total_rows(); ++r) {
        if (pos_[r] >= 0 || sgn(alpha[r]) <= 0) continue;
        const T ratio = slack_[r] / alpha[r];
        if (q < 0 || ratio < best) {
          q = r;
          best = ratio;
        }
      }
    }
    return q;
  }

  const std::vector<int>& basis() const { return basis_; }
  const std::vector<T>& x() const { return x_; }
  T dual(int k) const { return at(obj_, k); }
  long iterations() const { return iterations_; }
  int num_vars() const { return d_; }
  int num_input_rows() const { return m_; }
  const T& rhs(int r) const { return rhs_[r]; }

 private:
  T& at(int i, int j) { return binv_[static_cast<std::size_t>(i) * d_ + j]; }
  const T& at(int i, int j) const {
    return binv_[static_cast<std::size_t>(i) * d_ + j];
  }

  // Recomputes the inverse by Gauss-Jordan, then x and every slack.
  bool refactor() {
    const std::size_t n = d_;
    std::vector<T> a(n * n, T(0));
    for (int k = 0; k < d_; ++k) {
      for (const auto& [v, c] : rows_[basis_[k]]) a[k * n + v] = c;
    }
    std::vector<T> inv(n * n, T(0));
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = T(1);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = n;
      if constexpr (std::is_same_v<T, double>) {
        double best = 1e-12;
        for (std::size_t r = col; r < n; ++r) {
          if (std::abs(a[r * n + col]) > best) {
            best = std::abs(a[r * n + col]);
            p = r;
          }
        }
      } else {
        for (std::size_t r = col; r < n && p == n; ++r) {
          if (sgn(a[r * n + col]) != 0) p = r;
        }
      }
      if (p == n) return false;
      if (p != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a[p * n + j], a[col * n + j]);
          std::swap(inv[p * n + j], inv[col * n + j]);
        }
      }
      const T pivot = a[col * n + col];
      for (std::size_t j = 0; j < n; ++j) {
        a[col * n + j] /= pivot;
        inv[col * n + j] /= pivot;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const T f = a[r * n + col];
        if (A::zero(f)) continue;
        for (std::size_t j = 0; j < n; ++j) {
          a[r * n + j] -= f * a[col * n + j];
          inv[r * n + j] -= f * inv[col * n + j];
        }
      }
    }
    // inv = A_basis^{-1}; rows of A_basis were placed in basis order.
    binv_ = std::move(inv);
    x_.assign(d_, T(0));
    for (int i = 0; i < d_; ++i) {
      T s(0);
      for (int k = 0; k < d_; ++k) s += at(i, k) * rhs_[basis_[k]];
      x_[i] = s;
    }
    slack_.assign(total_rows(), T(0));
    for (int r = 0; r < total_rows(); ++r) {
      T s = rhs_[r];
      for (const auto& [v, c] : rows_[r]) s -= c * x_[v];
      slack_[r] = s;
    }
    return true;
  }

  int d_;
  int m_;
  int obj_;
  LpOptions options_;
  std::vector<std::vector<std::pair<int, T>>> rows_;
  std::vector<T> rhs_;
  std::vector<T> original_rhs_;
  std::vector<int> basis_;
  std::vector<int> pos_;
  std::vector<T> binv_;
  std::vector<T> x_;
  std::vector<T> slack_;
  long iterations_ = 0;
};

Rational row_value(const SparseRow& row, const std::vector<Rational>& x) {
  Rational s(0);
  for (const auto& [v, c] : row.terms) s += c * x[v];
  return s;
}

// Exact optimality certificate for (x, duals on basis rows).
bool certify(const InequalityLp& lp, const std::vector<int>& basis,
             const std::vector<Rational>& x,
             const std::vector<Rational>& basis_duals) {
  const int m = static_cast<int>(lp.rows.size());
  for (const Rational& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (const SparseRow& row : lp.rows) {
    if (row_value(row, x) > row.rhs) return false;
  }
  std::vector<Rational> combo(lp.num_vars, Rational(0));
  Rational dual_objective(0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Rational& u = basis_duals[k];
    if (sgn(u) < 0) return false;
    if (sgn(u) == 0) continue;
    const int r = basis[k];
    if (r < m) {
      for (const auto& [v, c] : lp.rows[r].terms) combo[v] += u * c;
      dual_objective += u * lp.rows[r].rhs;
    } else {
      combo[r - m] -= u;
    }
  }
  for (int v = 0; v < lp.num_vars; ++v) {
    if (combo[v] != (v == lp.objective_var ? 1 : 0)) return false;
  }
  return dual_objective == x[lp.objective_var];
}

LpSolution finish(const InequalityLp& lp, const std::vector<int>& basis,
                  std::vector<Rational> x, const std::vector<Rational>& u) {
  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.objective = x[lp.objective_var];
  sol.x = std::move(x);
  sol.duals.assign(lp.rows.size(), Rational(0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k] < static_cast<int>(lp.rows.size())) sol.duals[basis[k]] = u[k];
  }
  return sol;
}

LpSolution solve_exact(const InequalityLp& lp, const LpOptions& options,
                       const std::vector<int>* warm_basis) {
  Simplex<Rational> exact(lp, options);
  if (!warm_basis || !exact.start_at(*warm_basis)) exact.start_at_origin();
  const Outcome outcome = exact.run(/*bland_only=*/true);
  LpSolution sol;
  if (outcome == Outcome::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
  } else {
    std::vector<Rational> u(lp.num_vars);
    for (int k = 0; k < lp.num_vars; ++k) u[k] = exact.dual(k);
    if (!certify(lp, exact.basis(), exact.x(), u)) {
      throw std::logic_error("exact simplex produced an uncertified vertex");
    }
    sol = finish(lp, exact.basis(), exact.x(), u);
  }
  sol.exact_iterations = exact.iterations();
  return sol;
}

// Weak-duality certificate with multipliers on every input row:
// y >= 0, A^T y >= e_obj and b^T y = x_obj.
bool certify_dual(const InequalityLp& lp, const std::vector<Rational>& x,
                  const std::vector<Rational>& y) {
  for (const Rational& v : x) {
    if (sgn(v) < 0) return false;
  }
  for (const SparseRow& row : lp.rows) {
    if (row_value(row, x) > row.rhs) return false;
  }
  std::vector<Rational> combo(lp.num_vars, Rational(0));
  Rational dual_objective(0);
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    if (sgn(y[r]) < 0) return false;
    if (sgn(y[r]) == 0) continue;
    for (const auto& [v, c] : lp.rows[r].terms) combo[v] += y[r] * c;
    dual_objective += y[r] * lp.rows[r].rhs;
  }
  for (int v = 0; v < lp.num_vars; ++v) {
    if (combo[v] < (v == lp.objective_var ? 1 : 0)) return false;
  }
  return dual_objective == x[lp.objective_var];
}

Rational round_value(double v) {
  constexpr long kMaxDen = 1000000;
  return std::abs(v) < 1e-10 ? Rational(0) : rationalize(v, kMaxDen);
}

// Empty when HiGHS fails or its rounded answer does not certify.
std::optional<LpSolution> solve_with_highs(const InequalityLp& lp,
                                           const LpOptions& options) {
  const int d = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  HighsLp model;
  model.num_col_ = d;
  model.num_row_ = m;
  model.sense_ = ObjSense::kMaximize;
  model.col_cost_.assign(d, 0.0);
  model.col_cost_[lp.objective_var] = 1.0;
  model.col_lower_.assign(d, 0.0);
  model.col_upper_.assign(d, kHighsInf);
  model.row_lower_.assign(m, -kHighsInf);
  model.row_upper_.resize(m);
  model.a_matrix_.format_ = MatrixFormat::kColwise;
  model.a_matrix_.num_col_ = d;
  model.a_matrix_.num_row_ = m;
  std::vector<std::vector<std::pair<int, double>>> columns(d);
  for (int r = 0; r < m; ++r) {
    model.row_upper_[r] = lp.rows[r].rhs.get_d();
    for (const auto& [v, c] : lp.rows[r].terms) columns[v].emplace_back(r, c.get_d());
  }
  model.a_matrix_.start_.assign(1, 0);
  for (const auto& column : columns) {
    for (const auto& [r, c] : column) {
      model.a_matrix_.index_.push_back(r);
      model.a_matrix_.value_.push_back(c);
    }
    model.a_matrix_.start_.push_back(
        static_cast<HighsInt>(model.a_matrix_.index_.size()));
  }

  Highs highs;
  highs.setOptionValue("output_flag", false);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("random_seed", 0);
  highs.setOptionValue("simplex_iteration_limit",
                       static_cast<HighsInt>(options.max_iterations));
  if (highs.passModel(std::move(model)) != HighsStatus::kOk) return std::nullopt;
  if (highs.run() == HighsStatus::kError) return std::nullopt;
  const HighsModelStatus status = highs.getModelStatus();
  const long iterations = highs.getInfo().simplex_iteration_count;
  if (status == HighsModelStatus::kUnbounded) {
    // Certify with a ray r >= 0, A r <= 0, r_obj > 0.
    bool has_ray = false;
    std::vector<double> ray(d);
    if (highs.getPrimalRay(has_ray, ray.data()) != HighsStatus::kOk || !has_ray) {
      return std::nullopt;
    }
    double scale = 0;
    for (double v : ray) scale = std::max(scale, std::abs(v));
    if (scale == 0) return std::nullopt;
    std::vector<Rational> r(d);
    for (int j = 0; j < d; ++j) r[j] = round_value(ray[j] / scale);
    if (sgn(r[lp.objective_var]) <= 0) return std::nullopt;
    for (const Rational& v : r) {
      if (sgn(v) < 0) return std::nullopt;
    }
    for (const SparseRow& row : lp.rows) {
      if (sgn(row_value(row, r)) > 0) return std::nullopt;
    }
    LpSolution sol;
    sol.status = LpStatus::kUnbounded;
    sol.float_iterations = iterations;
    sol.certified_from_float = true;
    sol.engine = LpEngine::kHighs;
    return sol;
  }
  if (status != HighsModelStatus::kOptimal) return std::nullopt;

  const HighsSolution& hs = highs.getSolution();
  std::vector<Rational> x(d), y(m);
  for (int j = 0; j < d; ++j) x[j] = round_value(hs.col_value[j]);
  for (int r = 0; r < m; ++r) y[r] = round_value(std::abs(hs.row_dual[r]));
  if (!certify_dual(lp, x, y)) return std::nullopt;

  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.objective = x[lp.objective_var];
  sol.x = std::move(x);
  sol.duals = std::move(y);
  sol.float_iterations = iterations;
  sol.certified_from_float = true;
  sol.engine = LpEngine::kHighs;
  return sol;
}

}  // namespace

Rational rationalize(double v, long max_den) {
  const bool neg = v < 0;
  const double target = std::abs(v);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double f = target;
  for (int i = 0; i < 64; ++i) {
    if (f > 1e15) break;
    const long a = static_cast<long>(std::floor(f));
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = f - static_cast<double>(a);
    if (frac < 1e-15) break;
    if (std::abs(target - static_cast<double>(p1) / q1) <
        1e-14 * std::max(1.0, target)) {
      break;
    }
    f = 1.0 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational r{mpz_class(p1), mpz_class(q1)};
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

LpSolution solve_lp(const InequalityLp& lp, const LpOptions& options) {
  for (const SparseRow& row : lp.rows) {
    if (sgn(row.rhs) < 0) throw LpError("right-hand side must be nonnegative");
  }
  if (options.exact_only) return solve_exact(lp, options, nullptr);
  if (options.engine == LpEngine::kHighs) {
    if (auto sol = solve_with_highs(lp, options)) return *sol;
  }

  Simplex<double> approx(lp, options);
  approx.perturb_rhs();
  approx.start_at_origin();
  Outcome outcome;
  try {
    outcome = approx.run(/*bland_only=*/false);
    if (outcome == Outcome::kOptimal) {
      if (!approx.restore_rhs()) throw LpError("singular final basis");
      // The unperturbed vertex may need a few more pivots.
      if (approx.primal_feasible()) outcome = approx.run(/*bland_only=*/false);
    }
  } catch (const LpError&) {
    LpSolution sol = solve_exact(lp, options, nullptr);
    sol.float_iterations = approx.iterations();
    return sol;
  }

  if (outcome == Outcome::kOptimal) {
    std::vector<Rational> x(lp.num_vars), u(lp.num_vars);
    for (int j = 0; j < lp.num_vars; ++j) x[j] = round_value(approx.x()[j]);
    for (int k = 0; k < lp.num_vars; ++k) u[k] = round_value(approx.dual(k));
    if (certify(lp, approx.basis(), x, u)) {
      LpSolution sol = finish(lp, approx.basis(), std::move(x), u);
      sol.float_iterations = approx.iterations();
      sol.certified_from_float = true;
      return sol;
    }
  }
  const std::vector<int> basis = approx.basis();
  LpSolution sol = solve_exact(lp, options, &basis);
  sol.float_iterations = approx.iterations();
  return sol;
}

}  // namespace sic
