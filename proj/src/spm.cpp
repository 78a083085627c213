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

#include "sic/spm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace sic {
namespace {

using Terms = std::vector<std::pair<int, Rational>>;

class LpBuilder {
 public:
  explicit LpBuilder(int n) { lp_.n = n; }

  void add(Terms terms, LinearConstraint::Sense sense, Rational rhs,
           const char* family) {
    std::map<int, Rational> merged;
    for (auto& [v, c] : terms) merged[v] += c;
    Terms clean;
    for (auto& [v, c] : merged) {
      if (sgn(c) != 0) clean.emplace_back(v, c);
    }
    auto key = std::make_tuple(clean, sense == LinearConstraint::Sense::kEqual,
                               rhs);
    if (!seen_.insert(std::move(key)).second) return;
    lp_.constraints.push_back({std::move(clean), sense, std::move(rhs), family});
  }

  SpmLp take() { return std::move(lp_); }

 private:
  SpmLp lp_;
  std::set<std::tuple<Terms, bool, Rational>> seen_;
};

int g(Mask s) { return SpmLp::g_var(SubsetMask(s)); }

void check_size(const ProblemInstance& instance) {
  if (instance.n() > kMaxSpmMessages) {
    throw GuardExceeded("the LP supports at most " +
                        std::to_string(kMaxSpmMessages) + " messages");
  }
}

}  // namespace

SpmLp build_spm_lp(const ProblemInstance& instance,
                   const std::vector<Rational>& weights) {
  check_size(instance);
  const int n = instance.n();
  if (!weights.empty() && static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("one weight per message required");
  }
  auto weight_of = [&](SubsetMask w) {
    if (weights.empty()) return Rational(w.size());
    Rational total(0);
    for (int i : w.members()) total += weights[i - 1];
    return total;
  };

  using Sense = LinearConstraint::Sense;
  LpBuilder b(n);
  const Mask full = SubsetMask::full(n).bits();
  b.add({{g(0), 1}}, Sense::kEqual, 0, "empty");
  b.add({{g(full), 1}}, Sense::kLessEqual, 1, "total");
  for (Mask s = 0; s <= full; ++s) {
    for (int i = 0; i < n; ++i) {
      const Mask bi = Mask{1} << i;
      if (s & bi) continue;
      b.add({{g(s), 1}, {g(s | bi), -1}}, Sense::kLessEqual, 0, "monotone");
    }
  }
  for (Mask s = 0; s <= full; ++s) {
    for (int i = 0; i < n; ++i) {
      const Mask bi = Mask{1} << i;
      if (s & bi) continue;
      for (int j = i + 1; j < n; ++j) {
        const Mask bj = Mask{1} << j;
        if (s & bj) continue;
        b.add({{g(s | bi | bj), 1}, {g(s), 1}, {g(s | bi), -1}, {g(s | bj), -1}},
              Sense::kLessEqual, 0, "submodular");
      }
    }
  }
  for (const Party& p : instance.parties()) {
    const Mask bset = p.interfering.bits();
    for (int j : p.prohibited.members()) {
      const Mask reduced = bset & ~(Mask{1} << (j - 1));
      b.add({{g(bset), 1}, {g(reduced), -1}}, Sense::kEqual, 0, "security");
    }
  }
  for (const Party& p : instance.parties()) {
    const Mask wi = p.wants.bits();
    const Mask unknown = p.unknown().bits();
    for (Mask w = wi; w != 0; w = (w - 1) & wi) {
      const Rational rate = weight_of(SubsetMask(w));
      b.add({{g(w), 1}, {SpmLp::rate_var(), -rate}}, Sense::kEqual, 0, "rate");
      const Mask room = unknown & ~w;
      for (Mask bs = room;; bs = (bs - 1) & room) {
        b.add({{g(bs | w), 1}, {g(bs), -1}, {SpmLp::rate_var(), -rate}},
              Sense::kEqual, 0, "rate");
        if (bs == 0) break;
      }
    }
  }
  return b.take();
}

bool satisfies(const SpmLp& lp, const SetFunctionSolution& solution) {
  if (static_cast<int>(solution.g.size()) != (1 << lp.n)) return false;
  for (const LinearConstraint& c : lp.constraints) {
    Rational lhs(0);
    for (const auto& [v, coef] : c.terms) {
      lhs += coef * (v == SpmLp::rate_var() ? solution.R : solution.g[v - 1]);
    }
    const bool ok = c.sense == LinearConstraint::Sense::kEqual ? lhs == c.rhs
                                                               : lhs <= c.rhs;
    if (!ok) return false;
  }
  return true;
}

namespace {

// g(S) = value(root(S)) + offset(S) * R, with the empty set's class pinned
// to zero.
class OffsetUnionFind {
 public:
  explicit OffsetUnionFind(std::size_t size)
      : parent_(size), offset_(size, Rational(0)) {
    for (std::size_t i = 0; i < size; ++i) parent_[i] = static_cast<Mask>(i);
  }

  std::pair<Mask, Rational> find(Mask x) {
    if (parent_[x] == x) return {x, Rational(0)};
    auto [root, off] = find(parent_[x]);
    parent_[x] = root;
    offset_[x] += off;
    return {root, offset_[x]};
  }

  // Records g(a) - g(b) = k R. Returns false on a conflicting offset.
  bool relate(Mask a, Mask b, const Rational& k) {
    auto [ra, oa] = find(a);
    auto [rb, ob] = find(b);
    // g(ra) - g(rb) = (k - oa + ob) R
    const Rational diff = k - oa + ob;
    if (ra == rb) return diff == 0;
    // The smaller mask stays root, so the empty set is always a root.
    if (ra < rb) {
      parent_[rb] = ra;
      offset_[rb] = -diff;
    } else {
      parent_[ra] = rb;
      offset_[ra] = diff;
    }
    return true;
  }

 private:
  std::vector<Mask> parent_;
  std::vector<Rational> offset_;
};

enum class TupleOutcome { kOptimal, kUnbounded };

struct ReducedSolve {
  TupleOutcome outcome = TupleOutcome::kOptimal;
  SetFunctionSolution solution;
  SpmStats stats;
};

ReducedSolve solve_reduced(const SpmLp& lp, const SpmOptions& options) {
  ReducedSolve out;
  out.stats.rows = static_cast<int>(lp.constraints.size());
  const std::size_t size = std::size_t{1} << lp.n;
  OffsetUnionFind uf(size);
  bool forced_zero = false;
  std::vector<const LinearConstraint*> inequalities;
  for (const LinearConstraint& c : lp.constraints) {
    if (c.sense == LinearConstraint::Sense::kLessEqual) {
      inequalities.push_back(&c);
      continue;
    }
    // Shapes: g(S) = 0 (S = {}), g(a) - g(b) = 0, g(a) - k R = 0,
    // g(a) - g(b) - k R = 0.
    int plus = -1, minus = -1;
    Rational k(0);
    for (const auto& [v, coef] : c.terms) {
      if (v == SpmLp::rate_var()) {
        k = -coef;
      } else if (coef == 1 && plus < 0) {
        plus = v - 1;
      } else if (coef == -1 && minus < 0) {
        minus = v - 1;
      } else {
        throw std::logic_error("unexpected equality shape in LP");
      }
    }
    if (sgn(c.rhs) != 0 || plus < 0) {
      throw std::logic_error("unexpected equality shape in LP");
    }
    if (minus < 0) minus = 0;  // relative to g({}) = 0
    if (!uf.relate(static_cast<Mask>(plus), static_cast<Mask>(minus), k)) {
      forced_zero = true;
    }
  }
  out.stats.forced_zero = forced_zero;

  // Reduced variables: R, then one per class other than the empty set's.
  std::vector<int> index(size, -1);
  int vars = 1;
  for (Mask s = 1; s < size; ++s) {
    if (uf.find(s).first == s) index[s] = vars++;
  }
  InequalityLp reduced;
  reduced.num_vars = vars;
  reduced.objective_var = 0;
  std::set<std::pair<Terms, Rational>> seen;
  auto push = [&](std::map<int, Rational>& acc, Rational rhs) {
    Terms terms;
    for (auto& [v, coef] : acc) {
      if (sgn(coef) != 0) terms.emplace_back(v, coef);
    }
    if (terms.empty()) {
      if (sgn(rhs) < 0) throw std::logic_error("LP presolve found 0 <= negative");
      return;
    }
    if (seen.insert({terms, rhs}).second) {
      reduced.rows.push_back({std::move(terms), std::move(rhs)});
    }
  };
  for (const LinearConstraint* c : inequalities) {
    std::map<int, Rational> acc;
    for (const auto& [v, coef] : c->terms) {
      if (v == SpmLp::rate_var()) {
        acc[0] += coef;
        continue;
      }
      auto [root, off] = uf.find(static_cast<Mask>(v - 1));
      if (root != 0) acc[index[root]] += coef;
      acc[0] += coef * off;
    }
    push(acc, c->rhs);
  }
  if (forced_zero) {
    std::map<int, Rational> acc{{0, Rational(1)}};
    push(acc, Rational(0));
  }
  out.stats.reduced_vars = reduced.num_vars;
  out.stats.reduced_rows = static_cast<int>(reduced.rows.size());

  bool rate_constrained = false;
  for (const SparseRow& row : reduced.rows) {
    for (const auto& [v, coef] : row.terms) {
      if (v == 0 && sgn(coef) != 0) rate_constrained = true;
    }
  }
  if (!rate_constrained) {
    out.outcome = TupleOutcome::kUnbounded;
    return out;
  }

  const LpSolution sol = solve_lp(reduced, options.lp);
  out.stats.float_iterations = sol.float_iterations;
  out.stats.exact_iterations = sol.exact_iterations;
  out.stats.certified_from_float = sol.certified_from_float;
  if (sol.status == LpStatus::kUnbounded) {
    out.outcome = TupleOutcome::kUnbounded;
    return out;
  }
  out.solution.R = sol.objective;
  out.solution.g.assign(size, Rational(0));
  for (Mask s = 0; s < size; ++s) {
    auto [root, off] = uf.find(s);
    Rational value = off * sol.objective;
    if (root != 0) value += sol.x[index[root]];
    out.solution.g[s] = value;
  }
  if (!satisfies(lp, out.solution)) {
    throw std::logic_error("LP solution fails the unreduced constraints");
  }
  return out;
}

}  // namespace

SpmResult spm_symmetric(const ProblemInstance& instance,
                        const SpmOptions& options) {
  const SpmLp lp = build_spm_lp(instance);
  ReducedSolve solved = solve_reduced(lp, options);
  SpmResult result;
  result.stats = solved.stats;
  if (solved.outcome == TupleOutcome::kUnbounded) {
    result.bound = BoundValue::plus_infinity();
    return result;
  }
  result.bound = BoundValue::finite(solved.solution.R);
  result.solution = std::move(solved.solution);
  return result;
}

bool spm_check_tuple(const ProblemInstance& instance,
                     const std::vector<Rational>& rates,
                     const SpmOptions& options) {
  if (static_cast<int>(rates.size()) != instance.n()) {
    throw std::invalid_argument("one rate per message required");
  }
  for (const Rational& r : rates) {
    if (sgn(r) < 0) throw std::invalid_argument("rates must be nonnegative");
  }
  const SpmLp lp = build_spm_lp(instance, rates);
  const ReducedSolve solved = solve_reduced(lp, options);
  return solved.outcome == TupleOutcome::kUnbounded || solved.solution.R >= 1;
}

std::string export_lp(const SpmLp& lp) {
  auto name = [](int v) {
    if (v == SpmLp::rate_var()) return std::string("R");
    return "g" + SubsetMask(static_cast<Mask>(v - 1)).to_string();
  };
  std::ostringstream out;
  out << "max R\n";
  for (const LinearConstraint& c : lp.constraints) {
    for (std::size_t t = 0; t < c.terms.size(); ++t) {
      if (t > 0) out << ' ';
      out << format_rational(c.terms[t].second) << ' ' << name(c.terms[t].first);
    }
    out << (c.sense == LinearConstraint::Sense::kEqual ? " = " : " <= ")
        << format_rational(c.rhs) << "  # " << c.family << '\n';
  }
  return out.str();
}

}  // namespace sic
