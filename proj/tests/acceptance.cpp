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


// Acceptance run: one PASS/FAIL line per criterion, exact comparisons
// throughout. Exits 1 when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sic/acyclic.hpp"
#include "sic/chain.hpp"
#include "sic/lower_bound.hpp"
#include "sic/oracle.hpp"
#include "sic/smais.hpp"
#include "sic/spm.hpp"
#include "support.hpp"

namespace {

using sic::BoundValue;
using sic::Mask;
using sic::ProblemInstance;
using sic::Rational;
using sic::SubsetMask;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail,
            double seconds) {
  if (!ok) ++failures;
  std::printf("%s %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
}

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string one_line(const ProblemInstance& p) {
  std::string text = sic::serialize_problem(p);
  for (char& c : text) {
    if (c == '\n') c = ';';
  }
  return text;
}

// Every bound of one instance.
struct Bounds {
  BoundValue mais = BoundValue::not_applicable();
  BoundValue smais = mais, sbac = mais, spm = mais, lower = mais;
  std::optional<sic::SetFunctionSolution> optimum;
};

Bounds all_bounds(const ProblemInstance& p) {
  Bounds b;
  const sic::GPartition gp = sic::GPartition::build(p);
  const sic::AcyclicSolver solver(p);
  const sic::ChainHeights heights(gp, solver);
  b.mais = sic::mais_bound(solver);
  b.smais = sic::smais(gp, solver).bound;
  b.sbac = sic::sbac(gp, solver, heights).bound;
  sic::SpmResult spm = sic::spm_symmetric(p);
  b.spm = spm.bound;
  b.optimum = std::move(spm.solution);
  b.lower = sic::chain_lower_bound(p).bound;
  return b;
}

bool is_zero(const BoundValue& v) {
  return v.is_numeric() && sgn(v.value()) == 0;
}

std::vector<ProblemInstance> random_suite(std::uint64_t seed, int count,
                                          const sic::testing::RandomShape& shape) {
  std::mt19937_64 rng(seed);
  std::vector<ProblemInstance> out;
  while (static_cast<int>(out.size()) < count) {
    ProblemInstance p = sic::testing::random_instance(rng, shape);
    if (p.is_valid()) out.push_back(std::move(p));
  }
  return out;
}

void ten_message_example() {
  const auto start = Clock::now();
  const ProblemInstance p = sic::testing::example1();
  const sic::GPartition gp = sic::GPartition::build(p);
  const sic::AcyclicSolver solver(p);
  const sic::ChainHeights heights(gp, solver);
  const sic::SMaisResult sm = sic::smais(gp, solver);
  const sic::SbacResult sb = sic::sbac(gp, solver, heights);
  const bool chain_ok =
      sb.best && sb.best->messages == std::vector<int>{1, 2, 3} &&
      heights.value(SubsetMask::of({1, 2})) == sic::ExtendedInt(2) &&
      heights.value(SubsetMask::of({2, 3})) == sic::ExtendedInt(2) &&
      sb.best->edge_heights ==
          std::vector<sic::ExtendedInt>{sic::ExtendedInt(2), sic::ExtendedInt(2)};
  const bool ok = sm.bound == BoundValue::finite(Rational(1, 3)) &&
                  sb.bound == BoundValue::finite(Rational(2, 7)) && chain_ok &&
                  solver.h_mais(SubsetMask(), SubsetMask::of({3, 6})) == 2 &&
                  gp.same_cell(SubsetMask::of({1, 3}), SubsetMask::of({3, 6})) &&
                  gp.same_cell(SubsetMask::of({1, 2}), SubsetMask::of({1, 6}));
  const double seconds = since(start);
  std::ostringstream detail;
  detail << "smais=" << sm.bound.to_string() << " sbac=" << sb.bound.to_string()
         << (chain_ok ? " chain 1-2-3 heights 2,2" : " chain mismatch")
         << ", limit 60 s";
  report("ten-message example bounds", ok && seconds < 60, detail.str(), seconds);
}

void ten_message_polymatroid() {
  const auto start = Clock::now();
  const sic::SpmResult r = sic::spm_symmetric(sic::testing::example1());
  const double seconds = since(start);
  const bool ok = r.bound == BoundValue::finite(Rational(2, 7)) && r.solution &&
                  sic::satisfies(sic::build_spm_lp(sic::testing::example1()),
                                 *r.solution);
  std::ostringstream detail;
  detail << "spm=" << r.bound.to_string() << " certified exactly, "
         << r.stats.reduced_vars << " vars x " << r.stats.reduced_rows
         << " rows, limit 600 s";
  report("ten-message example polymatroid optimum", ok && seconds < 600,
         detail.str(), seconds);
}

void ordering_and_identities(const std::vector<ProblemInstance>& suite) {
  auto start = Clock::now();
  int spm_sbac = 0, sbac_smais = 0, smais_mais = 0, chains = 0;
  int violating = 0, violating_zero_capacity = 0;
  std::string example;
  int lemma_eq = 0, lemma_ineq = 0, eq_checked = 0, ineq_checked = 0;
  std::mt19937_64 rng(4242);
  double lemma_seconds = 0;
  for (const ProblemInstance& p : suite) {
    const Bounds b = all_bounds(p);
    bool bad = false;
    if (b.sbac.kind() != BoundValue::Kind::kNotApplicable) {
      ++chains;
      if (!BoundValue::less_equal(b.spm, b.sbac)) ++spm_sbac, bad = true;
      if (!BoundValue::less_equal(b.sbac, b.smais)) ++sbac_smais, bad = true;
    }
    if (!BoundValue::less_equal(b.smais, b.mais)) ++smais_mais, bad = true;
    if (bad) {
      ++violating;
      if (is_zero(b.spm)) ++violating_zero_capacity;
      if (example.empty() || !is_zero(b.spm)) {
        example = one_line(p) + " smais=" + b.smais.to_string() +
                  " sbac=" + b.sbac.to_string() + " spm=" + b.spm.to_string();
      }
    }

    const auto lemma_start = Clock::now();
    if (b.optimum) {
      const sic::GPartition gp = sic::GPartition::build(p);
      const sic::AcyclicSolver solver(p);
      const auto& g = b.optimum->g;
      for (int c = 0; c < gp.num_gsubsets(); ++c) {
        const auto& members = gp.members(c);
        for (std::size_t k = 1; k < members.size(); ++k) {
          ++eq_checked;
          if (g[members[k].bits()] != g[members[0].bits()]) ++lemma_eq;
        }
      }
      const Mask full = p.all().bits();
      for (int k = 0; k < 100; ++k) {
        const Mask sp = static_cast<Mask>(rng()) & full;
        const Mask s = static_cast<Mask>(rng()) & sp;
        ++ineq_checked;
        const Rational rhs =
            g[s] + b.optimum->R * solver.h_mais(SubsetMask(s), SubsetMask(sp));
        if (g[sp] < rhs) ++lemma_ineq;
      }
    }
    lemma_seconds += since(lemma_start);
  }
  const double seconds = since(start) - lemma_seconds;
  std::ostringstream detail;
  detail << suite.size() << " instances (" << chains << " with a chain): "
         << "spm>sbac " << spm_sbac << ", sbac>smais " << sbac_smais
         << ", smais>mais " << smais_mais;
  if (violating > 0) {
    detail << "; " << violating_zero_capacity << " of " << violating
           << " violating instances have spm=0 (no valid code); example: "
           << example;
  }
  report("bound ordering suite", violating == 0, detail.str(), seconds);

  std::ostringstream lemmas;
  lemmas << eq_checked << " same-cell equalities (" << lemma_eq
         << " violated), " << ineq_checked << " nested-pair inequalities ("
         << lemma_ineq << " violated)";
  report("identities at the polymatroid optimum", lemma_eq == 0 && lemma_ineq == 0,
         lemmas.str(), lemma_seconds);
}

void sandwich_and_entropy() {
  const auto start = Clock::now();
  sic::testing::RandomShape shape;
  shape.max_n = 3;
  shape.max_m = 4;
  const std::vector<ProblemInstance> suite = random_suite(7001, 250, shape);
  int rate_violations = 0, lower_violations = 0, feasible = 0, codes = 0;
  int invalid_visits = 0, skipped = 0;
  std::vector<std::pair<ProblemInstance, sic::CodeTable>> samples;
  std::string example;
  for (const ProblemInstance& p : suite) {
    const Bounds b = all_bounds(p);
    const int max_t = p.n() <= 2 ? 2 : 1;
    bool any = false;
    for (int t = 1; t <= max_t; ++t) {
      for (int M = 2; M <= (p.n() * t >= 4 ? 4 : 8); ++M) {
        long seen = 0;
        try {
        sic::for_each_valid_code(
            p, t, M,
            [&](const sic::CodeTable& c) {
              ++codes;
              if (!sic::check_code(p, c).valid()) ++invalid_visits;
              const sic::CodeRate rate{t, M};
              for (const BoundValue* u : {&b.mais, &b.smais, &b.sbac, &b.spm}) {
                if (u->kind() == BoundValue::Kind::kNotApplicable) continue;
                if (!rate.at_most(*u)) {
                  ++rate_violations;
                  if (example.empty()) example = one_line(p) + " at " + rate.to_string();
                }
              }
              if (seen == 0 && samples.size() < 50 && p.is_secure()) {
                samples.emplace_back(p, c);
              }
              any = true;
              return ++seen < 200;
            });
        } catch (const sic::GuardExceeded&) {
          ++skipped;
        }
      }
    }
    if (!any) continue;
    ++feasible;
    for (const BoundValue* u : {&b.mais, &b.smais, &b.sbac, &b.spm}) {
      if (u->kind() == BoundValue::Kind::kNotApplicable) continue;
      if (!BoundValue::less_equal(b.lower, *u)) {
        ++lower_violations;
        if (example.empty()) example = one_line(p) + " lower " + b.lower.to_string();
      }
    }
  }
  // The eavesdropper parity instance: rate 1 meets the lower bound 1.
  const ProblemInstance eve = sic::parse_problem(
      sic::testing::read_data_file("parity_eve.sic"), sic::Notation::kSideInfo);
  const sic::OracleResult best = sic::oracle_best_rate(eve, {1, 2});
  const bool parity_ok = best.best && *best.best == sic::CodeRate{1, 2} &&
                         sic::chain_lower_bound(eve).bound ==
                             BoundValue::finite(Rational(1));
  const double seconds = since(start);
  std::ostringstream detail;
  detail << suite.size() << " instances, " << feasible << " with codes, "
         << codes << " codes checked: rate above an upper bound " << rate_violations
         << ", lower above an upper bound " << lower_violations
         << ", invalid codes " << invalid_visits
         << ", (t, M) pairs over the node budget " << skipped
         << (parity_ok ? "; parity rate 1 = lower 1" : "; parity check failed");
  if (!example.empty()) detail << "; first: " << example;
  report("code sandwich", rate_violations == 0 && lower_violations == 0 &&
                              invalid_visits == 0 && parity_ok && seconds < 300,
         detail.str() + ", limit 300 s", seconds);

  const auto entropy_start = Clock::now();
  int entropic_violations = 0;
  std::string first;
  for (const auto& [p, c] : samples) {
    const auto v = sic::check_entropic_set_function(p, c);
    entropic_violations += static_cast<int>(v.size());
    if (!v.empty() && first.empty()) first = v[0].family + ": " + v[0].constraint;
  }
  std::ostringstream edetail;
  edetail << samples.size() << " codes on secure instances, "
          << entropic_violations << " violated constraints";
  if (!first.empty()) edetail << "; first: " << first;
  report("entropic set function", samples.size() >= 50 && entropic_violations == 0,
         edetail.str(), since(entropy_start));
}

void non_secure_reduction() {
  const auto start = Clock::now();
  sic::testing::RandomShape shape;
  shape.secure = false;
  const std::vector<ProblemInstance> suite = random_suite(9001, 100, shape);
  int mismatches = 0, chains = 0;
  for (const ProblemInstance& p : suite) {
    const sic::GPartition gp = sic::GPartition::build(p);
    const sic::AcyclicSolver solver(p);
    const sic::ChainHeights heights(gp, solver);
    if (!(sic::smais(gp, solver).bound == sic::mais_bound(solver))) ++mismatches;
    if (sic::sbac(gp, solver, heights).best) ++chains;
  }
  std::ostringstream detail;
  detail << suite.size() << " instances: smais != mais " << mismatches
         << ", chains found " << chains;
  report("non-secure reduction", mismatches == 0 && chains == 0, detail.str(),
         since(start));
}

}  // namespace

int main() {
  ten_message_example();
  ten_message_polymatroid();
  sic::testing::RandomShape shape;
  shape.max_n = 6;
  shape.max_m = 8;
  ordering_and_identities(random_suite(5001, 500, shape));
  sandwich_and_entropy();
  non_secure_reduction();
  return failures == 0 ? 0 : 1;
}
