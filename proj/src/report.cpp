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


#include "sic/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>
#include <thread>

#include "sic/acyclic.hpp"
#include "sic/gpartition.hpp"
#include "sic/lower_bound.hpp"
#include "sic/smais.hpp"

namespace sic {

namespace {

nlohmann::ordered_json members_json(SubsetMask s) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (int k : s.members()) out.push_back(k);
  return out;
}

std::string join(const std::vector<int>& values, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += sep;
    out += std::to_string(values[k]);
  }
  return out;
}

// Shared state for the bounds of one instance; built lazily, read-only
// afterwards.
struct Context {
  const ProblemInstance& instance;
  const ReportOptions& options;
  std::unique_ptr<AcyclicSolver> solver;
  std::unique_ptr<GPartition> gp;
};

void run_mais(const Context& ctx, BoundEntry& e) {
  e.value = mais_bound(*ctx.solver);
  const AcyclicWitness w =
      ctx.solver->max_acyclic(SubsetMask{}, ctx.instance.all());
  e.detail["size"] = w.order.size();
  e.detail["order"] = w.order;
  e.detail["attesting_parties"] = w.attesting_parties;
  e.witness = w.order.empty() ? "no acyclic set"
                              : "acyclic order " + join(w.order, ",");
}

void run_smais(const Context& ctx, BoundEntry& e) {
  const SMaisResult r = smais(*ctx.gp, *ctx.solver);
  e.value = r.bound;
  int best = 0;
  for (int c = 1; c < static_cast<int>(r.rho.size()); ++c) {
    if (r.rho[best] < r.rho[c]) best = c;
  }
  e.detail["max_rho"] = r.rho.empty() ? "0" : r.rho[best].to_string();
  e.detail["cell"] = best + 1;
  e.detail["diverged"] = r.diverged;
  e.detail["rounds"] = r.rounds;
  if (!r.diverged && !r.rho.empty()) {
    // Walk the last updates back to the cell whose initial value started it.
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    int cell = best;
    for (int guard = 0; r.witness[cell] && guard < ctx.gp->gamma(); ++guard) {
      const RhoUpdate& u = *r.witness[cell];
      steps.push_back({{"cell", cell + 1},
                       {"from", u.from.members()},
                       {"to", u.to.members()},
                       {"h", u.h}});
      cell = u.source_cell;
    }
    std::reverse(steps.begin(), steps.end());
    e.detail["start"] = {{"cell", cell + 1},
                         {"set", r.initial_argmax[cell].members()},
                         {"rho", r.initial_rho[cell].to_string()}};
    e.detail["updates"] = steps;
  }
  if (r.diverged) {
    e.witness = "positive cycle among g-subsets";
  } else {
    e.witness = "rho " + r.rho[best].to_string() + " at cell " +
                std::to_string(best + 1);
    if (r.witness[best]) {
      const RhoUpdate& u = *r.witness[best];
      e.witness += " via " + u.from.to_string() + " in " + u.to.to_string();
    } else {
      e.witness += " from " + r.initial_argmax[best].to_string();
    }
  }
}

void run_sbac(const Context& ctx, BoundEntry& e) {
  const ChainHeights heights(*ctx.gp, *ctx.solver);
  const SbacResult r = sbac(*ctx.gp, *ctx.solver, heights, ctx.options.sbac);
  e.value = r.bound;
  e.detail["terminal_rule"] =
      ctx.options.sbac.terminal_rule == TerminalRule::kGSubset ? "g-subset"
                                                               : "reflexive";
  if (!r.best) {
    e.detail["chain"] = nullptr;
    e.witness = "no chain";
    return;
  }
  const SecureChain& c = *r.best;
  e.detail["chain"] = c.messages;
  nlohmann::ordered_json hs = nlohmann::ordered_json::array();
  std::vector<std::string> hs_text;
  for (const ExtendedInt& h : c.edge_heights) {
    hs.push_back(h.to_string());
    hs_text.push_back(h.to_string());
  }
  e.detail["edge_heights"] = hs;
  e.detail["terminal_witness"] = members_json(c.terminal_witness);
  std::string heights_text;
  for (std::size_t k = 0; k < hs_text.size(); ++k) {
    heights_text += (k ? "," : "") + hs_text[k];
  }
  e.witness = "chain " + join(c.messages, "-") + " heights " + heights_text +
              " terminal " + c.terminal_witness.to_string();
}

void run_spm(const Context& ctx, BoundEntry& e) {
  const SpmResult r = spm_symmetric(ctx.instance, ctx.options.spm);
  e.value = r.bound;
  e.detail["rows"] = r.stats.rows;
  e.detail["reduced_vars"] = r.stats.reduced_vars;
  e.detail["reduced_rows"] = r.stats.reduced_rows;
  e.detail["certified"] = true;
  e.detail["forced_zero"] = r.stats.forced_zero;
  e.witness = std::to_string(r.stats.rows) + " rows, reduced to " +
              std::to_string(r.stats.reduced_vars) + " vars x " +
              std::to_string(r.stats.reduced_rows) + " rows";
  if (r.stats.forced_zero) e.witness += ", equalities force R = 0";
}

void run_lower(const Context& ctx, BoundEntry& e) {
  const LowerBoundResult r = chain_lower_bound(ctx.instance);
  e.value = r.bound;
  e.detail["k"] = r.k;
  if (r.witness) {
    e.detail["order"] = r.witness->order;
    e.detail["attesting_parties"] = r.witness->attesting_parties;
  } else {
    e.detail["order"] = nlohmann::ordered_json::array();
    e.detail["attesting_parties"] = nlohmann::ordered_json::array();
  }
  e.detail["leaking_parties"] = r.leaking_parties;
  if (!r.witness) {
    e.witness = "no prohibited chain";
  } else {
    e.witness = "prohibited chain " + join(r.witness->order, ",") +
                " attested by parties " + join(r.witness->attesting_parties, ",");
  }
}

void run_entry(const Context& ctx, BoundEntry& e) {
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (e.kind) {
      case BoundKind::kMais: run_mais(ctx, e); break;
      case BoundKind::kSmais: run_smais(ctx, e); break;
      case BoundKind::kSbac: run_sbac(ctx, e); break;
      case BoundKind::kSpm: run_spm(ctx, e); break;
      case BoundKind::kLower: run_lower(ctx, e); break;
    }
  } catch (const GuardExceeded& ex) {
    e.value = BoundValue::not_applicable();
    e.detail = {{"skipped", ex.what()}};
    e.witness = std::string("not computed: ") + ex.what();
  }
  e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
}

}  // namespace

std::string bound_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::kMais: return "mais";
    case BoundKind::kSmais: return "smais";
    case BoundKind::kSbac: return "sbac";
    case BoundKind::kSpm: return "spm";
    case BoundKind::kLower: return "lower";
  }
  return "?";
}

std::vector<BoundKind> all_bounds() {
  return {BoundKind::kMais, BoundKind::kSmais, BoundKind::kSbac, BoundKind::kSpm,
          BoundKind::kLower};
}

std::vector<BoundKind> parse_bound_list(std::string_view csv) {
  std::vector<BoundKind> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', pos), csv.size());
    const std::string_view name = csv.substr(pos, comma - pos);
    bool known = false;
    for (BoundKind k : all_bounds()) {
      if (bound_name(k) != name) continue;
      if (std::find(out.begin(), out.end(), k) != out.end()) {
        throw std::invalid_argument("bound listed twice: " + std::string(name));
      }
      out.push_back(k);
      known = true;
    }
    if (!known) throw std::invalid_argument("unknown bound: '" + std::string(name) + "'");
    pos = comma + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

BoundReport compute_bounds(const ProblemInstance& instance,
                           const ReportOptions& options) {
  BoundReport report{instance, {}, {}};
  Context ctx{instance, options, nullptr, nullptr};
  bool needs_solver = false, needs_gp = false;
  for (BoundKind k : options.bounds) {
    report.entries.push_back({k, BoundValue::not_applicable(), "", {}, 0});
    needs_solver |= k == BoundKind::kMais || k == BoundKind::kSmais ||
                    k == BoundKind::kSbac;
    needs_gp |= k == BoundKind::kSmais || k == BoundKind::kSbac;
  }
  if (needs_solver) ctx.solver = std::make_unique<AcyclicSolver>(instance);
  if (needs_gp) ctx.gp = std::make_unique<GPartition>(GPartition::build(instance));

  const std::size_t count = report.entries.size();
  const int threads = std::clamp<int>(options.threads, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
  if (threads == 1) {
    for (BoundEntry& e : report.entries) run_entry(ctx, e);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          run_entry(ctx, report.entries[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (BoundKind k : options.bounds) {
    if (k == BoundKind::kSbac) {
      report.notes.push_back("chain interior messages must be requested by some party");
      report.notes.push_back(
          options.sbac.terminal_rule == TerminalRule::kGSubset
              ? "chain terminal pair must share a g-subset with a set of MAIS size >= 2"
              : "chain terminal pair may also witness itself when it lies in N_0");
    }
    if (k == BoundKind::kLower) {
      report.notes.push_back(
          "decoding closure: side information absorbs W_r whenever A_r is covered");
      report.notes.push_back("the lower bound holds whenever some valid code exists");
    }
  }
  return report;
}

std::vector<std::string> ordering_violations(const BoundReport& report) {
  std::vector<std::string> out;
  const auto& es = report.entries;
  for (std::size_t a = 0; a < es.size(); ++a) {
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      if (es[b].kind == BoundKind::kLower) continue;
      if (!es[a].value.is_numeric() || !es[b].value.is_numeric()) continue;
      if (es[b].value.value() <= es[a].value.value()) continue;
      out.push_back(bound_name(es[b].kind) + " = " + es[b].value.to_string() +
                    " exceeds " + bound_name(es[a].kind) + " = " +
                    es[a].value.to_string());
    }
  }
  return out;
}

std::vector<std::string> infeasibility_evidence(const BoundReport& report) {
  std::vector<std::string> out;
  const BoundEntry* lower = nullptr;
  for (const BoundEntry& e : report.entries) {
    if (e.kind == BoundKind::kLower) lower = &e;
  }
  if (lower && lower->value.kind() == BoundValue::Kind::kInfeasible) {
    out.push_back("the prohibited chain covers every message");
  }
  for (const BoundEntry& e : report.entries) {
    if (e.kind == BoundKind::kLower || !e.value.is_numeric()) continue;
    if (sgn(e.value.value()) == 0) {
      out.push_back(bound_name(e.kind) + " = " + e.value.to_string());
    } else if (lower && lower->value.is_finite() &&
               lower->value.value() > e.value.value()) {
      out.push_back("lower = " + lower->value.to_string() + " exceeds " +
                    bound_name(e.kind) + " = " + e.value.to_string());
    }
  }
  return out;
}

nlohmann::ordered_json report_to_json(const BoundReport& report) {
  nlohmann::ordered_json doc;
  doc["instance"] = problem_to_json(report.instance);
  doc["bounds"] = nlohmann::ordered_json::array();
  for (const BoundEntry& e : report.entries) {
    nlohmann::ordered_json b;
    b["name"] = bound_name(e.kind);
    b["value"] = e.value.to_string();
    b["witness"] = e.witness;
    b["detail"] = e.detail;
    doc["bounds"].push_back(std::move(b));
  }
  doc["notes"] = report.notes;
  doc["infeasibility_evidence"] = infeasibility_evidence(report);
  return doc;
}

std::string report_to_text(const BoundReport& report, bool decimal) {
  std::ostringstream out;
  out << "instance: n=" << report.instance.n() << ", m=" << report.instance.m()
      << "\n";
  out << std::left << std::setw(7) << "bound" << std::setw(18) << "value";
  if (decimal) out << std::setw(12) << "approx";
  out << std::setw(10) << "time" << "witness\n";
  for (const BoundEntry& e : report.entries) {
    out << std::setw(7) << bound_name(e.kind) << std::setw(18) << e.value.to_string();
    if (decimal) {
      std::ostringstream approx;
      if (e.value.is_numeric()) {
        approx << std::fixed << std::setprecision(6) << to_double(e.value.value());
      } else {
        approx << "-";
      }
      out << std::setw(12) << approx.str();
    }
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << e.seconds << "s";
    out << std::setw(10) << secs.str() << e.witness << "\n";
  }
  for (const std::string& note : report.notes) out << "note: " << note << "\n";
  const std::vector<std::string> evidence = infeasibility_evidence(report);
  if (!evidence.empty()) {
    out << "no valid code exists:";
    for (const std::string& e : evidence) out << " " << e << ";";
    out << "\n";
  }
  return out.str();
}

}  // namespace sic
