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


// sicbound: bounds on the symmetric secure capacity of index coding
// instances.
//
// Exit codes: 0 success, 1 unreadable or invalid input, 2 internal
// consistency failure (bound ordering or oracle sandwich), 3 search limits
// exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sic/chain.hpp"
#include "sic/gpartition.hpp"
#include "sic/lower_bound.hpp"
#include "sic/oracle.hpp"
#include "sic/problem.hpp"
#include "sic/report.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitConsistency = 2;
constexpr int kExitGuard = 3;

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError{path + ": cannot open file"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

sic::ProblemInstance load(const std::string& path, const std::string& notation) {
  const std::string text = read_file(path);
  try {
    return sic::parse_problem(text, sic::parse_notation(notation));
  } catch (const sic::ParseError& e) {
    throw InputError{path + ":" + std::to_string(e.line()) + ":" +
                     std::to_string(e.column()) + ": " + e.what()};
  } catch (const sic::InvalidInstance& e) {
    std::string msg = path + ": invalid instance";
    for (const sic::Violation& v : e.violations()) {
      msg += "\n  ";
      msg += v.party > 0 ? "party " + std::to_string(v.party) + ": " : "";
      msg += v.rule + ": " + v.message;
    }
    throw InputError{msg};
  }
}

sic::TerminalRule parse_terminal_rule(const std::string& s) {
  if (s == "g-subset") return sic::TerminalRule::kGSubset;
  if (s == "reflexive") return sic::TerminalRule::kReflexive;
  throw InputError{"unknown terminal rule '" + s + "'"};
}

struct Common {
  std::string file;
  std::string notation = "A";
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "Instance file ('-' for stdin)")->required();
  cmd->add_option("--notation", c.notation, "Middle field is A (side information) or B (interfering set)")
      ->check(CLI::IsMember({"A", "B"}));
  cmd->add_flag("--json", c.json, "Machine-readable output");
}

struct BoundsArgs {
  Common common;
  std::string bounds = "mais,smais,sbac,spm,lower";
  std::string dump_lp;
  std::string terminal_rule = "g-subset";
  int threads = 1;
  bool decimal = false;
};

int run_bounds(const BoundsArgs& a) {
  const sic::ProblemInstance instance = load(a.common.file, a.common.notation);
  sic::ReportOptions options;
  try {
    options.bounds = sic::parse_bound_list(a.bounds);
  } catch (const std::invalid_argument& e) {
    throw InputError{e.what()};
  }
  options.threads = a.threads;
  options.sbac.terminal_rule = parse_terminal_rule(a.terminal_rule);
  if (!a.dump_lp.empty()) {
    std::ofstream out(a.dump_lp);
    if (!out) throw InputError{a.dump_lp + ": cannot write"};
    out << sic::export_lp(sic::build_spm_lp(instance));
  }
  const sic::BoundReport report = sic::compute_bounds(instance, options);
  const std::vector<std::string> violations = sic::ordering_violations(report);
  if (!violations.empty()) {
    std::cerr << "bound ordering violated:\n";
    for (const std::string& v : violations) std::cerr << "  " << v << "\n";
    for (const sic::BoundEntry& e : report.entries) {
      std::cerr << "  " << sic::bound_name(e.kind) << " = " << e.value.to_string()
                << " (" << e.witness << ")\n";
    }
    return kExitConsistency;
  }
  if (a.common.json) {
    std::cout << sic::report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << sic::report_to_text(report, a.decimal);
  }
  return 0;
}

struct OracleArgs {
  Common common;
  int max_t = 1;
  int max_M = 4;
  long node_budget = 50'000'000;
  int threads = 1;
  bool find_all = false;
};

int run_oracle(const OracleArgs& a) {
  const sic::ProblemInstance instance = load(a.common.file, a.common.notation);
  sic::OracleOptions options;
  options.max_t = a.max_t;
  options.max_M = a.max_M;
  options.node_budget = a.node_budget;
  options.threads = a.threads;
  const sic::OracleResult result = sic::oracle_best_rate(instance, options);

  // Valid codes per (t, M), only with --find-all.
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  std::vector<sic::CodeRate> feasible_rates;
  if (a.find_all) {
    for (int t = 1; t <= a.max_t; ++t) {
      for (int M = 2; M <= a.max_M && M <= (1L << (instance.n() * t)); ++M) {
        const long count = sic::for_each_valid_code(
            instance, t, M, [](const sic::CodeTable&) { return true; },
            a.node_budget);
        if (count > 0) feasible_rates.push_back({t, M});
        pairs.push_back({{"t", t}, {"M", M}, {"valid_codes", count}});
      }
    }
  } else if (result.best) {
    feasible_rates.push_back(*result.best);
  }

  sic::ReportOptions ropts;
  ropts.threads = a.threads;
  const sic::BoundReport report = sic::compute_bounds(instance, ropts);
  std::vector<std::string> sandwich;
  sic::BoundValue lower = sic::BoundValue::not_applicable();
  bool have_upper = false;
  sic::BoundValue min_upper = sic::BoundValue::plus_infinity();
  for (const sic::BoundEntry& e : report.entries) {
    if (e.kind == sic::BoundKind::kLower) {
      lower = e.value;
      continue;
    }
    if (e.value.is_numeric()) {
      if (!have_upper || e.value.value() < min_upper.value() ||
          min_upper.kind() == sic::BoundValue::Kind::kPlusInfinity) {
        min_upper = e.value;
      }
      have_upper = true;
    }
    for (const sic::CodeRate& r : feasible_rates) {
      if (e.value.is_numeric() && !r.at_most(e.value)) {
        sandwich.push_back("rate " + r.to_string() + " exceeds " +
                           sic::bound_name(e.kind) + " = " + e.value.to_string());
      }
    }
  }
  if (!feasible_rates.empty()) {
    if (lower.kind() == sic::BoundValue::Kind::kInfeasible) {
      sandwich.push_back("a valid code exists but the lower bound reports infeasible");
    } else if (lower.is_finite() && have_upper && min_upper.is_numeric() &&
               lower.value() > min_upper.value()) {
      sandwich.push_back("lower = " + lower.to_string() + " exceeds min upper = " +
                         min_upper.to_string());
    }
  }

  if (a.common.json) {
    nlohmann::ordered_json doc;
    doc["instance"] = sic::problem_to_json(instance);
    doc["max_t"] = a.max_t;
    doc["max_M"] = a.max_M;
    if (result.best) {
      doc["best_rate"] = result.best->to_string();
      doc["t"] = result.best->t;
      doc["M"] = result.best->M;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      std::istringstream lines(sic::format_code_table(*result.witness));
      for (std::string line; std::getline(lines, line);) rows.push_back(line);
      doc["witness"] = rows;
    } else {
      doc["best_rate"] = nullptr;
    }
    if (a.find_all) doc["pairs"] = pairs;
    nlohmann::ordered_json bounds;
    for (const sic::BoundEntry& e : report.entries) {
      bounds[sic::bound_name(e.kind)] = e.value.to_string();
    }
    doc["bounds"] = bounds;
    doc["sandwich"] = {{"ok", sandwich.empty()}, {"violations", sandwich}};
    std::cout << doc.dump(2) << "\n";
  } else {
    if (result.best) {
      std::cout << "best rate " << result.best->to_string() << " (t=" << result.best->t
                << ", M=" << result.best->M << ")\n";
      std::cout << sic::format_code_table(*result.witness);
    } else {
      std::cout << "no valid code found for t <= " << a.max_t << ", M <= " << a.max_M
                << "\n";
    }
    for (const auto& p : pairs) {
      std::cout << "t=" << p["t"].get<int>() << " M=" << p["M"].get<int>() << ": "
                << p["valid_codes"].get<long>() << " valid codes\n";
    }
    for (const sic::BoundEntry& e : report.entries) {
      std::cout << sic::bound_name(e.kind) << " = " << e.value.to_string() << "\n";
    }
    std::cout << "sandwich: " << (sandwich.empty() ? "ok" : "VIOLATED") << "\n";
  }
  for (const std::string& v : sandwich) std::cerr << "sandwich violation: " << v << "\n";
  return sandwich.empty() ? 0 : kExitConsistency;
}

int run_partition(const Common& a) {
  const sic::ProblemInstance instance = load(a.file, a.notation);
  const sic::GPartition gp = sic::GPartition::build(instance);
  if (a.json) {
    std::cout << sic::gpartition_to_json(gp).dump(2) << "\n";
    return 0;
  }
  std::cout << "gamma = " << gp.gamma() << " (" << gp.num_gsubsets()
            << " g-subsets + N_0)\n";
  for (int c = 0; c < gp.gamma(); ++c) {
    std::cout << (c == gp.residual_cell() ? std::string("N_0")
                                          : "cell " + std::to_string(c + 1))
              << ":";
    for (sic::SubsetMask s : gp.members(c)) std::cout << " " << s.to_string();
    std::cout << "\n";
  }
  return 0;
}

std::string describe_steps(const sic::ChainHeight& h) {
  std::string out = h.start.to_string();
  for (const sic::ChainStep& s : h.steps) {
    out += s.relation == sic::ChainStep::Relation::kSameCell ? " - " : " <= ";
    out += s.to.to_string();
  }
  return out;
}

int run_explain_chain(const Common& a, const std::string& terminal_rule) {
  const sic::ProblemInstance instance = load(a.file, a.notation);
  const sic::GPartition gp = sic::GPartition::build(instance);
  const sic::AcyclicSolver solver(instance);
  const sic::ChainHeights heights(gp, solver);
  sic::SbacOptions options;
  options.terminal_rule = parse_terminal_rule(terminal_rule);
  const sic::SbacResult r = sic::sbac(gp, solver, heights, options);
  nlohmann::ordered_json doc;
  if (!r.best) {
    if (a.json) {
      doc["chain"] = nullptr;
      doc["bound"] = r.bound.to_string();
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "no secure basic acyclic chain\n";
    }
    return 0;
  }
  const sic::SecureChain& c = *r.best;
  doc["chain"] = c.messages;
  doc["edges"] = nlohmann::ordered_json::array();
  std::ostringstream text;
  text << "chain";
  for (int m : c.messages) text << " " << m;
  text << "\n";
  for (std::size_t k = 0; k + 1 < c.messages.size(); ++k) {
    const sic::SubsetMask pair =
        sic::SubsetMask::of({c.messages[k], c.messages[k + 1]});
    const sic::ChainHeight h = heights.height(pair);
    text << "h(" << pair.to_string() << ") = " << h.value.to_string();
    if (!h.value.is_infinite()) text << " via " << describe_steps(h);
    text << "\n";
    nlohmann::ordered_json edge;
    edge["pair"] = pair.members();
    edge["height"] = h.value.to_string();
    edge["sequence"] = describe_steps(h);
    doc["edges"].push_back(edge);
  }
  const sic::SubsetMask ends =
      sic::SubsetMask::of({c.messages.front(), c.messages.back()});
  text << "terminal " << ends.to_string() << " - " << c.terminal_witness.to_string()
       << ", h_mais({}, " << c.terminal_witness.to_string() << ") = "
       << solver.h_mais(sic::SubsetMask{}, c.terminal_witness) << "\n";
  text << "bound " << r.bound.to_string() << "\n";
  doc["terminal_witness"] = c.terminal_witness.members();
  doc["bound"] = r.bound.to_string();
  if (a.json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on the symmetric secure capacity of index coding instances"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  CLI::App* b = app.add_subcommand("bounds", "Compute upper and lower bounds");
  add_common(b, bounds.common);
  b->add_option("--bounds", bounds.bounds, "Comma-separated subset of mais,smais,sbac,spm,lower");
  b->add_option("--dump-lp", bounds.dump_lp, "Write the polymatroidal LP to a file");
  b->add_option("--terminal-rule", bounds.terminal_rule, "g-subset (default) or reflexive")
      ->check(CLI::IsMember({"g-subset", "reflexive"}));
  b->add_option("--threads", bounds.threads, "Bounds computed concurrently")
      ->check(CLI::PositiveNumber);
  b->add_flag("--decimal", bounds.decimal, "Add an approximate decimal column");

  OracleArgs oracle;
  CLI::App* o = app.add_subcommand("oracle", "Exhaustive search for valid codes");
  add_common(o, oracle.common);
  o->add_option("--max-t", oracle.max_t, "Largest message length in bits");
  o->add_option("--max-M", oracle.max_M, "Largest codeword count");
  o->add_option("--node-budget", oracle.node_budget, "Search nodes per (t, M)");
  o->add_option("--threads", oracle.threads, "Worker threads")->check(CLI::PositiveNumber);
  o->add_flag("--find-all", oracle.find_all, "Count every valid code for each (t, M)");

  Common partition;
  CLI::App* p = app.add_subcommand("partition", "Print the g-partition");
  add_common(p, partition);

  Common explain;
  std::string explain_rule = "g-subset";
  CLI::App* e = app.add_subcommand("explain-chain", "Show the best secure chain");
  add_common(e, explain);
  e->add_option("--terminal-rule", explain_rule, "g-subset (default) or reflexive")
      ->check(CLI::IsMember({"g-subset", "reflexive"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (b->parsed()) return run_bounds(bounds);
    if (o->parsed()) return run_oracle(oracle);
    if (p->parsed()) return run_partition(partition);
    if (e->parsed()) return run_explain_chain(explain, explain_rule);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.message << "\n";
    return kExitInput;
  } catch (const sic::GuardExceeded& err) {
    std::cerr << "limit exceeded: " << err.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kExitConsistency;
  }
  return 0;
}
