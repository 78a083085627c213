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

#include "sic/chain.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>

namespace sic {

int h_pair(const AcyclicSolver& solver, SubsetMask S, SubsetMask S_prime) {
  return S.is_subset_of(S_prime) ? solver.h_mais(S, S_prime) : 0;
}

bool verify_chain_height(const GPartition& gp, const AcyclicSolver& solver,
                         const ChainHeight& height) {
  if (height.value.is_infinite()) return height.steps.empty();
  SubsetMask cur = height.start;
  std::int64_t total = 0;
  for (const ChainStep& step : height.steps) {
    const bool related = step.relation == ChainStep::Relation::kSameCell
                             ? gp.same_cell(cur, step.to)
                             : cur.is_subset_of(step.to);
    if (!related) return false;
    if (step.h != h_pair(solver, cur, step.to)) return false;
    total += step.h;
    cur = step.to;
  }
  return total == height.value.value();
}

ChainHeights::ChainHeights(const GPartition& gp, const AcyclicSolver& solver)
    : gp_(&gp) {
  const int n = gp.n();
  if (n > kMaxChainMessages) {
    throw GuardExceeded("chain heights support at most " +
                        std::to_string(kMaxChainMessages) + " messages");
  }
  const std::size_t size = std::size_t{1} << n;
  const int gsubsets = gp.num_gsubsets();
  residual_rank_.assign(size, -1);
  int nodes = gsubsets;
  for (SubsetMask s : gp.members(gp.residual_cell())) {
    residual_rank_[s.bits()] = nodes++ - gsubsets;
  }

  out_.assign(nodes, {});
  std::vector<bool> positive_loop(nodes, false);
  for (Mask s = 0; s < size; ++s) {
    const SubsetMask from(s);
    const int u = node_of(from);
    solver.for_each_superset(from, [&](SubsetMask to, int h) {
      if (to == from) return;
      const int v = node_of(to);
      if (u == v) {
        if (h > 0) positive_loop[u] = true;
        return;
      }
      out_[u].push_back({v, h, from, to});
    });
  }
  // Keep the heaviest realizer per target; ties go to the first found.
  for (auto& edges : out_) {
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) {
                       return a.to != b.to ? a.to < b.to : a.h > b.h;
                     });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                              return a.to == b.to;
                            }),
                edges.end());
  }

  // Iterative Tarjan; components come out sinks first.
  comp_of_.assign(nodes, -1);
  std::vector<int> index(nodes, -1), low(nodes, 0);
  std::vector<bool> on_stack(nodes, false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> frames;
  std::vector<std::vector<int>> comp_nodes;
  int counter = 0;
  for (int root = 0; root < nodes; ++root) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < out_[v].size()) {
        const int w = out_[v][next++].to;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        const int id = static_cast<int>(comp_nodes.size());
        comp_nodes.emplace_back();
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp_of_[w] = id;
          comp_nodes.back().push_back(w);
        } while (w != done);
        std::sort(comp_nodes.back().begin(), comp_nodes.back().end());
      }
    }
  }

  const int comps = static_cast<int>(comp_nodes.size());
  comp_height_.assign(comps, ExtendedInt(0));
  comp_exit_.assign(comps, std::nullopt);
  for (int c = 0; c < comps; ++c) {
    bool infinite = false;
    std::int64_t best = 0;
    for (int u : comp_nodes[c]) {
      if (positive_loop[u]) infinite = true;
      for (std::size_t i = 0; i < out_[u].size(); ++i) {
        const Edge& e = out_[u][i];
        const int d = comp_of_[e.to];
        if (d == c) {
          if (e.h > 0) infinite = true;
          continue;
        }
        if (comp_height_[d].is_infinite()) {
          infinite = true;
          continue;
        }
        const std::int64_t candidate = e.h + comp_height_[d].value();
        if (candidate > best) {
          best = candidate;
          comp_exit_[c] = {u, static_cast<int>(i)};
        }
      }
    }
    comp_height_[c] = infinite ? ExtendedInt::infinity() : ExtendedInt(best);
    if (infinite) comp_exit_[c] = std::nullopt;
  }
}

int ChainHeights::node_of(SubsetMask s) const {
  const int c = gp_->cell_of(s);
  if (c != gp_->residual_cell()) return c;
  return gp_->num_gsubsets() + residual_rank_[s.bits()];
}

ExtendedInt ChainHeights::value(SubsetMask L) const {
  return comp_height_[comp_of_[node_of(L)]];
}

std::vector<std::pair<int, int>> ChainHeights::internal_route(int from,
                                                              int to) const {
  const int c = comp_of_[from];
  std::unordered_map<int, std::pair<int, int>> via;
  std::deque<int> queue{from};
  via[from] = {-1, -1};
  while (!queue.empty() && !via.count(to)) {
    const int u = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < out_[u].size(); ++i) {
      const int v = out_[u][i].to;
      if (comp_of_[v] != c || via.count(v)) continue;
      via[v] = {u, static_cast<int>(i)};
      queue.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> route;
  for (int v = to; v != from; v = via.at(v).first) route.push_back(via.at(v));
  std::reverse(route.begin(), route.end());
  return route;
}

ChainHeight ChainHeights::height(SubsetMask L) const {
  ChainHeight result{value(L), L, {}};
  if (result.value.is_infinite()) return result;
  SubsetMask cur = L;
  int u = node_of(L);
  auto take = [&](const Edge& e) {
    if (cur != e.from_set) {
      result.steps.push_back({ChainStep::Relation::kSameCell, e.from_set, 0});
    }
    result.steps.push_back({ChainStep::Relation::kSubset, e.to_set, e.h});
    cur = e.to_set;
  };
  while (comp_exit_[comp_of_[u]]) {
    const auto [exit_node, exit_edge] = *comp_exit_[comp_of_[u]];
    for (const auto& [a, i] : internal_route(u, exit_node)) take(out_[a][i]);
    const Edge& e = out_[exit_node][exit_edge];
    take(e);
    u = e.to;
  }
  return result;
}

BoundValue chain_bound(int m, ExtendedInt height_sum) {
  if (height_sum.is_infinite()) return BoundValue::degenerate_zero();
  return BoundValue::finite(
      Rational(mpz_class(m), mpz_class(1 + m + height_sum.value())));
}

std::optional<SubsetMask> terminal_witness(const GPartition& gp,
                                           const AcyclicSolver& solver, int a,
                                           int b, TerminalRule rule) {
  const SubsetMask pair = SubsetMask::of({a, b});
  if (!gp.in_gsubset(pair)) {
    if (rule == TerminalRule::kReflexive &&
        solver.h_mais(SubsetMask{}, pair) >= 2) {
      return pair;
    }
    return std::nullopt;
  }
  for (SubsetMask s : gp.members(gp.cell_of(pair))) {
    if (solver.h_mais(SubsetMask{}, s) >= 2) return s;
  }
  return std::nullopt;
}

bool verify_secure_chain(const GPartition& gp, const AcyclicSolver& solver,
                         const ChainHeights& heights, const SecureChain& chain,
                         TerminalRule rule) {
  const ProblemInstance& inst = solver.instance();
  const int m = chain.length();
  if (m < 1) return false;
  SubsetMask seen;
  for (int i : chain.messages) {
    if (i < 1 || i > inst.n() || seen.contains(i)) return false;
    seen = seen.with(i);
  }
  for (int j = 1; j < m; ++j) {
    if (!inst.requested().contains(chain.messages[j])) return false;
  }
  const SubsetMask pair =
      SubsetMask::of({chain.messages.front(), chain.messages.back()});
  const SubsetMask s = chain.terminal_witness;
  const bool related = gp.in_gsubset(pair)
                           ? gp.same_cell(s, pair)
                           : rule == TerminalRule::kReflexive && s == pair;
  if (!related || solver.h_mais(SubsetMask{}, s) < 2) return false;
  if (static_cast<int>(chain.edge_heights.size()) != m) return false;
  ExtendedInt sum(0);
  for (int j = 0; j < m; ++j) {
    const ExtendedInt h = heights.value(
        SubsetMask::of({chain.messages[j], chain.messages[j + 1]}));
    if (h != chain.edge_heights[j]) return false;
    sum = sum + h;
  }
  return chain.bound == chain_bound(m, sum);
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::int64_t kNone = -1;

std::int64_t add(std::int64_t a, std::int64_t b) {
  return (a >= kInf || b >= kInf) ? kInf : a + b;
}

// Value of a chain with m edges and height sum H, as an exact rational;
// zero for infinite H.
Rational chain_value(int m, std::int64_t H) {
  if (H >= kInf) return Rational(0);
  Rational q(mpz_class(m), mpz_class(1 + m + H));
  q.canonicalize();
  return q;
}

// Longest suffixes for a fixed start s. best(v, used)[j] is the largest
// height sum of a path with j edges from v through unused requested
// messages to an unused end e with a terminal witness for (s, e).
class SuffixTable {
 public:
  SuffixTable(int n, int start, const std::vector<std::vector<std::int64_t>>& h,
              SubsetMask requested, const std::vector<bool>& terminal)
      : n_(n), start_(start), h_(h), requested_(requested), terminal_(terminal) {}

  const std::vector<std::int64_t>& best(int v, Mask used) {
    const std::uint64_t key = (static_cast<std::uint64_t>(used) << 5) | v;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::int64_t> row(n_ + 1, kNone);
    for (int w = 1; w <= n_; ++w) {
      const Mask bit = Mask{1} << (w - 1);
      if (used & bit) continue;
      const std::int64_t step = h_[v][w];
      if (terminal_[w] && row[1] < step) row[1] = step;
      if (!requested_.contains(w)) continue;
      const std::vector<std::int64_t> tail = best(w, used | bit);
      for (int j = 1; j < n_; ++j) {
        if (tail[j] == kNone) continue;
        const std::int64_t total = add(step, tail[j]);
        if (total > row[j + 1]) row[j + 1] = total;
      }
    }
    return memo_.emplace(key, std::move(row)).first->second;
  }

  int start() const { return start_; }

 private:
  int n_;
  int start_;
  const std::vector<std::vector<std::int64_t>>& h_;
  SubsetMask requested_;
  const std::vector<bool>& terminal_;
  std::unordered_map<std::uint64_t, std::vector<std::int64_t>> memo_;
};

}  // namespace

SbacResult sbac(const GPartition& gp, const AcyclicSolver& solver,
                const ChainHeights& heights, const SbacOptions& options) {
  const ProblemInstance& inst = solver.instance();
  const int n = inst.n();
  SbacResult result;

  std::vector<std::vector<std::int64_t>> h(n + 1,
                                           std::vector<std::int64_t>(n + 1, 0));
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      const ExtendedInt v = heights.value(SubsetMask::of({a, b}));
      h[a][b] = h[b][a] = v.is_infinite() ? kInf : v.value();
    }
  }
  std::vector<std::vector<std::optional<SubsetMask>>> witness(
      n + 1, std::vector<std::optional<SubsetMask>>(n + 1));
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      witness[a][b] = witness[b][a] =
          terminal_witness(gp, solver, a, b, options.terminal_rule);
    }
  }

  // Optimal value: smallest m / (1 + m + H) over starts and lengths.
  std::optional<Rational> optimum;
  std::vector<std::unique_ptr<SuffixTable>> tables(n + 1);
  std::vector<std::vector<bool>> terminal(n + 1, std::vector<bool>(n + 1));
  for (int s = 1; s <= n; ++s) {
    for (int e = 1; e <= n; ++e) terminal[s][e] = witness[s][e].has_value();
    tables[s] = std::make_unique<SuffixTable>(n, s, h, inst.requested(),
                                              terminal[s]);
    const auto& row = tables[s]->best(s, Mask{1} << (s - 1));
    for (int m = 1; m <= n; ++m) {
      if (row[m] == kNone) continue;
      const Rational v = chain_value(m, row[m]);
      if (!optimum || v < *optimum) optimum = v;
    }
  }
  if (!optimum) return result;

  // Lexicographically smallest chain attaining the optimum. Stopping is
  // tried before extending, so a chain wins over its own extensions.
  auto completes = [&](SuffixTable& table, int v, Mask used, int edges,
                       std::int64_t H) {
    const auto& row = table.best(v, used);
    for (int j = 1; j <= n; ++j) {
      if (row[j] != kNone && chain_value(edges + j, add(H, row[j])) == *optimum)
        return true;
    }
    return false;
  };
  SecureChain chain;
  for (int s = 1; s <= n && chain.messages.empty(); ++s) {
    SuffixTable& table = *tables[s];
    const Mask start_used = Mask{1} << (s - 1);
    if (!completes(table, s, start_used, 0, 0)) continue;
    std::vector<int> seq{s};
    Mask used = start_used;
    std::int64_t H = 0;
    while (true) {
      const int v = seq.back();
      const int edges = static_cast<int>(seq.size()) - 1;
      if (edges >= 1 && terminal[s][v] && chain_value(edges, H) == *optimum) {
        break;
      }
      bool advanced = false;
      for (int w = 1; w <= n && !advanced; ++w) {
        const Mask bit = Mask{1} << (w - 1);
        if (used & bit) continue;
        const std::int64_t H2 = add(H, h[v][w]);
        const bool stop_here =
            terminal[s][w] && chain_value(edges + 1, H2) == *optimum;
        const bool go_on = inst.requested().contains(w) &&
                           completes(table, w, used | bit, edges + 1, H2);
        if (stop_here || go_on) {
          seq.push_back(w);
          used |= bit;
          H = H2;
          advanced = true;
        }
      }
      if (!advanced) throw std::logic_error("chain reconstruction failed");
    }
    chain.messages = seq;
  }

  const int m = chain.length();
  ExtendedInt sum(0);
  for (int j = 0; j < m; ++j) {
    const ExtendedInt v = heights.value(
        SubsetMask::of({chain.messages[j], chain.messages[j + 1]}));
    chain.edge_heights.push_back(v);
    sum = sum + v;
  }
  chain.terminal_witness = *witness[chain.messages.front()][chain.messages.back()];
  chain.bound = chain_bound(m, sum);
  result.bound = chain.bound;
  result.best = std::move(chain);
  return result;
}

}  // namespace sic
