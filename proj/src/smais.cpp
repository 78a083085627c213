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

#include "sic/smais.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace sic {
namespace {

struct CellEdge {
  int from;
  int to;
  RhoUpdate realizer;
};

// Heaviest comparable member pair for every ordered pair of distinct
// g-subsets that has one.
std::vector<CellEdge> gsubset_edges(const GPartition& gp,
                                    const AcyclicSolver& solver) {
  std::map<std::pair<int, int>, RhoUpdate> best;
  const int residual = gp.residual_cell();
  for (int c = 0; c < residual; ++c) {
    for (SubsetMask s : gp.members(c)) {
      solver.for_each_superset(s, [&](SubsetMask s_prime, int h) {
        const int k = gp.cell_of(s_prime);
        if (k == residual || k == c) return;
        auto [it, inserted] =
            best.try_emplace({c, k}, RhoUpdate{c, s, s_prime, h});
        if (!inserted && h > it->second.h) it->second = RhoUpdate{c, s, s_prime, h};
      });
    }
  }
  std::vector<CellEdge> edges;
  edges.reserve(best.size());
  for (const auto& [key, upd] : best) edges.push_back({key.first, key.second, upd});
  return edges;
}

}  // namespace

SMaisResult smais(const GPartition& gp, const AcyclicSolver& solver,
                  const SMaisOptions& options) {
  SMaisResult r;
  const int gamma = gp.gamma();
  std::vector<std::int64_t> rho(gamma, 0);
  r.initial_argmax.resize(gamma);
  for (int c = 0; c < gamma; ++c) {
    if (!gp.members(c).empty()) r.initial_argmax[c] = gp.members(c).front();
  }
  const std::size_t size = std::size_t{1} << gp.n();
  for (Mask s = 0; s < size; ++s) {
    const int c = gp.cell_of(SubsetMask(s));
    const int h = solver.h_mais(SubsetMask{}, SubsetMask(s));
    if (h > rho[c]) {
      rho[c] = h;
      r.initial_argmax[c] = SubsetMask(s);
    }
  }
  for (std::int64_t v : rho) r.initial_rho.emplace_back(v);
  r.witness.assign(gamma, std::nullopt);

  std::vector<CellEdge> edges = gsubset_edges(gp, solver);
  if (options.reverse_edge_order) std::reverse(edges.begin(), edges.end());

  auto relax_round = [&](std::vector<bool>* touched) {
    bool changed = false;
    for (const CellEdge& e : edges) {
      const std::int64_t candidate = rho[e.from] + e.realizer.h;
      if (candidate > rho[e.to]) {
        rho[e.to] = candidate;
        r.witness[e.to] = e.realizer;
        changed = true;
        if (touched) (*touched)[e.to] = true;
      }
    }
    return changed;
  };

  const int nodes = gp.num_gsubsets();
  bool changed = false;
  for (int round = 1; round <= std::max(nodes, 1); ++round) {
    changed = relax_round(nullptr);
    r.rounds = round;
    if (!changed) break;
  }
  r.diverged = changed;

  std::vector<bool> infinite(gamma, false);
  if (r.diverged) {
    // Anything still improving sits on or behind a positive cycle; spread
    // infinity to everything reachable from those cells.
    for (int round = 0; round < nodes; ++round) relax_round(&infinite);
    std::vector<std::vector<int>> out(gamma);
    for (const CellEdge& e : edges) out[e.from].push_back(e.to);
    std::deque<int> queue;
    for (int c = 0; c < gamma; ++c) {
      if (infinite[c]) queue.push_back(c);
    }
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      for (int k : out[c]) {
        if (!infinite[k]) {
          infinite[k] = true;
          queue.push_back(k);
        }
      }
    }
  }
  for (int c = 0; c < gamma; ++c) {
    r.rho.push_back(infinite[c] ? ExtendedInt::infinity() : ExtendedInt(rho[c]));
  }

  if (r.diverged) {
    r.bound = BoundValue::degenerate_zero();
  } else {
    const std::int64_t top = *std::max_element(rho.begin(), rho.end());
    r.bound = top == 0 ? BoundValue::plus_infinity()
                       : BoundValue::finite(Rational(1, static_cast<long>(top)));
  }
  return r;
}

}  // namespace sic
