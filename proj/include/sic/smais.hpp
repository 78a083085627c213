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

// Secure MAIS bound. Each cell k starts at rho_k = max over S in N_k of
// h_mais({}, S); then, between distinct g-subsets l -> k, rho_k is raised to
// h_mais(S, S') + rho_l whenever S in N_l, S' in N_k and S in S'. The bound
// is 1 / max_k rho_k.
//
// The update loop is a longest-path relaxation on the g-subset graph with
// edge weight w(l -> k) = max h_mais(S, S') over comparable member pairs.
// It is run as Bellman-Ford; an improvement in round gamma - 1 means a
// positive cycle, in which case the bound degenerates to zero.

#ifndef SIC_SMAIS_HPP_
#define SIC_SMAIS_HPP_

#include <optional>
#include <vector>

#include "sic/acyclic.hpp"
#include "sic/gpartition.hpp"

namespace sic {

// The update that last raised a cell's rho (cell ids 0-based).
struct RhoUpdate {
  int source_cell;
  SubsetMask from;  // S in the source cell
  SubsetMask to;    // S' in the target cell, S in S'
  int h;            // h_mais(S, S')
};

struct SMaisResult {
  BoundValue bound = BoundValue::not_applicable();
  std::vector<ExtendedInt> rho;  // per cell; +inf on cells fed by a cycle
  std::vector<ExtendedInt> initial_rho;
  std::vector<SubsetMask> initial_argmax;  // S realizing initial rho per cell
  std::vector<std::optional<RhoUpdate>> witness;
  bool diverged = false;
  int rounds = 0;
};

struct SMaisOptions {
  // Relax edges in reverse order; the fixpoint must not depend on it.
  bool reverse_edge_order = false;
};

SMaisResult smais(const GPartition& gp, const AcyclicSolver& solver,
                  const SMaisOptions& options = {});

}  // namespace sic

#endif  // SIC_SMAIS_HPP_
