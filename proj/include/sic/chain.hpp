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

// Chain heights and the secure basic acyclic chain bound.
//
// h(S, S') is h_mais(S, S') when S is a subset of S' and 0 otherwise. The
// height h(L) of a set is the supremum of sum_j h(L_j, L_{j+1}) over finite
// sequences starting at L in which consecutive sets are either in the same
// g-subset or nested. Each g-subset is condensed to one node, every N_0 set
// is its own node, and an edge u -> v carries the largest h_mais over
// nested member pairs. Weights are nonnegative, so a cycle through a
// positive edge lies inside one strongly connected component; such
// components (and everything that reaches them) have infinite height.

#ifndef SIC_CHAIN_HPP_
#define SIC_CHAIN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sic/acyclic.hpp"
#include "sic/gpartition.hpp"

namespace sic {

// Chain heights enumerate all nested pairs (3^n of them).
inline constexpr int kMaxChainMessages = 14;

int h_pair(const AcyclicSolver& solver, SubsetMask S, SubsetMask S_prime);

struct ChainStep {
  enum class Relation { kSameCell, kSubset };
  Relation relation;
  SubsetMask to;
  int h;  // contribution h(L_j, L_{j+1})
};

struct ChainHeight {
  ExtendedInt value;
  SubsetMask start;
  std::vector<ChainStep> steps;  // realizing sequence; empty when infinite
};

// Literal re-check of a realizing sequence: relations hold, contributions
// match h(), and they sum to the height.
bool verify_chain_height(const GPartition& gp, const AcyclicSolver& solver,
                         const ChainHeight& height);

// Heights of every set, computed once per instance.
class ChainHeights {
 public:
  ChainHeights(const GPartition& gp, const AcyclicSolver& solver);

  ChainHeight height(SubsetMask L) const;
  ExtendedInt value(SubsetMask L) const;
  int num_nodes() const { return static_cast<int>(comp_of_.size()); }

 private:
  struct Edge {
    int to;
    int h;
    SubsetMask from_set;
    SubsetMask to_set;
  };

  int node_of(SubsetMask s) const;
  // Edges (node, index into out_) leading from one node to another inside
  // their common component.
  std::vector<std::pair<int, int>> internal_route(int from, int to) const;

  const GPartition* gp_;
  std::vector<int> residual_rank_;       // N_0 set -> node offset
  std::vector<std::vector<Edge>> out_;   // per node, sorted by target
  std::vector<int> comp_of_;             // node -> SCC id
  std::vector<ExtendedInt> comp_height_;
  std::vector<std::optional<std::pair<int, int>>> comp_exit_;  // (node, edge index)
};

struct SecureChain {
  std::vector<int> messages;              // i_1..i_{m+1}
  std::vector<ExtendedInt> edge_heights;  // h({i_j, i_{j+1}})
  SubsetMask terminal_witness;            // S with S - {i_1, i_{m+1}}
  BoundValue bound = BoundValue::not_applicable();

  int length() const { return static_cast<int>(messages.size()) - 1; }
};

struct SbacResult {
  BoundValue bound = BoundValue::not_applicable();  // n/a when no chain
  std::optional<SecureChain> best;
};

// Which sets S may witness the chain terminals {a, b}.
enum class TerminalRule {
  // S shares a g-subset with {a, b}; a pair in N_0 never qualifies.
  kGSubset,
  // Also accepts S = {a, b} itself when the pair lies in N_0.
  kReflexive,
};

struct SbacOptions {
  TerminalRule terminal_rule = TerminalRule::kGSubset;
};

// m / (1 + m + sum of heights); zero when some height is infinite.
BoundValue chain_bound(int m, ExtendedInt height_sum);

// Smallest S related to {a, b} under the rule with h_mais({}, S) >= 2.
std::optional<SubsetMask> terminal_witness(const GPartition& gp,
                                           const AcyclicSolver& solver, int a,
                                           int b, TerminalRule rule);

// Checks every chain condition literally.
bool verify_secure_chain(const GPartition& gp, const AcyclicSolver& solver,
                         const ChainHeights& heights, const SecureChain& chain,
                         TerminalRule rule = TerminalRule::kGSubset);

// Tightest chain bound over all secure basic acyclic chains. Ties go to the
// lexicographically smallest message sequence.
SbacResult sbac(const GPartition& gp, const AcyclicSolver& solver,
                const ChainHeights& heights, const SbacOptions& options = {});

}  // namespace sic

#endif  // SIC_CHAIN_HPP_
