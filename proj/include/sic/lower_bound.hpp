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

// Achievability lower bound from prohibition chains.
//
// A party's decoding closure grows its side information by every W_r whose
// decoder it can run (A_r contained in what it has). A set S = {i_1..i_k}
// is chained when each i_l is prohibited for some party j_l whose closure
// contains i_1..i_{l-1}. The largest chained S gives C >= 1 / (n - |S|);
// |S| = n means no valid code exists.

#ifndef SIC_LOWER_BOUND_HPP_
#define SIC_LOWER_BOUND_HPP_

#include <optional>
#include <vector>

#include "sic/problem.hpp"
#include "sic/values.hpp"

namespace sic {

// Closure of party `index` (0-based).
SubsetMask decoding_closure(const ProblemInstance& instance, int index);
std::vector<SubsetMask> decoding_closures(const ProblemInstance& instance);

struct SecurityChainWitness {
  std::vector<int> order;              // i_1..i_k, 1-based messages
  std::vector<int> attesting_parties;  // j_1..j_k, 1-based parties
};

bool verify_security_chain(const ProblemInstance& instance,
                           const std::vector<SubsetMask>& closures,
                           const SecurityChainWitness& witness);

struct LowerBoundResult {
  BoundValue bound = BoundValue::not_applicable();  // 1/(n-k) or infeasible
  int k = 0;
  std::optional<SecurityChainWitness> witness;  // absent when k = 0
  std::vector<SubsetMask> closures;
  // 1-based parties whose closure meets their own prohibited set.
  std::vector<int> leaking_parties;
};

// Maximum chained set; among those, the lexicographically smallest order,
// each step attested by the lowest-numbered qualifying party.
LowerBoundResult chain_lower_bound(const ProblemInstance& instance);

}  // namespace sic

#endif  // SIC_LOWER_BOUND_HPP_
