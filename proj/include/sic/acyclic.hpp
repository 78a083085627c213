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

// Acyclic sets relative to a base set, and h_MAIS(S, S').
//
// K = {i_1, ..., i_k} is acyclic w.r.t. S when every i_l is wanted by some
// party j_l whose unknown set B_j u W_j covers S u {i_1, ..., i_l}. The
// condition on the last element depends only on the set S u K, so
// acyclicity is decided by a DP over subsets rather than by orderings:
//
//   ok(T) <=> T = {} or exists i in T with requestable(S u T) containing i
//             and ok(T \ {i}),
//
// where requestable(X) is the union of W_j over parties with X in B_j u W_j.

#ifndef SIC_ACYCLIC_HPP_
#define SIC_ACYCLIC_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sic/problem.hpp"
#include "sic/values.hpp"

namespace sic {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AcyclicWitness {
  std::vector<int> order;              // i_1..i_k, 1-based messages
  std::vector<int> attesting_parties;  // j_1..j_k, 1-based parties
};

// Literal check of the per-position condition for a given ordering.
bool verify_acyclic_witness(const ProblemInstance& instance, SubsetMask base,
                            const AcyclicWitness& witness);

// Owns the requestable table and a cache of per-base DP tables. Thread-safe;
// tables are immutable once built.
class AcyclicSolver {
 public:
  explicit AcyclicSolver(const ProblemInstance& instance);

  const ProblemInstance& instance() const { return *instance_; }

  // Witness ordering iff K is acyclic w.r.t. S. Requires K n S = {}.
  std::optional<AcyclicWitness> is_acyclic_wrt(SubsetMask K,
                                               SubsetMask S) const;

  // max |K| over K in S' \ S acyclic w.r.t. S. Requires S in S'.
  int h_mais(SubsetMask S, SubsetMask S_prime) const;

  // A maximum acyclic K in S' \ S with its ordering.
  AcyclicWitness max_acyclic(SubsetMask S, SubsetMask S_prime) const;

  // Calls f(S', h_mais(S, S')) for every S' containing S, in increasing
  // order of S' \ S packed onto the complement of S. Does not populate
  // the cache.
  template <typename F>
  void for_each_superset(SubsetMask S, F&& f) const {
    const Table t = build_table(S.bits(), S.complement(n_).bits());
    const std::size_t size = t.best.size();
    for (std::size_t idx = 0; idx < size; ++idx) {
      f(SubsetMask(S.bits() | deposit_bits(static_cast<Mask>(idx), t.free)),
        static_cast<int>(t.best[idx]));
    }
  }

  // Union of W_j over parties with X in B_j u W_j.
  SubsetMask requestable(SubsetMask X) const {
    return SubsetMask(requestable_[X.bits()]);
  }

 private:
  struct Table {
    Mask base = 0;
    Mask free = 0;  // bits the DP ranges over, packed in index order
    // last[idx]: 1 + packed position of the smallest admissible last
    // element, 0 when the set is not acyclic (the empty set stores 0 too).
    std::vector<std::uint8_t> last;
    // best[idx]: largest acyclic subset size within idx.
    std::vector<std::uint8_t> best;
  };

  Table build_table(Mask base, Mask free) const;
  std::shared_ptr<const Table> cached_table(Mask base) const;
  AcyclicWitness reconstruct(const Table& t, Mask packed) const;
  int attesting_party(int message, Mask covered) const;

  const ProblemInstance* instance_;
  int n_;
  std::vector<Mask> requestable_;
  mutable std::mutex mu_;
  mutable std::map<Mask, std::shared_ptr<const Table>> cache_;
};

// 1 / h_mais({}, [n]); +inf when no nonempty acyclic set exists.
BoundValue mais_bound(const AcyclicSolver& solver);

}  // namespace sic

#endif  // SIC_ACYCLIC_HPP_
