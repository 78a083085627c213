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

#include "sic/lower_bound.hpp"

#include <stdexcept>

namespace sic {

SubsetMask decoding_closure(const ProblemInstance& instance, int index) {
  SubsetMask have = instance.party(index).side_info;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Party& r : instance.parties()) {
      if (r.side_info.is_subset_of(have) && !r.wants.is_subset_of(have)) {
        have = have | r.wants;
        grew = true;
      }
    }
  }
  return have;
}

std::vector<SubsetMask> decoding_closures(const ProblemInstance& instance) {
  std::vector<SubsetMask> out;
  out.reserve(instance.m());
  for (int i = 0; i < instance.m(); ++i) {
    out.push_back(decoding_closure(instance, i));
  }
  return out;
}

namespace {

// Lowest party j with message i in P_j and prefix inside j's closure.
int attesting_party(const ProblemInstance& instance,
                    const std::vector<SubsetMask>& closures, int message,
                    SubsetMask prefix) {
  for (int j = 0; j < instance.m(); ++j) {
    if (instance.party(j).prohibited.contains(message) &&
        prefix.is_subset_of(closures[j])) {
      return j;
    }
  }
  return -1;
}

}  // namespace

bool verify_security_chain(const ProblemInstance& instance,
                           const std::vector<SubsetMask>& closures,
                           const SecurityChainWitness& witness) {
  if (witness.order.size() != witness.attesting_parties.size()) return false;
  SubsetMask prefix;
  for (std::size_t l = 0; l < witness.order.size(); ++l) {
    const int i = witness.order[l];
    const int j = witness.attesting_parties[l] - 1;
    if (i < 1 || i > instance.n() || prefix.contains(i)) return false;
    if (j < 0 || j >= instance.m()) return false;
    if (!instance.party(j).prohibited.contains(i)) return false;
    if (!prefix.is_subset_of(closures[j])) return false;
    prefix = prefix.with(i);
  }
  return true;
}

LowerBoundResult chain_lower_bound(const ProblemInstance& instance) {
  LowerBoundResult result;
  const int n = instance.n();
  result.closures = decoding_closures(instance);
  for (int i = 0; i < instance.m(); ++i) {
    if (result.closures[i].intersects(instance.party(i).prohibited)) {
      result.leaking_parties.push_back(i + 1);
    }
  }

  // extendable[T]: messages i outside T with some party attesting i after T.
  const std::size_t size = std::size_t{1} << n;
  std::vector<Mask> extendable(size, 0);
  for (Mask t = 0; t < size; ++t) {
    for (int j = 0; j < instance.m(); ++j) {
      if (SubsetMask(t).is_subset_of(result.closures[j])) {
        extendable[t] |= instance.party(j).prohibited.bits();
      }
    }
    extendable[t] &= ~t;
  }
  // best[T]: largest chained set reachable from a chained T.
  std::vector<std::uint8_t> best(size, 0);
  for (Mask t = static_cast<Mask>(size); t-- > 0;) {
    std::uint8_t b = static_cast<std::uint8_t>(SubsetMask(t).size());
    for (Mask e = extendable[t]; e != 0; e &= e - 1) {
      b = std::max(b, best[t | (e & (~e + 1))]);
    }
    best[t] = b;
  }
  result.k = best[0];

  if (result.k > 0) {
    SecurityChainWitness w;
    Mask t = 0;
    while (static_cast<int>(SubsetMask(t).size()) < result.k) {
      int chosen = -1;
      for (int i = 1; i <= n; ++i) {
        const Mask bit = Mask{1} << (i - 1);
        if ((extendable[t] & bit) && best[t | bit] == result.k) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) throw std::logic_error("security chain reconstruction");
      w.order.push_back(chosen);
      w.attesting_parties.push_back(
          attesting_party(instance, result.closures, chosen, SubsetMask(t)) + 1);
      t |= Mask{1} << (chosen - 1);
    }
    result.witness = std::move(w);
  }

  result.bound = result.k == n
                     ? BoundValue::infeasible()
                     : BoundValue::finite(Rational(mpz_class(1),
                                                   mpz_class(n - result.k)));
  return result;
}

}  // namespace sic
