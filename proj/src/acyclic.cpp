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

#include "sic/acyclic.hpp"

#include <algorithm>
#include <bit>

namespace sic {

bool verify_acyclic_witness(const ProblemInstance& instance, SubsetMask base,
                            const AcyclicWitness& witness) {
  if (witness.order.size() != witness.attesting_parties.size()) return false;
  SubsetMask prefix = base;
  for (std::size_t l = 0; l < witness.order.size(); ++l) {
    const int i = witness.order[l];
    const int j = witness.attesting_parties[l];
    if (i < 1 || i > instance.n() || j < 1 || j > instance.m()) return false;
    if (base.contains(i) || prefix.contains(i)) return false;
    prefix = prefix.with(i);
    const Party& p = instance.party(j - 1);
    if (!p.wants.contains(i) || !prefix.is_subset_of(p.unknown())) return false;
  }
  return true;
}

AcyclicSolver::AcyclicSolver(const ProblemInstance& instance)
    : instance_(&instance), n_(instance.n()) {
  const std::size_t size = std::size_t{1} << n_;
  requestable_.assign(size, 0);
  for (const Party& p : instance.parties()) {
    requestable_[p.unknown().bits()] |= p.wants.bits();
  }
  // Push each W_j down to every subset of B_j u W_j.
  for (int b = 0; b < n_; ++b) {
    const Mask bit = Mask{1} << b;
    for (Mask x = 0; x < size; ++x) {
      if (!(x & bit)) requestable_[x] |= requestable_[x | bit];
    }
  }
}

AcyclicSolver::Table AcyclicSolver::build_table(Mask base, Mask free) const {
  Table t;
  t.base = base;
  t.free = free;
  const int k = std::popcount(free);
  const std::size_t size = std::size_t{1} << k;
  std::vector<Mask> pos;
  for (Mask f = free; f != 0; f &= f - 1) pos.push_back(f & (~f + 1));

  std::vector<Mask> xs(size);
  t.last.assign(size, 0);
  t.best.assign(size, 0);
  xs[0] = base;
  for (std::size_t idx = 1; idx < size; ++idx) {
    const int low = std::countr_zero(idx);
    xs[idx] = xs[idx & (idx - 1)] | pos[low];
    const Mask req = requestable_[xs[idx]];
    bool ok = false;
    std::uint8_t best = 0;
    for (std::size_t rest = idx; rest != 0; rest &= rest - 1) {
      const int p = std::countr_zero(rest);
      const std::size_t prev = idx ^ (std::size_t{1} << p);
      if (!ok && (req & pos[p]) && (prev == 0 || t.last[prev] != 0)) {
        t.last[idx] = static_cast<std::uint8_t>(p + 1);
        ok = true;
      }
      best = std::max(best, t.best[prev]);
    }
    t.best[idx] = ok ? static_cast<std::uint8_t>(std::popcount(idx)) : best;
  }
  return t;
}

std::shared_ptr<const AcyclicSolver::Table> AcyclicSolver::cached_table(
    Mask base) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(base);
    if (it != cache_.end()) return it->second;
  }
  auto table = std::make_shared<const Table>(
      build_table(base, SubsetMask(base).complement(n_).bits()));
  std::lock_guard<std::mutex> lock(mu_);
  // Concurrent builders produce identical tables; keep the first.
  return cache_.emplace(base, std::move(table)).first->second;
}

int AcyclicSolver::attesting_party(int message, Mask covered) const {
  const auto& parties = instance_->parties();
  for (std::size_t j = 0; j < parties.size(); ++j) {
    if (parties[j].wants.contains(message) &&
        SubsetMask(covered).is_subset_of(parties[j].unknown())) {
      return static_cast<int>(j) + 1;
    }
  }
  return 0;
}

AcyclicWitness AcyclicSolver::reconstruct(const Table& t, Mask packed) const {
  std::vector<Mask> pos;
  for (Mask f = t.free; f != 0; f &= f - 1) pos.push_back(f & (~f + 1));
  AcyclicWitness w;
  Mask cur = packed;
  while (cur != 0) {
    const int p = t.last[cur] - 1;
    const Mask covered = t.base | deposit_bits(cur, t.free);
    const int message = std::countr_zero(pos[p]) + 1;
    w.order.push_back(message);
    w.attesting_parties.push_back(attesting_party(message, covered));
    cur ^= Mask{1} << p;
  }
  std::reverse(w.order.begin(), w.order.end());
  std::reverse(w.attesting_parties.begin(), w.attesting_parties.end());
  return w;
}

std::optional<AcyclicWitness> AcyclicSolver::is_acyclic_wrt(
    SubsetMask K, SubsetMask S) const {
  if (K.intersects(S)) {
    throw PreconditionError("is_acyclic_wrt: K " + K.to_string() +
                            " overlaps S " + S.to_string());
  }
  auto t = cached_table(S.bits());
  const Mask packed = extract_bits(K.bits(), t->free);
  if (packed != 0 && t->last[packed] == 0) return std::nullopt;
  return reconstruct(*t, packed);
}

int AcyclicSolver::h_mais(SubsetMask S, SubsetMask S_prime) const {
  if (!S.is_subset_of(S_prime)) {
    throw PreconditionError("h_mais: " + S.to_string() + " is not a subset of " +
                            S_prime.to_string());
  }
  auto t = cached_table(S.bits());
  return t->best[extract_bits((S_prime - S).bits(), t->free)];
}

AcyclicWitness AcyclicSolver::max_acyclic(SubsetMask S,
                                          SubsetMask S_prime) const {
  if (!S.is_subset_of(S_prime)) {
    throw PreconditionError("max_acyclic: " + S.to_string() +
                            " is not a subset of " + S_prime.to_string());
  }
  auto t = cached_table(S.bits());
  Mask cur = extract_bits((S_prime - S).bits(), t->free);
  // Walk down to a subset that is itself acyclic and realizes best[].
  while (cur != 0 && t->last[cur] == 0) {
    for (Mask rest = cur; rest != 0; rest &= rest - 1) {
      const Mask prev = cur ^ (rest & (~rest + 1));
      if (t->best[prev] == t->best[cur]) {
        cur = prev;
        break;
      }
    }
  }
  return reconstruct(*t, cur);
}

BoundValue mais_bound(const AcyclicSolver& solver) {
  const int h = solver.h_mais(SubsetMask{}, solver.instance().all());
  if (h == 0) return BoundValue::plus_infinity();
  return BoundValue::finite(Rational(1, h));
}

}  // namespace sic
