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

#include "sic/gpartition.hpp"

#include <limits>
#include <numeric>

namespace sic {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t size) : parent_(size) {
    std::iota(parent_.begin(), parent_.end(), Mask{0});
  }
  Mask find(Mask x) {
    Mask root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const Mask next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }
  // The smaller mask becomes the root, so roots are cell minima.
  void unite(Mask a, Mask b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<Mask> parent_;
};

}  // namespace

GPartition GPartition::build(const ProblemInstance& instance) {
  GPartition gp;
  gp.n_ = instance.n();
  const std::size_t size = std::size_t{1} << gp.n_;
  UnionFind uf(size);
  std::vector<bool> in_family(size, false);

  for (const Party& p : instance.parties()) {
    if (p.prohibited.empty()) continue;
    const Mask b = p.interfering.bits();
    const Mask outside = p.interfering.complement(gp.n_).bits();
    // Enumerate every T in the complement of B_i.
    Mask t = 0;
    while (true) {
      const Mask top = t | b;
      in_family[top] = true;
      for (Mask pj = p.prohibited.bits(); pj != 0; pj &= pj - 1) {
        const Mask member = top & ~(pj & (~pj + 1));
        in_family[member] = true;
        uf.unite(top, member);
      }
      if (t == outside) break;
      t = (t - outside) & outside;
    }
  }

  // Roots are minima, so scanning masks in order numbers cells by their
  // smallest member.
  constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> id_of_root(size, kUnassigned);
  std::uint32_t next_id = 0;
  for (Mask s = 0; s < size; ++s) {
    if (!in_family[s]) continue;
    const Mask r = uf.find(s);
    if (id_of_root[r] == kUnassigned) id_of_root[r] = next_id++;
  }
  const std::uint32_t residual = next_id;
  gp.cells_.assign(residual + 1, {});
  gp.cell_of_.assign(size, residual);
  for (Mask s = 0; s < size; ++s) {
    const std::uint32_t c = in_family[s] ? id_of_root[uf.find(s)] : residual;
    gp.cell_of_[s] = c;
    gp.cells_[c].push_back(SubsetMask(s));
  }
  return gp;
}

nlohmann::ordered_json gpartition_to_json(const GPartition& gp) {
  nlohmann::ordered_json doc;
  doc["gamma"] = gp.gamma();
  doc["cells"] = nlohmann::ordered_json::array();
  for (int c = 0; c < gp.gamma(); ++c) {
    nlohmann::ordered_json cell = nlohmann::ordered_json::array();
    for (SubsetMask s : gp.members(c)) cell.push_back(s.members());
    doc["cells"].push_back(std::move(cell));
  }
  return doc;
}

}  // namespace sic
