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


#include <map>
#include <numeric>

#include "doctest.h"
#include "sic/gpartition.hpp"
#include "support.hpp"

using sic::GPartition;
using sic::Mask;
using sic::ProblemInstance;
using sic::SubsetMask;

namespace {

// Direct construction: union-find over all families.
std::vector<int> brute_cells(const ProblemInstance& p, std::vector<bool>& touched) {
  const Mask size = Mask{1} << p.n();
  std::vector<int> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  touched.assign(size, false);
  for (const sic::Party& party : p.parties()) {
    if (party.prohibited.empty()) continue;
    const SubsetMask rest = party.interfering.complement(p.n());
    for (Mask t = 0; t < size; ++t) {
      if (!SubsetMask(t).is_subset_of(rest)) continue;
      const SubsetMask top = SubsetMask(t) | party.interfering;
      touched[top.bits()] = true;
      for (int j : party.prohibited.members()) {
        const SubsetMask s = top.without(j);
        touched[s.bits()] = true;
        parent[find(s.bits())] = find(top.bits());
      }
    }
  }
  std::vector<int> root(size);
  for (Mask s = 0; s < size; ++s) root[s] = find(s);
  return root;
}

}  // namespace

TEST_CASE("toy instance: party 1 links {2}, {3} and {2,3}") {
  const GPartition gp = GPartition::build(sic::testing::toy());
  CHECK(gp.same_cell(SubsetMask::of({2}), SubsetMask::of({3})));
  CHECK(gp.same_cell(SubsetMask::of({3}), SubsetMask::of({2, 3})));
  CHECK(gp.in_gsubset(SubsetMask::of({2, 3})));
}

TEST_CASE("ten-message example relations") {
  const GPartition gp = GPartition::build(sic::testing::example1());
  CHECK(gp.same_cell(SubsetMask::of({1, 3}), SubsetMask::of({3, 6})));
  CHECK(gp.same_cell(SubsetMask::of({1, 3}), SubsetMask::of({1, 3, 6})));
  CHECK(gp.same_cell(SubsetMask::of({1, 2}), SubsetMask::of({1, 6})));
  CHECK(gp.same_cell(SubsetMask::of({1, 2}), SubsetMask::of({1, 2, 6})));
}

TEST_CASE("non-secure instances have only the residual cell") {
  const GPartition gp =
      GPartition::build(sic::testing::from_text("n=3\n1|2|.\n2|.|.\n3|1,2|.\n"));
  CHECK(gp.gamma() == 1);
  CHECK(gp.num_gsubsets() == 0);
  CHECK_FALSE(gp.same_cell(SubsetMask::of({1}), SubsetMask::of({2})));
  CHECK(gp.same_cell(SubsetMask::of({1}), SubsetMask::of({1})));
  CHECK(gp.members(gp.residual_cell()).size() == 8);
}

TEST_CASE("partition matches a direct union-find") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 150; ++trial) {
    const ProblemInstance p = sic::testing::random_instance(rng);
    const GPartition gp = GPartition::build(p);
    std::vector<bool> touched;
    const std::vector<int> root = brute_cells(p, touched);
    const Mask size = Mask{1} << p.n();
    std::size_t total = 0;
    for (int c = 0; c < gp.gamma(); ++c) {
      for (SubsetMask s : gp.members(c)) CHECK(gp.cell_of(s) == c);
      total += gp.members(c).size();
    }
    CHECK(total == size);
    for (Mask a = 0; a < size; ++a) {
      CHECK(gp.in_gsubset(SubsetMask(a)) == static_cast<bool>(touched[a]));
      for (Mask b = a + 1; b < size; ++b) {
        const bool expected = touched[a] && touched[b] && root[a] == root[b];
        CHECK(gp.same_cell(SubsetMask(a), SubsetMask(b)) == expected);
      }
    }
    // Ids follow the smallest member; the residual cell is last.
    for (int c = 1; c < gp.num_gsubsets(); ++c) {
      CHECK(gp.members(c - 1).front() < gp.members(c).front());
    }
  }
}

TEST_CASE("JSON lists every cell") {
  const GPartition gp = GPartition::build(sic::testing::toy());
  const auto doc = sic::gpartition_to_json(gp);
  CHECK(doc["gamma"] == gp.gamma());
  CHECK(doc["cells"].size() == static_cast<std::size_t>(gp.gamma()));
}
