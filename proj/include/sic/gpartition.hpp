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

#ifndef SIC_GPARTITION_HPP_
#define SIC_GPARTITION_HPP_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "sic/problem.hpp"

namespace sic {

// Partition of the subset lattice 2^[n] into g-subsets (cells on which every
// admissible set function is constant) plus the residual cell N_0.
//
// For every party i with P_i non-empty and every T in the complement of
// B_i, the family {T u B_i \ {j} : j in P_i} u {T u B_i} is merged into one
// cell; overlapping families are merged transitively. Sets in no family
// form N_0.
//
// Cell ids are 0-based here: g-subsets are numbered by their smallest
// member mask, and N_0 always takes the last id, gamma() - 1. External
// formats print ids 1-based.
class GPartition {
 public:
  static GPartition build(const ProblemInstance& instance);

  int n() const { return n_; }
  // Number of cells, N_0 included (N_0 may be empty).
  int gamma() const { return static_cast<int>(cells_.size()); }
  int residual_cell() const { return gamma() - 1; }
  int num_gsubsets() const { return gamma() - 1; }

  int cell_of(SubsetMask S) const { return static_cast<int>(cell_of_[S.bits()]); }
  bool in_gsubset(SubsetMask S) const { return cell_of(S) != residual_cell(); }
  // Members of a cell, ascending by mask.
  const std::vector<SubsetMask>& members(int cell) const { return cells_.at(cell); }

  // The "-" relation: equal sets, or distinct sets in the same g-subset.
  // Distinct members of N_0 are never related.
  bool same_cell(SubsetMask S, SubsetMask S_prime) const {
    if (S == S_prime) return true;
    const int c = cell_of(S);
    return c == cell_of(S_prime) && c != residual_cell();
  }

 private:
  int n_ = 0;
  std::vector<std::uint32_t> cell_of_;
  std::vector<std::vector<SubsetMask>> cells_;
};

// {"gamma": g, "cells": [[[..],[..]], ...]}, cells in id order, N_0 last.
nlohmann::ordered_json gpartition_to_json(const GPartition& gp);

}  // namespace sic

#endif  // SIC_GPARTITION_HPP_
