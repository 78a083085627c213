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


// Fixtures and random instances shared by the test binaries.

#ifndef SIC_TESTS_SUPPORT_HPP_
#define SIC_TESTS_SUPPORT_HPP_

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sic/problem.hpp"
#include "sic/values.hpp"

namespace sic::testing {

inline std::string read_data_file(const std::string& name) {
  std::ifstream in(std::string(SIC_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ProblemInstance example1() {
  return parse_problem(read_data_file("example1_b.sic"), Notation::kInterfering);
}

inline ProblemInstance toy() {
  return parse_problem(read_data_file("toy.sic"), Notation::kSideInfo);
}

inline ProblemInstance from_text(const std::string& text) {
  return parse_problem(text, Notation::kSideInfo);
}

inline SubsetMask random_subset(std::mt19937_64& rng, SubsetMask within,
                                double p) {
  std::bernoulli_distribution coin(p);
  SubsetMask out;
  for (int k : within.members()) {
    if (coin(rng)) out = out.with(k);
  }
  return out;
}

struct RandomShape {
  int min_n = 1;
  int max_n = 6;
  int min_m = 1;
  int max_m = 8;
  double eavesdropper = 0.15;  // chance a party wants nothing
  double prohibit = 0.35;      // per message of B
  bool secure = true;          // false: every P empty
};

// A valid instance; every party gets its W, then A and P from what is left.
inline ProblemInstance random_instance(std::mt19937_64& rng,
                                       const RandomShape& shape = {}) {
  std::uniform_int_distribution<int> pick_n(shape.min_n, shape.max_n);
  std::uniform_int_distribution<int> pick_m(shape.min_m, shape.max_m);
  std::bernoulli_distribution eaves(shape.eavesdropper);
  const int n = pick_n(rng);
  const int m = pick_m(rng);
  const SubsetMask all = SubsetMask::full(n);
  std::vector<ProblemInstance::Triple> parties;
  for (int j = 0; j < m; ++j) {
    SubsetMask w;
    if (!eaves(rng)) {
      std::uniform_int_distribution<int> pick(1, n);
      w = SubsetMask::singleton(pick(rng));
      w = w | random_subset(rng, all - w, 0.15);
    }
    const SubsetMask a = random_subset(rng, all - w, 0.45);
    const SubsetMask b = all - (a | w);
    const SubsetMask p =
        shape.secure ? random_subset(rng, b, shape.prohibit) : SubsetMask();
    parties.push_back({w, a, p});
  }
  return ProblemInstance(n, parties);
}

}  // namespace sic::testing

// Printers for failed checks, when included after doctest.h.
#ifdef DOCTEST_VERSION
namespace doctest {
template <>
struct StringMaker<sic::BoundValue> {
  static String convert(const sic::BoundValue& v) {
    return v.to_string().c_str();
  }
};
template <>
struct StringMaker<sic::ExtendedInt> {
  static String convert(const sic::ExtendedInt& v) {
    return v.to_string().c_str();
  }
};
template <>
struct StringMaker<sic::SubsetMask> {
  static String convert(const sic::SubsetMask& v) {
    return v.to_string().c_str();
  }
};
}  // namespace doctest
#endif

#endif  // SIC_TESTS_SUPPORT_HPP_
