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

// Secure index coding instances: n messages and m parties, each party
// described by the messages it wants (W), knows (A) and must not learn (P).
//
// Text format, one statement per line (';' also ends a statement):
//
//   # comment
//   n=4
//   1|4|2,3        # W|A|P in A-form, W|B|P in B-form
//   .|1,4|2,3      # '.' is the empty set; W = {} marks an eavesdropper
//
// Message and party indices are 1-based in every external format.

#ifndef SIC_PROBLEM_HPP_
#define SIC_PROBLEM_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sic/subset_mask.hpp"

namespace sic {

enum class Notation { kSideInfo, kInterfering };  // A-form, B-form

Notation parse_notation(std::string_view text);  // "A" or "B"

struct Party {
  SubsetMask wants;        // W_i
  SubsetMask side_info;    // A_i
  SubsetMask prohibited;   // P_i
  SubsetMask interfering;  // B_i = [n] \ (A_i u W_i)

  bool is_eavesdropper() const { return wants.empty(); }
  // B_i u W_i, the messages party i does not know up front.
  SubsetMask unknown() const { return interfering | wants; }

  friend bool operator==(const Party&, const Party&) = default;
};

SubsetMask derive_interfering(SubsetMask wants, SubsetMask side_info, int n);

struct Violation {
  int party;  // 1-based; 0 for instance-level problems
  std::string rule;
  std::string message;
};

class ProblemInstance {
 public:
  // Builds an instance from (W, A, P) triples; B is derived. Does not
  // validate; call validate() or use the parsers, which reject bad input.
  struct Triple {
    SubsetMask wants, side_info, prohibited;
  };
  ProblemInstance(int n, const std::vector<Triple>& parties);

  int n() const { return n_; }
  int m() const { return static_cast<int>(parties_.size()); }
  const std::vector<Party>& parties() const { return parties_; }
  const Party& party(int index) const { return parties_.at(index); }  // 0-based
  SubsetMask all() const { return SubsetMask::full(n_); }

  bool has_receiver() const;
  bool is_secure() const;  // some P_i non-empty
  // Union of all W_i.
  SubsetMask requested() const;

  std::vector<Violation> validate() const;
  bool is_valid() const { return validate().empty(); }

  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;

 private:
  int n_;
  std::vector<Party> parties_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Parses the text format. Throws ParseError for syntax problems, index
// range or duplicate errors, and InvalidInstance for model violations.
ProblemInstance parse_problem(std::string_view text, Notation notation);

// Canonical A-form text: parties in input order, fields sorted.
std::string serialize_problem(const ProblemInstance& instance);

// {"n": .., "notation": "A", "parties": [{"W": [..], "A": [..], "P": [..]}]}
// B-form documents carry "B" in place of "A".
nlohmann::ordered_json problem_to_json(const ProblemInstance& instance);
ProblemInstance problem_from_json(const nlohmann::json& doc);

}  // namespace sic

#endif  // SIC_PROBLEM_HPP_
