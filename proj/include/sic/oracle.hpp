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


// Exhaustive search over deterministic encoders for small instances.
//
// Every message is a t-bit string, so a message tuple is an (n t)-bit
// integer with message k in bits (k-1)t .. kt-1. An encoder maps each tuple
// to one of M codewords 0..M-1 and must use all of them. Decoding at every
// receiver is equivalent to a proper coloring of the confusion graph
// (tuples that agree on A_i but differ on W_i), so the search walks
// colorings in restricted-growth order: tuple 0 gets codeword 0 and new
// codewords appear in increasing order. Security is checked on complete
// tables by counting preimages.

#ifndef SIC_ORACLE_HPP_
#define SIC_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sic/log_linear.hpp"
#include "sic/problem.hpp"
#include "sic/values.hpp"

namespace sic {

inline constexpr int kMaxOracleTupleBits = 12;  // n t
inline constexpr int kMaxOracleCodewords = 16;

struct CodeTable {
  int n = 0;
  int t = 0;
  int M = 0;
  std::vector<std::uint16_t> encode;  // indexed by message tuple

  std::size_t num_tuples() const { return encode.size(); }
  // The t bits of message k (1-based) in tuple u.
  Mask message_value(Mask u, int k) const {
    return (u >> ((k - 1) * t)) & ((Mask{1} << t) - 1);
  }
};

// Rate t / log2(M), compared exactly.
struct CodeRate {
  int t = 0;
  int M = 0;

  // "t/k" when M = 2^k, else "t/log2(M)".
  std::string to_string() const;
  double approx() const;
  // Rational value, present only when M is a power of two.
  std::optional<Rational> exact() const;
  // Exact test t / log2(M) <= q.
  bool at_most(const Rational& q) const;
  // Exact test t / log2(M) <= the bound; +inf always holds, degenerate zero
  // compares as zero, n/a and infeasible never hold.
  bool at_most(const BoundValue& bound) const;
};
bool operator<(const CodeRate& a, const CodeRate& b);
bool operator==(const CodeRate& a, const CodeRate& b);

struct SecurityVerdict {
  int party;    // 1-based
  int message;  // 1-based, in P_party
  bool ok;
};

struct CodeVerdict {
  bool surjective = false;
  std::vector<bool> decoding_ok;  // per party; eavesdroppers are always ok
  std::vector<SecurityVerdict> security;
  CodeRate rate;

  bool valid() const;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws DimensionMismatch when the table does not fit the instance.
CodeVerdict check_code(const ProblemInstance& instance, const CodeTable& code);

// H(Y | X_given) in bits, with uniform independent messages.
LogLinear conditional_entropy(const CodeTable& code, SubsetMask given);
// I(X_about ; Y | X_given) in bits.
LogLinear mutual_information(const CodeTable& code, SubsetMask about,
                             SubsetMask given);

// g(S) log2(M) = H(Y | X_{[n] \ S}) for every S, indexed by mask.
std::vector<LogLinear> entropic_set_function(const CodeTable& code);

struct EntropicViolation {
  std::string family;  // empty, total, monotone, submodular, security, rate
  std::string constraint;
};
// Checks the entropic set function of a code against every constraint of
// the polymatroidal LP for the instance, with per-message rate t / log2(M).
std::vector<EntropicViolation> check_entropic_set_function(
    const ProblemInstance& instance, const CodeTable& code);

struct OracleOptions {
  int max_t = 1;
  int max_M = 4;
  // Search nodes allowed per (t, M) pair before GuardExceeded.
  long node_budget = 50'000'000;
  int threads = 1;
};

struct OracleResult {
  std::optional<CodeRate> best;
  std::optional<CodeTable> witness;
  long nodes = 0;  // search nodes over every (t, M) tried
};

// Checks the guard limits; throws GuardExceeded.
void check_oracle_limits(const ProblemInstance& instance, int max_t, int max_M);

// Calls visit on every valid code at exactly (t, M), in restricted-growth
// order; stops early when visit returns false. Returns the number visited.
long for_each_valid_code(const ProblemInstance& instance, int t, int M,
                         const std::function<bool(const CodeTable&)>& visit,
                         long node_budget = 50'000'000);

bool is_feasible_at(const ProblemInstance& instance, int t, int M,
                    long node_budget = 50'000'000);

// Highest rate over t <= max_t, 2 <= M <= max_M. Ties go to the smaller t;
// the witness is the first valid table in search order.
OracleResult oracle_best_rate(const ProblemInstance& instance,
                              const OracleOptions& options);

// One line per tuple: message bit strings (message 1 first) then the
// codeword, e.g. "01 10 -> 2".
std::string format_code_table(const CodeTable& code);

}  // namespace sic

#endif  // SIC_ORACLE_HPP_
