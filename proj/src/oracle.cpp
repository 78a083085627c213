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


#include "sic/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include "sic/spm.hpp"

namespace sic {

namespace {

// Bits of the tuple holding the messages in S.
Mask spread(SubsetMask s, int t) {
  Mask out = 0;
  for (int k : s.members()) out |= ((Mask{1} << t) - 1) << ((k - 1) * t);
  return out;
}

mpz_class power(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

std::string CodeRate::to_string() const {
  if (auto q = exact()) return format_rational(*q);
  return std::to_string(t) + "/log2(" + std::to_string(M) + ")";
}

double CodeRate::approx() const { return t / std::log2(static_cast<double>(M)); }

std::optional<Rational> CodeRate::exact() const {
  if (!is_power_of_two(M) || M < 2) return std::nullopt;
  Rational q(t, std::countr_zero(static_cast<unsigned>(M)));
  q.canonicalize();
  return q;
}

bool CodeRate::at_most(const Rational& q) const {
  if (M < 2 || sgn(q) <= 0) return false;
  // t / log2 M <= a / b  <=>  2^(t b) <= M^a
  const mpz_class& a = q.get_num();
  const mpz_class& b = q.get_den();
  const mpz_class bt = b * t;
  if (!a.fits_ulong_p() || !bt.fits_ulong_p()) {
    throw std::overflow_error("rate comparison exponent");
  }
  return power(2, bt.get_ui()) <= power(M, a.get_ui());
}

bool CodeRate::at_most(const BoundValue& bound) const {
  switch (bound.kind()) {
    case BoundValue::Kind::kPlusInfinity:
      return true;
    case BoundValue::Kind::kFinite:
    case BoundValue::Kind::kDegenerateZero:
      return at_most(bound.value());
    default:
      return false;
  }
}

bool operator<(const CodeRate& a, const CodeRate& b) {
  // a.t / log a.M < b.t / log b.M  <=>  b.M^a.t < a.M^b.t
  return power(b.M, a.t) < power(a.M, b.t);
}

bool operator==(const CodeRate& a, const CodeRate& b) {
  return power(b.M, a.t) == power(a.M, b.t);
}

bool CodeVerdict::valid() const {
  if (!surjective || rate.M < 2) return false;
  for (bool ok : decoding_ok) {
    if (!ok) return false;
  }
  for (const SecurityVerdict& s : security) {
    if (!s.ok) return false;
  }
  return true;
}

namespace {

void check_dimensions(const ProblemInstance& instance, const CodeTable& code) {
  if (code.n != instance.n()) {
    throw DimensionMismatch("code has " + std::to_string(code.n) +
                            " messages, instance has " +
                            std::to_string(instance.n()));
  }
  if (code.t < 1 || code.n * code.t > 2 * kMaxOracleTupleBits) {
    throw DimensionMismatch("unsupported message length");
  }
  if (code.encode.size() != (std::size_t{1} << (code.n * code.t))) {
    throw DimensionMismatch("table must list every message tuple");
  }
  if (code.M < 1) throw DimensionMismatch("codeword count must be positive");
  for (std::uint16_t y : code.encode) {
    if (y >= code.M) throw DimensionMismatch("codeword out of range");
  }
}

// Counts preimages per (y, x_A, x_j) and tests independence of x_j.
class SecurityCounter {
 public:
  SecurityCounter(SubsetMask side_info, int message, int t, int M)
      : a_bits_(spread(side_info, t)),
        j_bits_(spread(SubsetMask::singleton(message), t)),
        a_size_(std::size_t{1} << (side_info.size() * t)),
        j_size_(std::size_t{1} << t),
        counts_(static_cast<std::size_t>(M) * a_size_ * j_size_, 0) {}

  bool independent(const std::vector<std::uint16_t>& encode) {
    std::fill(counts_.begin(), counts_.end(), 0);
    for (Mask u = 0; u < encode.size(); ++u) {
      const std::size_t key = (encode[u] * a_size_ + extract_bits(u, a_bits_)) *
                                  j_size_ +
                              extract_bits(u, j_bits_);
      ++counts_[key];
    }
    for (std::size_t base = 0; base < counts_.size(); base += j_size_) {
      for (std::size_t x = 1; x < j_size_; ++x) {
        if (counts_[base + x] != counts_[base]) return false;
      }
    }
    return true;
  }

 private:
  Mask a_bits_;
  Mask j_bits_;
  std::size_t a_size_;
  std::size_t j_size_;
  std::vector<int> counts_;
};

}  // namespace

CodeVerdict check_code(const ProblemInstance& instance, const CodeTable& code) {
  check_dimensions(instance, code);
  CodeVerdict verdict;
  verdict.rate = {code.t, code.M};
  std::vector<bool> seen(code.M, false);
  for (std::uint16_t y : code.encode) seen[y] = true;
  verdict.surjective = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });

  for (const Party& p : instance.parties()) {
    bool ok = true;
    if (!p.is_eavesdropper()) {
      const Mask a_bits = spread(p.side_info, code.t);
      const Mask w_bits = spread(p.wants, code.t);
      std::map<std::pair<int, Mask>, Mask> decoded;
      for (Mask u = 0; u < code.num_tuples() && ok; ++u) {
        auto [it, fresh] =
            decoded.try_emplace({code.encode[u], u & a_bits}, u & w_bits);
        if (!fresh && it->second != (u & w_bits)) ok = false;
      }
    }
    verdict.decoding_ok.push_back(ok);
  }
  for (int i = 0; i < instance.m(); ++i) {
    const Party& p = instance.party(i);
    for (int j : p.prohibited.members()) {
      SecurityCounter counter(p.side_info, j, code.t, code.M);
      verdict.security.push_back({i + 1, j, counter.independent(code.encode)});
    }
  }
  return verdict;
}

LogLinear conditional_entropy(const CodeTable& code, SubsetMask given) {
  const Mask g_bits = spread(given, code.t);
  const std::size_t g_size = std::size_t{1} << (given.size() * code.t);
  std::vector<long> counts(g_size * code.M, 0);
  for (Mask u = 0; u < code.num_tuples(); ++u) {
    ++counts[extract_bits(u, g_bits) * code.M + code.encode[u]];
  }
  // H = log2(K) - (1/2^(nt)) sum c log2 c, K tuples per value of X_given.
  std::map<long, long> weight;  // c -> sum of c over cells with count c
  for (long c : counts) {
    if (c > 1) weight[c] += c;
  }
  LogLinear sum;
  for (const auto& [c, w] : weight) sum += LogLinear::log2_of(c) * Rational(w);
  sum *= Rational(mpz_class(1), mpz_class(code.num_tuples()));
  const int free_bits = (code.n - given.size()) * code.t;
  return LogLinear::rational(free_bits) - sum;
}

LogLinear mutual_information(const CodeTable& code, SubsetMask about,
                             SubsetMask given) {
  return conditional_entropy(code, given) -
         conditional_entropy(code, given | about);
}

std::vector<LogLinear> entropic_set_function(const CodeTable& code) {
  const SubsetMask all = SubsetMask::full(code.n);
  std::vector<LogLinear> g(std::size_t{1} << code.n);
  for (Mask s = 0; s < g.size(); ++s) {
    g[s] = conditional_entropy(code, SubsetMask(s).complement(code.n));
  }
  (void)all;
  return g;
}

std::vector<EntropicViolation> check_entropic_set_function(
    const ProblemInstance& instance, const CodeTable& code) {
  check_dimensions(instance, code);
  const SpmLp lp =
      build_spm_lp(instance, std::vector<Rational>(instance.n(), Rational(code.t)));
  const std::vector<LogLinear> g = entropic_set_function(code);
  const LogLinear log_m = LogLinear::log2_of(code.M);
  auto name = [](int v) {
    if (v == SpmLp::rate_var()) return std::string("R");
    return "g" + SubsetMask(static_cast<Mask>(v - 1)).to_string();
  };
  std::vector<EntropicViolation> out;
  for (const LinearConstraint& c : lp.constraints) {
    LogLinear lhs;
    std::string text;
    for (const auto& [v, coef] : c.terms) {
      lhs += (v == SpmLp::rate_var() ? LogLinear::rational(1) : g[v - 1]) * coef;
      if (!text.empty()) text += ' ';
      text += format_rational(coef) + ' ' + name(v);
    }
    const LogLinear diff = lhs - log_m * c.rhs;
    const bool ok = c.sense == LinearConstraint::Sense::kEqual ? diff.is_zero()
                                                               : diff.sign() <= 0;
    if (!ok) {
      text += c.sense == LinearConstraint::Sense::kEqual ? " = " : " <= ";
      text += format_rational(c.rhs);
      out.push_back({c.family, text});
    }
  }
  return out;
}

void check_oracle_limits(const ProblemInstance& instance, int max_t, int max_M) {
  if (max_t < 1) throw std::invalid_argument("max t must be at least 1");
  if (instance.n() * max_t > kMaxOracleTupleBits) {
    throw GuardExceeded("n * max_t = " + std::to_string(instance.n() * max_t) +
                        " exceeds " + std::to_string(kMaxOracleTupleBits));
  }
  if (max_M > kMaxOracleCodewords) {
    throw GuardExceeded("max_M = " + std::to_string(max_M) + " exceeds " +
                        std::to_string(kMaxOracleCodewords));
  }
}

namespace {

class ColoringSearch {
 public:
  ColoringSearch(const ProblemInstance& instance, int t, int M, long budget,
                 const std::function<bool(const CodeTable&)>& visit)
      : t_(t), M_(M), budget_(budget), visit_(visit) {
    code_.n = instance.n();
    code_.t = t;
    code_.M = M;
    const std::size_t size = std::size_t{1} << (instance.n() * t);
    code_.encode.assign(size, 0);
    words_ = (size + 63) / 64;
    conflicts_.assign(size * words_, 0);
    for (const Party& p : instance.parties()) {
      if (p.is_eavesdropper()) continue;
      const Mask a_bits = spread(p.side_info, t);
      const Mask w_bits = spread(p.wants, t);
      for (Mask v = 0; v < size; ++v) {
        for (Mask u = 0; u < v; ++u) {
          if ((u & a_bits) == (v & a_bits) && (u & w_bits) != (v & w_bits)) {
            conflicts_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
          }
        }
      }
    }
    color_sets_.assign(static_cast<std::size_t>(M) * words_, 0);
    for (int i = 0; i < instance.m(); ++i) {
      const Party& p = instance.party(i);
      for (int j : p.prohibited.members()) {
        counters_.emplace_back(p.side_info, j, t, M);
      }
    }
  }

  // Returns the number of valid codes visited.
  long run() {
    if (static_cast<std::size_t>(M_) > code_.encode.size() || M_ < 1) return 0;
    assign(0, 0);
    used_ = 1;
    descend(1);
    return found_;
  }

  long nodes() const { return nodes_; }

 private:
  void assign(Mask v, int c) {
    code_.encode[v] = static_cast<std::uint16_t>(c);
    color_sets_[c * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  }
  void unassign(Mask v, int c) {
    color_sets_[c * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64));
  }
  bool clashes(Mask v, int c) const {
    const std::uint64_t* adj = &conflicts_[v * words_];
    const std::uint64_t* set = &color_sets_[c * words_];
    for (std::size_t w = 0; w <= v / 64; ++w) {
      if (adj[w] & set[w]) return true;
    }
    return false;
  }

  // Returns false to stop the whole search.
  bool descend(Mask v) {
    if (++nodes_ > budget_) {
      throw GuardExceeded("oracle node budget exhausted at t=" +
                          std::to_string(t_) + ", M=" + std::to_string(M_));
    }
    const std::size_t size = code_.encode.size();
    if (v == size) {
      if (used_ != M_) return true;
      for (SecurityCounter& counter : counters_) {
        if (!counter.independent(code_.encode)) return true;
      }
      ++found_;
      return visit_(code_);
    }
    // Enough tuples must remain to introduce the missing codewords.
    const int top = std::min(used_, M_ - 1);
    for (int c = 0; c <= top; ++c) {
      const bool fresh = c == used_;
      if (!fresh && size - v - 1 < static_cast<std::size_t>(M_ - used_)) continue;
      if (!fresh && clashes(v, c)) continue;
      assign(v, c);
      if (fresh) ++used_;
      const bool go_on = descend(v + 1);
      if (fresh) --used_;
      unassign(v, c);
      if (!go_on) return false;
    }
    return true;
  }

  int t_;
  int M_;
  long budget_;
  const std::function<bool(const CodeTable&)>& visit_;
  CodeTable code_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> conflicts_;   // earlier conflicting tuples
  std::vector<std::uint64_t> color_sets_;  // tuples holding each codeword
  std::vector<SecurityCounter> counters_;
  int used_ = 0;
  long nodes_ = 0;
  long found_ = 0;
};

struct PairOutcome {
  bool feasible = false;
  std::optional<CodeTable> witness;
  long nodes = 0;
};

PairOutcome search_pair(const ProblemInstance& instance, int t, int M,
                        long budget) {
  PairOutcome out;
  std::function<bool(const CodeTable&)> first = [&](const CodeTable& code) {
    out.witness = code;
    return false;
  };
  ColoringSearch search(instance, t, M, budget, first);
  out.feasible = search.run() > 0;
  out.nodes = search.nodes();
  return out;
}

}  // namespace

long for_each_valid_code(const ProblemInstance& instance, int t, int M,
                         const std::function<bool(const CodeTable&)>& visit,
                         long node_budget) {
  check_oracle_limits(instance, t, M);
  ColoringSearch search(instance, t, M, node_budget, visit);
  return search.run();
}

bool is_feasible_at(const ProblemInstance& instance, int t, int M,
                    long node_budget) {
  check_oracle_limits(instance, t, M);
  return search_pair(instance, t, M, node_budget).feasible;
}

OracleResult oracle_best_rate(const ProblemInstance& instance,
                              const OracleOptions& options) {
  check_oracle_limits(instance, options.max_t, options.max_M);
  struct Job {
    int t, M;
  };
  std::vector<Job> jobs;
  for (int t = 1; t <= options.max_t; ++t) {
    const long tuples = 1L << (instance.n() * t);
    for (int M = 2; M <= options.max_M && M <= tuples; ++M) jobs.push_back({t, M});
  }

  OracleResult result;
  auto consider = [&](const Job& job, PairOutcome& outcome) {
    result.nodes += outcome.nodes;
    if (!outcome.feasible) return;
    const CodeRate rate{job.t, job.M};
    if (!result.best || *result.best < rate) {
      result.best = rate;
      result.witness = std::move(outcome.witness);
    }
  };

  if (options.threads <= 1) {
    // Per t, the first feasible M is the best; skip pairs that cannot win.
    for (int t = 1; t <= options.max_t; ++t) {
      for (const Job& job : jobs) {
        if (job.t != t) continue;
        const CodeRate rate{job.t, job.M};
        if (result.best && !(*result.best < rate)) break;
        PairOutcome outcome = search_pair(instance, job.t, job.M, options.node_budget);
        const bool feasible = outcome.feasible;
        consider(job, outcome);
        if (feasible) break;
      }
    }
    return result;
  }

  std::vector<PairOutcome> outcomes(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        outcomes[k] = search_pair(instance, jobs[k].t, jobs[k].M, options.node_budget);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(options.threads, static_cast<int>(jobs.size()));
  for (int k = 0; k < count; ++k) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t k = 0; k < jobs.size(); ++k) consider(jobs[k], outcomes[k]);
  return result;
}

std::string format_code_table(const CodeTable& code) {
  std::ostringstream out;
  for (Mask u = 0; u < code.num_tuples(); ++u) {
    for (int k = 1; k <= code.n; ++k) {
      const Mask value = code.message_value(u, k);
      for (int b = code.t - 1; b >= 0; --b) out << ((value >> b) & 1U);
      out << ' ';
    }
    out << "-> " << code.encode[u] << '\n';
  }
  return out.str();
}

}  // namespace sic
