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

#include "sic/problem.hpp"

#include <cctype>
#include <optional>

namespace sic {

Notation parse_notation(std::string_view text) {
  if (text == "A" || text == "a") return Notation::kSideInfo;
  if (text == "B" || text == "b") return Notation::kInterfering;
  throw std::invalid_argument("notation must be A or B, got '" +
                              std::string(text) + "'");
}

SubsetMask derive_interfering(SubsetMask wants, SubsetMask side_info, int n) {
  return (wants | side_info).complement(n);
}

ProblemInstance::ProblemInstance(int n, const std::vector<Triple>& parties)
    : n_(n) {
  parties_.reserve(parties.size());
  for (const Triple& t : parties) {
    parties_.push_back(Party{t.wants, t.side_info, t.prohibited,
                             derive_interfering(t.wants, t.side_info, n)});
  }
}

bool ProblemInstance::has_receiver() const {
  for (const Party& p : parties_) {
    if (!p.is_eavesdropper()) return true;
  }
  return false;
}

bool ProblemInstance::is_secure() const {
  for (const Party& p : parties_) {
    if (!p.prohibited.empty()) return true;
  }
  return false;
}

SubsetMask ProblemInstance::requested() const {
  SubsetMask r;
  for (const Party& p : parties_) r = r | p.wants;
  return r;
}

std::vector<Violation> ProblemInstance::validate() const {
  std::vector<Violation> out;
  if (n_ < 1 || n_ > kMaxMessages) {
    out.push_back({0, "n-range",
                   "n=" + std::to_string(n_) + " outside [1.." +
                       std::to_string(kMaxMessages) + "]"});
    return out;
  }
  if (parties_.empty()) {
    out.push_back({0, "no-parties", "instance has no parties"});
  }
  for (int i = 0; i < m(); ++i) {
    const Party& p = parties_[i];
    const int k = i + 1;
    const std::string at = " at party " + std::to_string(k);
    if (!p.wants.within(n_) || !p.side_info.within(n_) ||
        !p.prohibited.within(n_) || !p.interfering.within(n_)) {
      out.push_back({k, "index-range", "message index outside [1..n]" + at});
    }
    if (p.wants.intersects(p.side_info)) {
      out.push_back({k, "W-A-disjoint", "W∩A≠∅" + at});
    }
    if (p.interfering != derive_interfering(p.wants, p.side_info, n_)) {
      out.push_back({k, "B-complement", "B≠(A∪W)^c" + at});
    }
    if (!p.prohibited.is_subset_of(p.interfering)) {
      out.push_back({k, "P-in-B", "P⊄B" + at});
    }
  }
  return out;
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::string s = "invalid instance:";
  for (const Violation& v : violations) s += " " + v.message + ";";
  return s;
}

// Statement-level scanner with line/column tracking.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  int line() const { return line_; }
  int column() const { return column_; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  // Skips blanks and comments inside a statement; stops at a newline.
  void skip_blanks() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  // Skips any run of blanks, comments and statement separators.
  void skip_separators() {
    while (true) {
      skip_blanks();
      if (!at_end() && (peek() == '\n' || peek() == ';')) {
        advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, column_, what);
  }

  void expect(char c) {
    skip_blanks();
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" + found());
    }
    advance();
  }

  long read_int() {
    skip_blanks();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("expected an integer" + found());
    }
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000) fail("integer too large");
      advance();
    }
    return v;
  }

  std::string found() const {
    if (at_end()) return ", found end of input";
    const char c = peek();
    if (c == '\n') return ", found end of line";
    return std::string(", found '") + c + "'";
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

SubsetMask read_field(Scanner& sc, int n) {
  sc.skip_blanks();
  if (sc.peek() == '.') {
    sc.advance();
    return {};
  }
  SubsetMask field;
  while (true) {
    sc.skip_blanks();
    const int line = sc.line();
    const int column = sc.column();
    const long k = sc.read_int();
    if (k < 1 || k > n) {
      throw ParseError(line, column,
                       "message index " + std::to_string(k) +
                           " outside [1.." + std::to_string(n) + "]");
    }
    if (field.contains(static_cast<int>(k))) {
      throw ParseError(line, column,
                       "duplicate message index " + std::to_string(k));
    }
    field = field.with(static_cast<int>(k));
    sc.skip_blanks();
    if (sc.peek() != ',') return field;
    sc.advance();
  }
}

void check_or_throw(const ProblemInstance& instance,
                    std::vector<Violation> extra = {}) {
  std::vector<Violation> v = instance.validate();
  extra.insert(extra.end(), v.begin(), v.end());
  if (!extra.empty()) throw InvalidInstance(std::move(extra));
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)),
      violations_(std::move(violations)) {}

ProblemInstance parse_problem(std::string_view text, Notation notation) {
  Scanner sc(text);
  sc.skip_separators();
  if (sc.at_end()) sc.fail("expected 'n=<int>'");
  sc.expect('n');
  sc.expect('=');
  const int n_line = sc.line();
  const int n_column = sc.column();
  const long n = sc.read_int();
  if (n < 1 || n > kMaxMessages) {
    throw ParseError(n_line, n_column,
                     "n=" + std::to_string(n) + " outside [1.." +
                         std::to_string(kMaxMessages) + "]");
  }
  sc.skip_blanks();
  if (!sc.at_end() && sc.peek() != '\n' && sc.peek() != ';') {
    sc.fail("expected end of statement" + sc.found());
  }

  const int nn = static_cast<int>(n);
  std::vector<ProblemInstance::Triple> triples;
  std::vector<Violation> form_violations;
  while (true) {
    sc.skip_separators();
    if (sc.at_end()) break;
    const SubsetMask w = read_field(sc, nn);
    sc.expect('|');
    const SubsetMask middle = read_field(sc, nn);
    sc.expect('|');
    const SubsetMask p = read_field(sc, nn);
    sc.skip_blanks();
    if (!sc.at_end() && sc.peek() != '\n' && sc.peek() != ';') {
      sc.fail("expected end of party statement" + sc.found());
    }
    if (notation == Notation::kSideInfo) {
      triples.push_back({w, middle, p});
    } else {
      if (w.intersects(middle)) {
        form_violations.push_back(
            {static_cast<int>(triples.size()) + 1, "W-B-disjoint",
             "W∩B≠∅ at party " +
                 std::to_string(triples.size() + 1)});
      }
      triples.push_back({w, (w | middle).complement(nn), p});
    }
  }
  ProblemInstance instance(nn, triples);
  check_or_throw(instance, std::move(form_violations));
  return instance;
}

std::string serialize_problem(const ProblemInstance& instance) {
  auto field = [](SubsetMask s) {
    if (s.empty()) return std::string(".");
    std::string out;
    for (int k : s.members()) {
      if (!out.empty()) out += ',';
      out += std::to_string(k);
    }
    return out;
  };
  std::string out = "n=" + std::to_string(instance.n()) + "\n";
  for (const Party& p : instance.parties()) {
    out += field(p.wants) + "|" + field(p.side_info) + "|" +
           field(p.prohibited) + "\n";
  }
  return out;
}

nlohmann::ordered_json problem_to_json(const ProblemInstance& instance) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.n();
  doc["notation"] = "A";
  doc["parties"] = nlohmann::ordered_json::array();
  for (const Party& p : instance.parties()) {
    nlohmann::ordered_json party;
    party["W"] = p.wants.members();
    party["A"] = p.side_info.members();
    party["P"] = p.prohibited.members();
    doc["parties"].push_back(std::move(party));
  }
  return doc;
}

ProblemInstance problem_from_json(const nlohmann::json& doc) {
  auto fail = [](const std::string& what) -> ParseError {
    return ParseError(0, 0, "JSON instance: " + what);
  };
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw fail("missing integer field \"n\"");
  }
  const long n = doc["n"].get<long>();
  if (n < 1 || n > kMaxMessages) {
    throw fail("n=" + std::to_string(n) + " outside [1.." +
               std::to_string(kMaxMessages) + "]");
  }
  Notation notation = Notation::kSideInfo;
  if (doc.contains("notation")) {
    if (!doc["notation"].is_string()) throw fail("\"notation\" must be a string");
    try {
      notation = parse_notation(doc["notation"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
  }
  if (!doc.contains("parties") || !doc["parties"].is_array()) {
    throw fail("missing array field \"parties\"");
  }
  const int nn = static_cast<int>(n);
  const char* middle_key = notation == Notation::kSideInfo ? "A" : "B";
  auto read_set = [&](const nlohmann::json& party, const char* key,
                      std::size_t index) {
    SubsetMask s;
    if (!party.contains(key)) return s;
    const auto& arr = party[key];
    if (!arr.is_array()) {
      throw fail("party " + std::to_string(index + 1) + " field \"" + key +
                 "\" must be an array");
    }
    for (const auto& v : arr) {
      if (!v.is_number_integer()) {
        throw fail("party " + std::to_string(index + 1) + " field \"" + key +
                   "\" must hold integers");
      }
      const long k = v.get<long>();
      if (k < 1 || k > nn) {
        throw fail("message index " + std::to_string(k) + " outside [1.." +
                   std::to_string(nn) + "]");
      }
      if (s.contains(static_cast<int>(k))) {
        throw fail("duplicate message index " + std::to_string(k));
      }
      s = s.with(static_cast<int>(k));
    }
    return s;
  };
  std::vector<ProblemInstance::Triple> triples;
  std::vector<Violation> form_violations;
  const auto& parties = doc["parties"];
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (!parties[i].is_object()) throw fail("party entries must be objects");
    const SubsetMask w = read_set(parties[i], "W", i);
    const SubsetMask middle = read_set(parties[i], middle_key, i);
    const SubsetMask p = read_set(parties[i], "P", i);
    if (notation == Notation::kSideInfo) {
      triples.push_back({w, middle, p});
    } else {
      if (w.intersects(middle)) {
        form_violations.push_back({static_cast<int>(i) + 1, "W-B-disjoint",
                                   "W∩B≠∅ at party " +
                                       std::to_string(i + 1)});
      }
      triples.push_back({w, (w | middle).complement(nn), p});
    }
  }
  ProblemInstance instance(nn, triples);
  check_or_throw(instance, std::move(form_violations));
  return instance;
}

}  // namespace sic
