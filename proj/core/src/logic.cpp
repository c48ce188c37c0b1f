/* Copyright 2026 The tcg Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tcg/logic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "tcg/unify.hpp"

namespace tcg {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

void collect_symbols(const Term& t, std::set<Symbol>& out) {
  if (t.is_variable()) return;
  out.insert(t.atom());
  for (const Term& a : t.args()) collect_symbols(a, out);
}

// Cursor over one line of a logic or problem file.
class LineParser {
 public:
  LineParser(std::string_view line, int line_no)
      : line_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_no_, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < line_.size() &&
           std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }

  std::string_view word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_name_char(line_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return line_.substr(start, pos_ - start);
  }

  void expect(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) != token) {
      fail("expected '" + std::string(token) + "'");
    }
    pos_ += token.size();
  }

  bool try_consume(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  Term term(VarScope& scope) {
    TermReader reader(line_.substr(pos_), line_no_, static_cast<int>(pos_));
    Term t = reader.read(scope);
    pos_ += reader.position();
    return t;
  }

  void expect_end() {
    skip_space();
    if (pos_ != line_.size()) fail("unexpected text after '.'");
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view line_;
  int line_no_;
  std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = std::all_of(line.begin(), line.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (!blank) fn(line, line_no);
    if (end == text.size()) break;
    start = end + 1;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_rule_term(const Term& t, const InferenceRule& rule) {
  if (rule.var_names.size() == rule.num_vars) {
    return format_term(t, rule.var_names);
  }
  std::vector<std::string> names;
  for (VarId v = 0; v < rule.num_vars; ++v) names.push_back(letter_name(v));
  return format_term(t, names);
}

}  // namespace

bool LogicDef::uses_symbol(Symbol s) const {
  return std::binary_search(symbols.begin(), symbols.end(), s);
}

std::optional<std::size_t> LogicDef::rule_index(
    std::string_view rule_name) const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].name == rule_name) return i;
  }
  return std::nullopt;
}

void finalize_logic(LogicDef& logic) {
  if (logic.rules.empty()) {
    throw ValidationError("logic '" + logic.name + "' has no rules");
  }
  std::set<std::string> names;
  std::set<Symbol> symbols;
  for (const InferenceRule& rule : logic.rules) {
    if (!names.insert(rule.name).second) {
      throw ValidationError("duplicate rule name '" + rule.name + "'");
    }
    if (!rule.head.is_compound()) {
      throw ValidationError("rule '" + rule.name +
                            "': head must be a compound term or constant");
    }
    VarId bound = variable_bound(rule.head);
    for (const Term& b : rule.body) bound = std::max(bound, variable_bound(b));
    if (bound > rule.num_vars) {
      throw ValidationError("rule '" + rule.name +
                            "': variable ids exceed the rule's variable count");
    }
    collect_symbols(rule.head, symbols);
    for (const Term& b : rule.body) collect_symbols(b, symbols);
  }
  if (variables_of(logic.goal_template).size() != 1) {
    throw ValidationError("logic '" + logic.name +
                          "': goal template must contain exactly one variable");
  }
  collect_symbols(logic.goal_template, symbols);
  logic.symbols.assign(symbols.begin(), symbols.end());
}

InferenceRule parse_rule(std::string_view name, std::string_view head,
                         const std::vector<std::string_view>& body) {
  VarScope scope;
  InferenceRule rule;
  rule.name = std::string(name);
  rule.head = parse_term(head, scope);
  for (std::string_view b : body) rule.body.push_back(parse_term(b, scope));
  rule.num_vars = scope.count();
  rule.var_names = scope.names();
  return rule;
}

LogicDef parse_logic(std::string_view text) {
  LogicDef logic;
  bool have_header = false;
  bool have_goal = false;
  for_each_line(text, [&](std::string_view line, int line_no) {
    LineParser p(line, line_no);
    std::string_view keyword = p.word();
    if (!have_header) {
      if (keyword != "logic") p.fail("expected 'logic <name> occurs_check=...'");
      logic.name = std::string(p.word());
      p.expect("occurs_check=");
      std::string_view flag = p.word();
      if (flag == "on") {
        logic.occurs_check = true;
      } else if (flag == "off") {
        logic.occurs_check = false;
      } else {
        p.fail("occurs_check must be 'on' or 'off'");
      }
      p.expect_end();
      have_header = true;
      return;
    }
    if (keyword == "goal") {
      if (have_goal) p.fail("duplicate goal line");
      VarScope scope;
      logic.goal_template = p.term(scope);
      p.expect(".");
      p.expect_end();
      have_goal = true;
      return;
    }
    if (keyword != "rule") p.fail("expected 'rule' or 'goal'");
    InferenceRule rule;
    rule.name = std::string(p.word());
    p.expect(":");
    VarScope scope;
    rule.head = p.term(scope);
    if (p.try_consume("<-")) {
      rule.body.push_back(p.term(scope));
      while (p.try_consume(",")) rule.body.push_back(p.term(scope));
    }
    p.expect(".");
    p.expect_end();
    rule.num_vars = scope.count();
    rule.var_names = scope.names();
    logic.rules.push_back(std::move(rule));
  });
  if (!have_header) throw ParseError("missing 'logic' header line", 1, 1);
  finalize_logic(logic);
  return logic;
}

LogicDef load_logic(const std::filesystem::path& path) {
  return parse_logic(read_file(path));
}

std::string format_logic(const LogicDef& logic) {
  std::string out = "logic " + logic.name +
                    " occurs_check=" + (logic.occurs_check ? "on" : "off") +
                    "\n";
  if (!logic.goal_template.is_variable()) {
    std::vector<std::string> names = {"G"};
    out += "goal " +
           format_term(normalize_variables(logic.goal_template), names) +
           " .\n";
  }
  for (const InferenceRule& rule : logic.rules) {
    out += "rule " + rule.name + ": " + format_rule_term(rule.head, rule);
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      out += i == 0 ? " <- " : ", ";
      out += format_rule_term(rule.body[i], rule);
    }
    out += " .\n";
  }
  return out;
}

void save_logic(const LogicDef& logic, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_logic(logic);
}

std::vector<std::string> dead_axioms(const LogicDef& logic) {
  std::vector<std::string> dead;
  for (const InferenceRule& axiom : logic.rules) {
    if (!axiom.is_axiom()) continue;
    bool live = unify(axiom.head, offset_variables(logic.goal_template,
                                                   axiom.num_vars))
                    .has_value();
    for (const InferenceRule& rule : logic.rules) {
      if (live) break;
      for (const Term& b : rule.body) {
        if (unify(axiom.head, offset_variables(b, axiom.num_vars))) {
          live = true;
          break;
        }
      }
    }
    if (!live) dead.push_back(axiom.name);
  }
  return dead;
}

ProblemSet parse_problems(std::string_view text, std::string name) {
  ProblemSet set;
  set.name = std::move(name);
  std::set<std::string> ids;
  for_each_line(text, [&](std::string_view line, int line_no) {
    LineParser p(line, line_no);
    if (p.word() != "problem") p.fail("expected 'problem <id>: <term> .'");
    std::string id(p.word());
    p.expect(":");
    VarScope scope;
    Term conjecture = p.term(scope);
    p.expect(".");
    p.expect_end();
    if (!conjecture.is_ground()) {
      throw ValidationError("problem '" + id + "' (line " +
                            std::to_string(line_no) +
                            "): conjecture must be ground");
    }
    if (!ids.insert(id).second) {
      throw ValidationError("duplicate problem id '" + id + "' (line " +
                            std::to_string(line_no) + ")");
    }
    set.problems.push_back({std::move(id), std::move(conjecture)});
  });
  return set;
}

ProblemSet load_problems(const std::filesystem::path& path) {
  return parse_problems(read_file(path), path.stem().string());
}

std::string format_problems(const ProblemSet& set) {
  std::string out;
  for (const Problem& p : set.problems) {
    out += "problem " + p.id + ": " + format_term(p.conjecture) + " .\n";
  }
  return out;
}

}  // namespace tcg
