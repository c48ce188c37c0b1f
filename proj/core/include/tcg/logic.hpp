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

// Logics as ordered lists of inference rules, their text format, and the
// bundled logic and problem library.
//
// Logic file format (one statement per line, '#' starts a comment):
//
//   logic <name> occurs_check=<on|off>
//   goal <term> .                                  (optional)
//   rule <name>: <head-term> <- <body-term> , ... .
//   rule <name>: <head-term> .                     (axiom)
//
// Problem file format:
//
//   problem <id>: <ground-term> .

#ifndef TCG_LOGIC_HPP_
#define TCG_LOGIC_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcg/term.hpp"

namespace tcg {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Head and body share variables, numbered 0..num_vars-1 in first-occurrence
// order (head first, then body left to right).
struct InferenceRule {
  std::string name;
  Term head;
  std::vector<Term> body;
  VarId num_vars = 0;
  std::vector<std::string> var_names;

  bool is_axiom() const { return body.empty(); }
};

struct LogicDef {
  std::string name;
  std::vector<InferenceRule> rules;
  bool occurs_check = true;
  // What the adversary must construct; exactly one distinct variable.
  Term goal_template = Term::variable(0);
  // Sorted ids of every atom occurring in the rules or the goal template.
  std::vector<Symbol> symbols;

  std::size_t action_space() const { return rules.size(); }
  bool uses_symbol(Symbol s) const;
  std::optional<std::size_t> rule_index(std::string_view rule_name) const;
};

// Checks the structural invariants and fills in `symbols`.
// Throws ValidationError naming the offending rule.
void finalize_logic(LogicDef& logic);

LogicDef parse_logic(std::string_view text);
LogicDef load_logic(const std::filesystem::path& path);
std::string format_logic(const LogicDef& logic);
void save_logic(const LogicDef& logic, const std::filesystem::path& path);

// Axioms whose head unifies with neither the goal template nor any body
// term. The bundled logics have none.
std::vector<std::string> dead_axioms(const LogicDef& logic);

struct Problem {
  std::string id;
  Term conjecture;
};

struct ProblemSet {
  std::string name;
  std::vector<Problem> problems;
};

ProblemSet parse_problems(std::string_view text, std::string name);
ProblemSet load_problems(const std::filesystem::path& path);
std::string format_problems(const ProblemSet& set);

// Rule lines are a convenience for programmatic logic construction.
InferenceRule parse_rule(std::string_view name, std::string_view head,
                         const std::vector<std::string_view>& body);

// The bundled library. Names: fig2-mini, int-prop-sequent, cl-prop-sequent,
// modal-k, modal-t, modal-s4, modal-s5, linear-prop, fo-tableaux,
// sokoban-6x6.
std::vector<std::string> bundled_logic_names();
std::vector<LogicDef> bundled_logics();
// Throws std::out_of_range for unknown names.
const LogicDef& bundled_logic(std::string_view name);
std::shared_ptr<const LogicDef> bundled_logic_ptr(std::string_view name);
// Test problems shipped for a bundled logic (empty set if none).
ProblemSet bundled_problems(std::string_view logic_name);
// Per-phase move cap the bundled logic is meant to be played with.
int recommended_move_cap(std::string_view logic_name);

}  // namespace tcg

#endif  // TCG_LOGIC_HPP_
