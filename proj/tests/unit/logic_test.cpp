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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tcg/logic.hpp"
#include "tcg/unify.hpp"

namespace tcg {
namespace {

constexpr const char* kTiny = R"(# comment line
logic tiny occurs_check=off
goal holds(X) .
rule ax: holds(a) .
rule step: holds(f(X)) <- holds(X) , holds(X) .   # trailing comment
)";

TEST(LogicTest, ParsesRulesAndHeader) {
  LogicDef l = parse_logic(kTiny);
  EXPECT_EQ(l.name, "tiny");
  EXPECT_FALSE(l.occurs_check);
  ASSERT_EQ(l.action_space(), 2u);
  EXPECT_TRUE(l.rules[0].is_axiom());
  EXPECT_EQ(l.rules[1].body.size(), 2u);
  EXPECT_EQ(l.rules[1].num_vars, 1u);
  EXPECT_EQ(l.rules[1].var_names, (std::vector<std::string>{"X"}));
  EXPECT_EQ(l.rules[1].body[0], l.rules[1].body[1]);
  EXPECT_EQ(format_term(l.goal_template), "holds(_0)");
  EXPECT_EQ(l.rule_index("step"), 1u);
  EXPECT_FALSE(l.rule_index("nope"));
  EXPECT_TRUE(l.uses_symbol(Symbol::intern("holds")));
  EXPECT_TRUE(l.uses_symbol(Symbol::intern("f")));
  EXPECT_FALSE(l.uses_symbol(Symbol::intern("unused_atom_q")));
}

TEST(LogicTest, DefaultGoalTemplateIsAVariable) {
  LogicDef l = parse_logic("logic v occurs_check=on\nrule r: p .\n");
  EXPECT_TRUE(l.goal_template.is_variable());
  EXPECT_TRUE(l.occurs_check);
}

TEST(LogicTest, FormatRoundTrip) {
  LogicDef l = parse_logic(kTiny);
  LogicDef back = parse_logic(format_logic(l));
  EXPECT_EQ(back.name, l.name);
  EXPECT_EQ(back.occurs_check, l.occurs_check);
  ASSERT_EQ(back.rules.size(), l.rules.size());
  for (std::size_t i = 0; i < l.rules.size(); ++i) {
    EXPECT_EQ(back.rules[i].name, l.rules[i].name);
    EXPECT_EQ(back.rules[i].head, l.rules[i].head);
    EXPECT_EQ(back.rules[i].body, l.rules[i].body);
  }
  EXPECT_EQ(back.goal_template, l.goal_template);
}

TEST(LogicTest, SaveAndLoad) {
  auto path = std::filesystem::temp_directory_path() / "tcg_logic_test.logic";
  save_logic(parse_logic(kTiny), path);
  LogicDef l = load_logic(path);
  EXPECT_EQ(l.name, "tiny");
  std::filesystem::remove(path);
  EXPECT_THROW(load_logic(path), std::runtime_error);
}

TEST(LogicTest, ValidationErrors) {
  EXPECT_THROW(parse_logic("logic e occurs_check=on\n"), ValidationError);
  EXPECT_THROW(parse_logic("logic d occurs_check=on\nrule r: p .\nrule r: q .\n"),
               ValidationError);
  EXPECT_THROW(parse_logic("logic h occurs_check=on\nrule r: X <- p(X) .\n"),
               ValidationError);
  EXPECT_THROW(parse_logic("logic g occurs_check=on\ngoal p(X, Y) .\nrule r: p(a, b) .\n"),
               ValidationError);
  EXPECT_THROW(parse_logic("logic g occurs_check=on\ngoal p(a) .\nrule r: p(a) .\n"),
               ValidationError);
}

TEST(LogicTest, ParseErrorsCarryLines) {
  EXPECT_THROW(parse_logic("rule r: p .\n"), ParseError);
  EXPECT_THROW(parse_logic("logic x occurs_check=maybe\nrule r: p .\n"), ParseError);
  try {
    parse_logic("logic x occurs_check=on\nrule r: p .\nrule s: q( .\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_logic("logic x occurs_check=on\nrule r: p\n"), ParseError);
}

TEST(LogicTest, ParseRuleHelper) {
  InferenceRule r = parse_rule("mp", "t(B)", {"t(A)", "t(imp(A, B))"});
  EXPECT_EQ(r.name, "mp");
  EXPECT_EQ(r.num_vars, 2u);
  EXPECT_EQ(format_term(r.head, r.var_names), "t(B)");
  EXPECT_EQ(format_term(r.body[1], r.var_names), "t(imp(A, B))");
}

TEST(LogicTest, DeadAxioms) {
  LogicDef l = parse_logic(
      "logic x occurs_check=on\ngoal p(X) .\nrule live: p(a) .\nrule dead: q(b) .\n"
      "rule step: p(f(X)) <- p(X) .\n");
  EXPECT_EQ(dead_axioms(l), (std::vector<std::string>{"dead"}));
}

TEST(ProblemTest, ParsesAndValidates) {
  ProblemSet set = parse_problems("problem one: p(a) .\n# skip\nproblem two: q .\n", "s");
  ASSERT_EQ(set.problems.size(), 2u);
  EXPECT_EQ(set.name, "s");
  EXPECT_EQ(set.problems[1].id, "two");
  EXPECT_THROW(parse_problems("problem x: p(X) .\n", "s"), ValidationError);
  EXPECT_THROW(parse_problems("problem x: p .\nproblem x: q .\n", "s"), ValidationError);
  EXPECT_THROW(parse_problems("problem x p .\n", "s"), ParseError);
  ProblemSet back = parse_problems(format_problems(set), "s");
  ASSERT_EQ(back.problems.size(), 2u);
  EXPECT_EQ(back.problems[0].conjecture, set.problems[0].conjecture);
}

TEST(BundledTest, LibraryIsComplete) {
  std::vector<std::string> names = bundled_logic_names();
  EXPECT_EQ(names.size(), 10u);
  for (const char* want : {"fig2-mini", "int-prop-sequent", "cl-prop-sequent", "modal-k",
                           "modal-t", "modal-s4", "modal-s5", "linear-prop",
                           "fo-tableaux", "sokoban-6x6"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
  EXPECT_THROW(bundled_logic("no-such-logic"), std::out_of_range);
  EXPECT_EQ(bundled_logic_ptr("fig2-mini")->action_space(), 6u);
}

TEST(BundledTest, EveryLogicRoundTripsAndHasNoDeadAxioms) {
  for (const LogicDef& l : bundled_logics()) {
    SCOPED_TRACE(l.name);
    EXPECT_TRUE(dead_axioms(l).empty());
    LogicDef back = parse_logic(format_logic(l));
    ASSERT_EQ(back.rules.size(), l.rules.size());
    for (std::size_t i = 0; i < l.rules.size(); ++i) {
      EXPECT_TRUE(is_variant(back.rules[i].head, l.rules[i].head));
    }
    EXPECT_TRUE(recommended_move_cap(l.name) == 64 || recommended_move_cap(l.name) == 128);
  }
}

TEST(BundledTest, ProblemsAreGroundAndPresent) {
  EXPECT_EQ(bundled_problems("fig2-mini").problems.size(), 20u);
  for (const std::string& name : bundled_logic_names()) {
    ProblemSet set = bundled_problems(name);
    EXPECT_FALSE(set.problems.empty()) << name;
    for (const Problem& p : set.problems) EXPECT_TRUE(p.conjecture.is_ground()) << p.id;
  }
}

TEST(BundledTest, FilesOnDiskMatchEmbeddedCopies) {
  std::filesystem::path dir = std::filesystem::path(TCG_SOURCE_DIR) / "core/data/logics";
  for (const LogicDef& l : bundled_logics()) {
    std::filesystem::path file = dir / (l.name + ".logic");
    if (!std::filesystem::exists(file)) continue;  // generated logics
    LogicDef disk = load_logic(file);
    EXPECT_EQ(disk.rules.size(), l.rules.size()) << l.name;
  }
  ProblemSet fig = load_problems(std::filesystem::path(TCG_SOURCE_DIR) / "tests/fig2.problems");
  EXPECT_EQ(fig.problems.size(), 5u);
}

}  // namespace
}  // namespace tcg
