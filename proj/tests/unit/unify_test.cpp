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

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "reference_unifier.hpp"
#include "tcg/unify.hpp"

namespace tcg {
namespace {

Term T(const char* text, VarScope& scope) { return parse_term(text, scope); }

Term from_ref(const testing::RefTerm& r) {
  if (r.is_var) return Term::variable(r.var);
  std::vector<Term> args;
  for (const auto& a : r.args) args.push_back(from_ref(a));
  return Term::compound(r.functor, std::move(args));
}

TEST(UnifyTest, SimpleBindings) {
  VarScope s;
  Term a = T("f(X, g(Y))", s);
  Term b = T("f(a, g(h(X, b)))", s);
  auto sigma = unify(a, b);
  ASSERT_TRUE(sigma);
  EXPECT_EQ(format_term(apply_subst(*sigma, a), s.names()), "f(a, g(h(a, b)))");
  EXPECT_EQ(apply_subst(*sigma, a), apply_subst(*sigma, b));
}

TEST(UnifyTest, Clashes) {
  VarScope s;
  EXPECT_FALSE(unify(T("f(X)", s), T("g(X)", s)));
  EXPECT_FALSE(unify(T("f(X, Y)", s), T("f(X)", s)));
  EXPECT_FALSE(unify(T("f(a, X)", s), T("f(b, X)", s)));
  EXPECT_FALSE(unify(T("f(X, X)", s), T("f(a, b)", s)));
}

TEST(UnifyTest, VariableWithItself) {
  VarScope s;
  auto sigma = unify(T("X", s), T("X", s));
  ASSERT_TRUE(sigma);
  EXPECT_TRUE(sigma->empty());
}

TEST(UnifyTest, OccursCheck) {
  VarScope s;
  Term x = T("X", s);
  Term fx = T("f(X)", s);
  EXPECT_FALSE(unify(x, fx, true));
  auto cyclic = unify(x, fx, false);
  ASSERT_TRUE(cyclic);
  // The cycle is cut where the variable comes back.
  EXPECT_EQ(apply_subst(*cyclic, x), fx);
  EXPECT_FALSE(unify(T("g(Y, f(Y))", s), T("g(h(Z), Z)", s), true));
}

TEST(UnifyTest, ExtendsExistingSubstitution) {
  VarScope s;
  Substitution base;
  base.bind(s.id_for("X"), T("a", s));
  EXPECT_FALSE(unify(T("X", s), T("b", s), base));
  auto sigma = unify(T("f(X, Y)", s), T("f(Z, Z)", s), base);
  ASSERT_TRUE(sigma);
  EXPECT_EQ(apply_subst(*sigma, T("Y", s)), T("a", s));
}

TEST(UnifyTest, WalkAndNormalize) {
  VarScope s;
  Term x = T("X", s), y = T("Y", s);
  Substitution sub;
  sub.bind(x.var(), y);
  sub.bind(y.var(), T("g(a)", s));
  EXPECT_EQ(sub.walk(x), T("g(a)", s));
  EXPECT_TRUE(sub.bound(x.var()));
  Substitution n = sub.normalized();
  for (const auto& [v, t] : n.bindings()) EXPECT_TRUE(t.is_ground()) << v;
}

TEST(UnifyTest, AgreesWithReferenceOnRandomPairs) {
  std::mt19937_64 rng(99);
  int solvable = 0;
  for (int i = 0; i < 2000; ++i) {
    Term a = testing::random_term(rng, i % 5, 3);
    Term b = testing::random_term(rng, i % 5, 3);
    auto sigma = unify(a, b);
    auto theta = testing::ref_unify(testing::to_ref(a), testing::to_ref(b));
    ASSERT_EQ(sigma.has_value(), theta.has_value())
        << format_term(a) << " = " << format_term(b);
    if (!sigma) continue;
    ++solvable;
    // Most general unifiers agree up to a renaming of variables.
    EXPECT_TRUE(is_variant(apply_subst(*sigma, a), from_ref(testing::ref_apply(*theta, testing::to_ref(a)))))
        << format_term(a) << " = " << format_term(b);
  }
  EXPECT_GT(solvable, 100);
}

TEST(UnifyTest, OffsetVariables) {
  VarScope s;
  Term t = T("f(X, g(Y), a)", s);
  Term o = offset_variables(t, 10);
  EXPECT_EQ(variables_of(o), (std::vector<VarId>{10, 11}));
  EXPECT_EQ(offset_variables(T("a", s), 10), T("a", s));
}

TEST(UnifyTest, FreshenToConstants) {
  VarScope s;
  Term t = T("f(X, Y, X)", s);
  VarBank bank;
  Symbol c1 = Symbol::intern("c1");
  Term g = freshen_to_constants(t, bank, [&](Symbol x) { return x == c1; });
  EXPECT_EQ(format_term(g), "f(c2, c3, c2)");
  std::vector<Term> many = freshen_to_constants({T("p(X)", s), T("q(X, Z)", s)}, bank);
  EXPECT_EQ(format_term(many[0]), "p(c4)");
  EXPECT_EQ(format_term(many[1]), "q(c4, c5)");
}

TEST(UnifyTest, Variants) {
  VarScope s1, s2;
  EXPECT_TRUE(is_variant(T("f(X, g(Y, X))", s1), T("f(B, g(A, B))", s2)));
  EXPECT_FALSE(is_variant(T("f(X, X)", s1), T("f(A, B)", s2)));
  EXPECT_FALSE(is_variant(T("f(X, Y)", s1), T("f(A, A)", s2)));
  EXPECT_FALSE(is_variant(T("f(X)", s1), T("f(a)", s2)));
}

}  // namespace
}  // namespace tcg
