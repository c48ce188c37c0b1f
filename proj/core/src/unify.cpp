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

#include "tcg/unify.hpp"

#include <algorithm>
#include <unordered_map>

namespace tcg {

const Term* Substitution::lookup(VarId v) const {
  for (const auto& [var, term] : bindings_) {
    if (var == v) return &term;
  }
  return nullptr;
}

Term Substitution::walk(Term t) const {
  while (t.is_variable()) {
    const Term* next = lookup(t.var());
    if (!next) break;
    t = *next;
  }
  return t;
}

Substitution Substitution::normalized() const {
  Substitution out;
  out.bindings_.reserve(bindings_.size());
  for (const auto& [var, term] : bindings_) {
    out.bindings_.emplace_back(var, apply_subst(*this, term));
  }
  return out;
}

namespace {

// Occurs check through the current bindings.
bool occurs_under(VarId v, const Term& t, const Substitution& s) {
  if (t.is_ground()) return false;
  Term w = s.walk(t);
  if (w.is_variable()) return w.var() == v;
  for (const Term& a : w.args()) {
    if (occurs_under(v, a, s)) return true;
  }
  return false;
}

Term apply_guarded(const Substitution& s, const Term& t,
                   std::vector<VarId>& expanding) {
  if (t.is_ground() || s.empty()) return t;
  if (t.is_variable()) {
    const Term* bound = s.lookup(t.var());
    if (!bound) return t;
    if (std::find(expanding.begin(), expanding.end(), t.var()) !=
        expanding.end()) {
      return t;
    }
    expanding.push_back(t.var());
    Term out = apply_guarded(s, *bound, expanding);
    expanding.pop_back();
    return out;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply_guarded(s, a, expanding));
    changed = changed || args.back().identity() != a.identity();
  }
  if (!changed) return t;
  return Term::compound(t.atom(), std::move(args));
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b,
                                  const Substitution& s, bool occurs_check) {
  Substitution out = s;
  std::vector<std::pair<Term, Term>> work;
  work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = std::move(work.back());
    work.pop_back();
    if (x.identity() == y.identity()) continue;
    x = out.walk(std::move(x));
    y = out.walk(std::move(y));
    if (x.is_variable() && y.is_variable() && x.var() == y.var()) continue;
    if (x.is_variable() || y.is_variable()) {
      if (!x.is_variable()) std::swap(x, y);
      if (occurs_check && occurs_under(x.var(), y, out)) return std::nullopt;
      out.bind(x.var(), std::move(y));
      continue;
    }
    if (x.atom() != y.atom() || x.arity() != y.arity()) return std::nullopt;
    if (x.is_ground() && y.is_ground()) {
      if (x == y) continue;
      return std::nullopt;
    }
    for (std::size_t i = x.arity(); i-- > 0;) {
      work.emplace_back(x.arg(i), y.arg(i));
    }
  }
  return out;
}

std::optional<Substitution> unify(const Term& a, const Term& b,
                                  bool occurs_check) {
  return unify(a, b, Substitution(), occurs_check);
}

Term apply_subst(const Substitution& s, const Term& t) {
  std::vector<VarId> expanding;
  return apply_guarded(s, t, expanding);
}

Term offset_variables(const Term& t, VarId base) {
  if (t.is_ground() || base == 0) return t;
  if (t.is_variable()) return Term::variable(t.var() + base);
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(offset_variables(a, base));
  return Term::compound(t.atom(), std::move(args));
}

namespace {

Term freshen_with(const Term& t, std::unordered_map<VarId, Term>& map,
                  VarBank& bank, const std::function<bool(Symbol)>& reserved) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    auto it = map.find(t.var());
    if (it != map.end()) return it->second;
    Term c = Term::constant(bank.fresh_constant(reserved));
    map.emplace(t.var(), c);
    return c;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) {
    args.push_back(freshen_with(a, map, bank, reserved));
  }
  return Term::compound(t.atom(), std::move(args));
}

bool variant_rec(const Term& a, const Term& b,
                 std::unordered_map<VarId, VarId>& fwd,
                 std::unordered_map<VarId, VarId>& bwd) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) {
    auto [fi, fnew] = fwd.emplace(a.var(), b.var());
    auto [bi, bnew] = bwd.emplace(b.var(), a.var());
    return fi->second == b.var() && bi->second == a.var();
  }
  if (a.atom() != b.atom() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!variant_rec(a.arg(i), b.arg(i), fwd, bwd)) return false;
  }
  return true;
}

}  // namespace

Term freshen_to_constants(const Term& t, VarBank& bank,
                          const std::function<bool(Symbol)>& reserved) {
  std::unordered_map<VarId, Term> map;
  return freshen_with(t, map, bank, reserved);
}

std::vector<Term> freshen_to_constants(
    const std::vector<Term>& terms, VarBank& bank,
    const std::function<bool(Symbol)>& reserved) {
  std::unordered_map<VarId, Term> map;
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) out.push_back(freshen_with(t, map, bank, reserved));
  return out;
}

bool is_variant(const Term& a, const Term& b) {
  std::unordered_map<VarId, VarId> fwd, bwd;
  return variant_rec(a, b, fwd, bwd);
}

}  // namespace tcg
