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

#ifndef TCG_UNIFY_HPP_
#define TCG_UNIFY_HPP_

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tcg/term.hpp"

namespace tcg {

// Variable bindings in triangular form: a bound term may itself mention
// bound variables. Reads dereference through the chain; normalized() resolves
// every binding completely.
class Substitution {
 public:
  Substitution() = default;

  const Term* lookup(VarId v) const;
  bool bound(VarId v) const { return lookup(v) != nullptr; }
  // Precondition: !bound(v).
  void bind(VarId v, Term t) { bindings_.emplace_back(v, std::move(t)); }

  // Follows variable bindings until reaching an unbound variable or a
  // compound term.
  Term walk(Term t) const;

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  const std::vector<std::pair<VarId, Term>>& bindings() const {
    return bindings_;
  }

  // Every binding replaced by its fully applied image.
  Substitution normalized() const;

 private:
  std::vector<std::pair<VarId, Term>> bindings_;
};

// Most general unifier of `a` and `b` extending `s`, or nullopt if none
// exists. With `occurs_check` off, cyclic bindings may be produced; see
// apply_subst for how they are rendered.
std::optional<Substitution> unify(const Term& a, const Term& b,
                                  const Substitution& s,
                                  bool occurs_check = true);
std::optional<Substitution> unify(const Term& a, const Term& b,
                                  bool occurs_check = true);

// Replaces bound variables recursively until none remain. A variable that is
// reached again while its own binding is being expanded (only possible
// without occurs check) is left in place.
Term apply_subst(const Substitution& s, const Term& t);

// Adds `base` to every variable id.
Term offset_variables(const Term& t, VarId base);

// Replaces each distinct variable by a distinct fresh constant from `bank`,
// skipping names for which `reserved` returns true.
Term freshen_to_constants(const Term& t, VarBank& bank,
                          const std::function<bool(Symbol)>& reserved = {});

// Multi-term variant sharing one variable-to-constant map.
std::vector<Term> freshen_to_constants(
    const std::vector<Term>& terms, VarBank& bank,
    const std::function<bool(Symbol)>& reserved = {});

// True if some renaming of variables maps `a` onto `b` bijectively.
bool is_variant(const Term& a, const Term& b);

}  // namespace tcg

#endif  // TCG_UNIFY_HPP_
