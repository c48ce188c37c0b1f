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

// First-order terms: the single representation used for goals, theorems,
// inference rules and Sokoban boards.
//
// A Term is an immutable, reference-counted tree. Copying a Term is cheap
// (one shared_ptr copy) and subterms are shared freely between terms, game
// states and search nodes.

#ifndef TCG_TERM_HPP_
#define TCG_TERM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcg {

using VarId = std::uint32_t;

// Interned atom name. Two symbols compare equal iff their names are equal.
// The table is process-wide and never shrinks.
class Symbol {
 public:
  Symbol() = default;
  static Symbol intern(std::string_view name);
  // Returns the symbol if `name` was already interned, otherwise an invalid
  // symbol. Never inserts.
  static Symbol lookup(std::string_view name);

  std::string_view name() const;
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != kInvalid; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = kInvalid;
};

class Term {
 public:
  // A default-constructed Term is the variable with id 0.
  Term();

  static Term variable(VarId id);
  static Term compound(Symbol atom, std::vector<Term> args);
  static Term constant(Symbol atom) { return compound(atom, {}); }
  static Term compound(std::string_view atom, std::vector<Term> args) {
    return compound(Symbol::intern(atom), std::move(args));
  }
  static Term constant(std::string_view atom) {
    return constant(Symbol::intern(atom));
  }

  bool is_variable() const { return node_->is_var; }
  bool is_compound() const { return !node_->is_var; }
  bool is_constant() const { return !node_->is_var && node_->args.empty(); }
  bool is_ground() const { return node_->ground; }

  // Precondition: is_variable().
  VarId var() const { return node_->var; }
  // Precondition: is_compound().
  Symbol atom() const { return node_->atom; }
  std::span<const Term> args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  // Number of term nodes (variables and compounds) in the tree.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  // Structural equality; variables are equal iff their ids are.
  friend bool operator==(const Term& a, const Term& b);

  // Identity of the underlying node; equal pointers imply equal terms.
  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    bool is_var = false;
    bool ground = true;
    VarId var = 0;
    Symbol atom;
    std::uint32_t size = 1;
    std::size_t hash = 0;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Appends the distinct variables of `t` in first-occurrence (depth-first,
// left-to-right) order.
void collect_variables(const Term& t, std::vector<VarId>& out);
std::vector<VarId> variables_of(const Term& t);
bool occurs(VarId v, const Term& t);
// Largest variable id in `t` plus one, or 0 if `t` is ground.
VarId variable_bound(const Term& t);

// Fresh-identifier source for one game. Counters only move forward.
class VarBank {
 public:
  VarBank() = default;
  explicit VarBank(VarId first_var) : next_var_(first_var) {}

  VarId fresh_var() { return next_var_++; }
  // Reserves `n` consecutive ids and returns the first.
  VarId reserve(VarId n) {
    VarId base = next_var_;
    next_var_ += n;
    return base;
  }
  VarId peek_var() const { return next_var_; }
  std::uint32_t peek_constant() const { return next_const_; }

  // Returns a 0-arity symbol named c<k> that is not in `reserved`. The
  // constant counter advances past every skipped name.
  Symbol fresh_constant(const std::function<bool(Symbol)>& reserved);

  friend bool operator==(const VarBank&, const VarBank&) = default;

 private:
  VarId next_var_ = 0;
  std::uint32_t next_const_ = 1;
};

// Raised for malformed term, logic or problem text. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Maps variable names to ids while parsing. A scope shared between several
// parse calls makes equally named variables the same variable, as needed for
// the head and body of one rule.
class VarScope {
 public:
  VarId id_for(std::string_view name);
  VarId count() const { return static_cast<VarId>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::map<std::string, VarId, std::less<>> ids_;
  std::vector<std::string> names_;
};

// Grammar:
//   term := VAR | atom | atom '(' term (',' term)* ')'
//   VAR  := [A-Z_][A-Za-z0-9_]*
//   atom := [a-z][A-Za-z0-9_]*
// Variables receive ids in first-occurrence order from `scope`.
Term parse_term(std::string_view text, VarScope& scope);
Term parse_term(std::string_view text);

// Incremental parser over a larger text, used by the logic and problem file
// readers. Positions reported in errors are relative to the enclosing text.
class TermReader {
 public:
  TermReader(std::string_view text, int line, int column_offset);
  Term read(VarScope& scope);
  void skip_space();
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool consume(char c);
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view identifier();
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_offset_;
};

// Variables are written as _<id>, which the grammar accepts, so
// parse(format(t)) is t up to a renaming of variables.
std::string format_term(const Term& t);
// Writes variables using `names` (indexed by id) where available.
std::string format_term(const Term& t, const std::vector<std::string>& names);

// Letter-style names A..Z, A1..Z1, ... for variable id `id`.
std::string letter_name(VarId id);

// Renumbers the variables of `t` to 0,1,... in first-occurrence order.
Term normalize_variables(const Term& t);

}  // namespace tcg

#endif  // TCG_TERM_HPP_
