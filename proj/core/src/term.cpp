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

#include "tcg/term.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace tcg {

namespace {

class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mu_);
      auto it = ids_.find(name);
      if (it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    names_.emplace_back(name);
    auto id = static_cast<std::uint32_t>(names_.size() - 1);
    ids_.emplace(std::string_view(names_.back()), id);
    return id;
  }

  std::optional<std::uint32_t> lookup(std::string_view name) const {
    std::shared_lock lock(mu_);
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  std::string_view name(std::uint32_t id) const {
    std::shared_lock lock(mu_);
    return names_[id];
  }

 private:
  mutable std::shared_mutex mu_;
  std::deque<std::string> names_;  // stable addresses for the views below
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

constexpr std::size_t kHashSeed = 0x9e3779b97f4a7c15ull;

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + kHashSeed + (h << 6) + (h >> 2);
  return h;
}

bool is_var_start(char c) {
  return std::isupper(static_cast<unsigned char>(c)) || c == '_';
}
bool is_atom_start(char c) {
  return std::islower(static_cast<unsigned char>(c));
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  return Symbol(symbols().intern(name));
}

Symbol Symbol::lookup(std::string_view name) {
  auto id = symbols().lookup(name);
  return id ? Symbol(*id) : Symbol();
}

std::string_view Symbol::name() const {
  if (!valid()) return "<invalid>";
  return symbols().name(id_);
}

Term::Term() : Term(variable(0)) {}

Term Term::variable(VarId id) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->ground = false;
  node->var = id;
  node->hash = mix(0x51ed27u, id);
  return Term(std::move(node));
}

Term Term::compound(Symbol atom, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->atom = atom;
  std::size_t h = mix(0x2545f491u, atom.id());
  h = mix(h, args.size());
  std::uint32_t size = 1;
  bool ground = true;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    size += a.node_->size;
    ground = ground && a.node_->ground;
  }
  node->hash = h;
  node->size = size;
  node->ground = ground;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.is_var != y.is_var || x.size != y.size) return false;
  if (x.is_var) return x.var == y.var;
  if (x.atom != y.atom || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!(x.args[i] == y.args[i])) return false;
  }
  return true;
}

void collect_variables(const Term& t, std::vector<VarId>& out) {
  if (t.is_ground()) return;
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.var()) == out.end()) {
      out.push_back(t.var());
    }
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<VarId> variables_of(const Term& t) {
  std::vector<VarId> out;
  collect_variables(t, out);
  return out;
}

bool occurs(VarId v, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_variable()) return t.var() == v;
  for (const Term& a : t.args()) {
    if (occurs(v, a)) return true;
  }
  return false;
}

VarId variable_bound(const Term& t) {
  if (t.is_ground()) return 0;
  if (t.is_variable()) return t.var() + 1;
  VarId bound = 0;
  for (const Term& a : t.args()) bound = std::max(bound, variable_bound(a));
  return bound;
}

Symbol VarBank::fresh_constant(const std::function<bool(Symbol)>& reserved) {
  for (;;) {
    std::string name = "c" + std::to_string(next_const_++);
    Symbol existing = Symbol::lookup(name);
    if (existing.valid() && reserved && reserved(existing)) continue;
    return Symbol::intern(name);
  }
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

VarId VarScope::id_for(std::string_view name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  auto id = static_cast<VarId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(std::string(name), id);
  return id;
}

TermReader::TermReader(std::string_view text, int line, int column_offset)
    : text_(text), line_(line), column_offset_(column_offset) {}

void TermReader::fail(const std::string& what) const {
  throw ParseError(what, line_, column_offset_ + static_cast<int>(pos_) + 1);
}

void TermReader::skip_space() {
  while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
    ++pos_;
  }
}

bool TermReader::consume(char c) {
  skip_space();
  if (peek() != c) return false;
  ++pos_;
  return true;
}

std::string_view TermReader::identifier() {
  std::size_t start = pos_;
  while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
  return text_.substr(start, pos_ - start);
}

Term TermReader::read(VarScope& scope) {
  skip_space();
  if (at_end()) fail("expected a term, found end of input");
  char c = peek();
  if (is_var_start(c)) {
    return Term::variable(scope.id_for(identifier()));
  }
  if (!is_atom_start(c)) {
    fail(std::string("unexpected character '") + c + "'");
  }
  Symbol atom = Symbol::intern(identifier());
  skip_space();
  if (peek() != '(') return Term::constant(atom);
  ++pos_;
  std::vector<Term> args;
  args.push_back(read(scope));
  while (consume(',')) args.push_back(read(scope));
  if (!consume(')')) fail("expected ',' or ')'");
  return Term::compound(atom, std::move(args));
}

Term parse_term(std::string_view text, VarScope& scope) {
  TermReader reader(text, 1, 0);
  Term t = reader.read(scope);
  reader.skip_space();
  if (!reader.at_end()) reader.fail("trailing characters after term");
  return t;
}

Term parse_term(std::string_view text) {
  VarScope scope;
  return parse_term(text, scope);
}

namespace {

void format_into(const Term& t, const std::vector<std::string>* names,
                 std::string& out) {
  if (t.is_variable()) {
    if (names && t.var() < names->size()) {
      out += (*names)[t.var()];
    } else {
      out += '_';
      out += std::to_string(t.var());
    }
    return;
  }
  out += t.atom().name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ", ";
    format_into(t.arg(i), names, out);
  }
  out += ')';
}

Term renumber(const Term& t, std::vector<VarId>& order) {
  if (t.is_ground()) return t;
  if (t.is_variable()) {
    auto it = std::find(order.begin(), order.end(), t.var());
    if (it == order.end()) {
      order.push_back(t.var());
      return Term::variable(static_cast<VarId>(order.size() - 1));
    }
    return Term::variable(static_cast<VarId>(it - order.begin()));
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(renumber(a, order));
  return Term::compound(t.atom(), std::move(args));
}

}  // namespace

std::string format_term(const Term& t) {
  std::string out;
  format_into(t, nullptr, out);
  return out;
}

std::string format_term(const Term& t, const std::vector<std::string>& names) {
  std::string out;
  format_into(t, &names, out);
  return out;
}

std::string letter_name(VarId id) {
  std::string name(1, static_cast<char>('A' + id % 26));
  if (id >= 26) name += std::to_string(id / 26);
  return name;
}

Term normalize_variables(const Term& t) {
  std::vector<VarId> order;
  return renumber(t, order);
}

}  // namespace tcg
