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

#include "tcg/game.hpp"

#include <stdexcept>

#include "tcg/unify.hpp"

namespace tcg {

const char* to_string(Player p) {
  return p == Player::kProver ? "prover" : "adversary";
}

const char* to_string(Phase p) {
  return p == Phase::kConstruct ? "construct" : "prove";
}

const char* to_string(OutcomeReason r) {
  switch (r) {
    case OutcomeReason::kProofComplete: return "proof_complete";
    case OutcomeReason::kUnificationFailed: return "unification_failed";
    case OutcomeReason::kMoveLimit: return "move_limit";
    case OutcomeReason::kConstructionFailed: return "construction_failed";
  }
  return "?";
}

GameState initial_state(std::shared_ptr<const LogicDef> logic,
                        const GameConfig& config) {
  GameState s;
  const Term& tmpl = logic->goal_template;
  // Move the template's variable past the ids it uses so that it is the
  // first variable handed out by this game's bank.
  VarId base = s.bank.reserve(variable_bound(tmpl));
  Term goal = offset_variables(tmpl, base);
  s.theorem = goal;
  s.goals.push_back(std::move(goal));
  s.logic = std::move(logic);
  s.config = config;
  return s;
}

namespace {

Outcome loss_for(Player mover, OutcomeReason reason) {
  return Outcome{opponent(mover), reason};
}

}  // namespace

StepResult apply_action(const GameState& state, std::size_t rule_index) {
  const LogicDef& logic = *state.logic;
  if (rule_index >= logic.rules.size()) {
    throw std::out_of_range("rule index " + std::to_string(rule_index) +
                            " outside action space of " +
                            std::to_string(logic.rules.size()));
  }
  if (state.goals.empty()) {
    throw std::logic_error("apply_action on a state with no goals");
  }
  const Player mover = state.mover();
  if (state.moves_in_phase + 1 > state.config.max_moves_per_phase) {
    return loss_for(mover, mover == Player::kAdversary
                               ? OutcomeReason::kConstructionFailed
                               : OutcomeReason::kMoveLimit);
  }

  const InferenceRule& rule = logic.rules[rule_index];
  GameState next = state;
  VarId base = next.bank.reserve(rule.num_vars);
  Term head = offset_variables(rule.head, base);
  auto sigma = unify(head, state.goals.front(), logic.occurs_check);
  if (!sigma) return loss_for(mover, OutcomeReason::kUnificationFailed);

  std::vector<Term> goals;
  goals.reserve(rule.body.size() + state.goals.size() - 1);
  for (const Term& b : rule.body) {
    goals.push_back(apply_subst(*sigma, offset_variables(b, base)));
  }
  for (std::size_t i = 1; i < state.goals.size(); ++i) {
    goals.push_back(apply_subst(*sigma, state.goals[i]));
  }
  next.goals = std::move(goals);
  next.theorem = apply_subst(*sigma, state.theorem);
  next.moves_in_phase += 1;

  if (next.goals.empty() && next.phase == Phase::kProve) {
    return Outcome{Player::kProver, OutcomeReason::kProofComplete};
  }
  return next;
}

GameState handover(const GameState& state) {
  if (!state.needs_handover()) {
    throw std::logic_error(
        "handover requires a construct-phase state with no goals left");
  }
  GameState next = state;
  const LogicDef* logic = state.logic.get();
  next.theorem = freshen_to_constants(
      state.theorem, next.bank, [logic](Symbol s) { return logic->uses_symbol(s); });
  next.goals = {next.theorem};
  next.phase = Phase::kProve;
  next.moves_in_phase = 0;
  return next;
}

GameState start_from_conjecture(std::shared_ptr<const LogicDef> logic,
                                const Term& conjecture,
                                const GameConfig& config) {
  if (!conjecture.is_ground()) {
    throw std::invalid_argument("conjecture must be ground: " +
                                format_term(conjecture));
  }
  GameState s;
  s.logic = std::move(logic);
  s.config = config;
  s.phase = Phase::kProve;
  s.goals = {conjecture};
  s.theorem = conjecture;
  return s;
}

StepResult advance(const GameState& state, std::size_t rule_index) {
  StepResult r = apply_action(state, rule_index);
  if (auto* s = std::get_if<GameState>(&r); s && s->needs_handover()) {
    return handover(*s);
  }
  return r;
}

namespace {

bool clash(const Term& a, const Term& b) {
  return a.is_compound() && b.is_compound() &&
         (a.atom() != b.atom() || a.arity() != b.arity());
}

// Cheap necessary condition for unification: no functor clash at the top or
// among the immediate arguments.
bool may_unify(const Term& head, const Term& goal) {
  if (clash(head, goal)) return false;
  if (head.is_variable() || goal.is_variable()) return true;
  for (std::size_t i = 0; i < head.arity(); ++i) {
    if (clash(head.arg(i), goal.arg(i))) return false;
  }
  return true;
}

}  // namespace

bool rule_applies(const GameState& state, std::size_t rule_index) {
  const LogicDef& logic = *state.logic;
  const InferenceRule& rule = logic.rules.at(rule_index);
  if (state.goals.empty()) return false;
  if (!may_unify(rule.head, state.goals.front())) return false;
  Term head = offset_variables(rule.head, state.bank.peek_var());
  return unify(head, state.goals.front(), logic.occurs_check).has_value();
}

std::vector<std::size_t> legal_actions(const GameState& state) {
  std::vector<std::size_t> out;
  const std::size_t n = state.logic->action_space();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!state.config.filter_legal || rule_applies(state, i)) out.push_back(i);
  }
  return out;
}

std::string state_key(const GameState& state) {
  std::vector<Term> args = state.goals;
  args.push_back(state.theorem);
  Term all = normalize_variables(Term::compound("state", std::move(args)));
  return std::string(to_string(state.phase)) + ":" + format_term(all);
}

}  // namespace tcg
