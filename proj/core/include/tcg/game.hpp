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

// The theorem-construction game.
//
// The adversary starts from the logic's goal template (a single variable by
// default) and proves it by applying inference rules backwards; the template
// gets instantiated to a theorem as it goes. Once the adversary's goal list
// is empty, the theorem's remaining variables become fresh constants and the
// prover must prove it with the same rules. A move applies a rule to the
// first goal: the renamed head is unified with it and the instantiated body
// replaces it at the front of the list. A failed unification loses the game
// for the player who moved.
//
// All values are prover-centric: +1 means the prover wins.

#ifndef TCG_GAME_HPP_
#define TCG_GAME_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tcg/logic.hpp"
#include "tcg/term.hpp"

namespace tcg {

enum class Player : std::uint8_t { kAdversary, kProver };
enum class Phase : std::uint8_t { kConstruct, kProve };

constexpr Player opponent(Player p) {
  return p == Player::kProver ? Player::kAdversary : Player::kProver;
}
const char* to_string(Player p);
const char* to_string(Phase p);

struct GameConfig {
  // A player whose move would exceed this many moves in its phase loses.
  int max_moves_per_phase = 64;
  // Restrict legal_actions to rules whose head unifies with the first goal.
  // Off reproduces the literal game, where a non-unifying choice loses.
  bool filter_legal = true;
};

enum class OutcomeReason : std::uint8_t {
  kProofComplete,
  kUnificationFailed,
  kMoveLimit,
  kConstructionFailed,
};
const char* to_string(OutcomeReason r);

struct Outcome {
  Player winner = Player::kProver;
  OutcomeReason reason = OutcomeReason::kProofComplete;

  double prover_reward() const { return winner == Player::kProver ? 1.0 : -1.0; }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct GameState {
  std::shared_ptr<const LogicDef> logic;
  GameConfig config;
  Phase phase = Phase::kConstruct;
  std::vector<Term> goals;
  // Construct phase: the current instance of the goal template. Prove
  // phase: the ground theorem being proven.
  Term theorem;
  VarBank bank;
  int moves_in_phase = 0;

  Player mover() const {
    return phase == Phase::kConstruct ? Player::kAdversary : Player::kProver;
  }
  bool needs_handover() const {
    return phase == Phase::kConstruct && goals.empty();
  }
};

using StepResult = std::variant<GameState, Outcome>;

inline bool is_terminal(const StepResult& r) {
  return std::holds_alternative<Outcome>(r);
}

GameState initial_state(std::shared_ptr<const LogicDef> logic,
                        const GameConfig& config = {});

// Throws std::out_of_range for a rule index outside the action space and
// std::logic_error when called on a state awaiting handover.
StepResult apply_action(const GameState& state, std::size_t rule_index);

// Throws std::logic_error unless the construction is complete.
GameState handover(const GameState& state);

// Throws std::invalid_argument if `conjecture` has variables.
GameState start_from_conjecture(std::shared_ptr<const LogicDef> logic,
                                const Term& conjecture,
                                const GameConfig& config = {});

// apply_action followed by handover when the construction just completed.
StepResult advance(const GameState& state, std::size_t rule_index);

// Whether the rule's head unifies with the first goal.
bool rule_applies(const GameState& state, std::size_t rule_index);
std::vector<std::size_t> legal_actions(const GameState& state);

// Canonical text of a state's goals and theorem; equal keys mean states
// equal up to variable renaming.
std::string state_key(const GameState& state);

}  // namespace tcg

#endif  // TCG_GAME_HPP_
