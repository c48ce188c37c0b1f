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

// The theorem-construction game as a search domain.

#ifndef TCG_THEOREM_GAME_HPP_
#define TCG_THEOREM_GAME_HPP_

#include <variant>

#include "tcg/evaluator.hpp"
#include "tcg/game.hpp"
#include "tcg/search.hpp"

namespace tcg {

class TheoremGameDomain {
 public:
  using State = GameState;

  explicit TheoremGameDomain(Evaluator& evaluator) : evaluator_(evaluator) {}

  // Priors are the evaluator's policy restricted to the legal actions and
  // renormalized (uniform if it puts no mass there). A state without legal
  // actions is a loss for its mover.
  Expansion expand(const GameState& s) {
    Expansion ex;
    ex.owner = s.mover();
    ex.actions = legal_actions(s);
    if (ex.actions.empty()) {
      ex.dead_end_reward = ex.owner == Player::kProver ? -1.0 : 1.0;
      return ex;
    }
    Evaluation e = evaluator_.evaluate(s);
    ++evaluations_;
    ex.value = e.value;
    ex.priors.reserve(ex.actions.size());
    double total = 0.0;
    for (std::size_t a : ex.actions) {
      double p = a < e.policy.size() ? e.policy[a] : 0.0;
      ex.priors.push_back(p);
      total += p;
    }
    for (double& p : ex.priors) {
      p = total > 0.0 ? p / total : 1.0 / static_cast<double>(ex.actions.size());
    }
    return ex;
  }

  std::variant<GameState, double> next(const GameState& s, std::size_t action) {
    StepResult r = advance(s, action);
    if (auto* o = std::get_if<Outcome>(&r)) return o->prover_reward();
    return std::move(std::get<GameState>(r));
  }

  std::size_t action_space() const { return evaluator_.action_space(); }
  std::size_t evaluations() const { return evaluations_; }
  Evaluator& evaluator() { return evaluator_; }

 private:
  Evaluator& evaluator_;
  std::size_t evaluations_ = 0;
};

static_assert(SearchDomain<TheoremGameDomain>);

using GameSearch = Mcts<TheoremGameDomain>;

}  // namespace tcg

#endif  // TCG_THEOREM_GAME_HPP_
