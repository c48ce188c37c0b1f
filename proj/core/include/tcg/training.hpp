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

// Self-play episodes and the random-construction baseline.

#ifndef TCG_TRAINING_HPP_
#define TCG_TRAINING_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcg/evaluator.hpp"
#include "tcg/replay.hpp"
#include "tcg/search.hpp"
#include "tcg/trace.hpp"

namespace tcg {

struct TrainingConfig {
  GameConfig game;
  SearchConfig search;          // test_mode is forced off for self-play
  std::size_t decision_budget = 128;  // nodes added per move
  double temperature = 1.0;
  int games_per_episode = 200;
  int train_steps = 100;
  std::size_t batch_size = 64;  // rounded up to a multiple of the parts
  bool auxiliary = true;
  bool balance = true;
  bool retain_buffer = false;   // keep replays across episodes
  int workers = 1;
  std::uint64_t seed = 0;
};

struct SelfPlayGame {
  PlayoutTrace trace;
  Outcome outcome;
  std::vector<GameState> states;               // one per decision
  std::vector<std::vector<double>> policies;   // searched policy per decision
  std::vector<std::size_t> construction_moves;
  std::optional<Term> theorem;                 // set once handed over
  std::size_t nodes = 0;
};

// Plays one game with both players searching from the shared evaluator.
SelfPlayGame play_self_play_game(std::shared_ptr<const LogicDef> logic,
                                 Evaluator& evaluator, const TrainingConfig& cfg,
                                 std::uint64_t seed);

struct EpisodeStats {
  int episode = 0;
  int games = 0;
  int prover_wins = 0;
  int adversary_wins = 0;
  int construction_failures = 0;  // adversary ran out of moves or options
  int aux_replays = 0;
  double mean_length = 0.0;       // decisions per game
  std::size_t prover_examples = 0;
  std::size_t adversary_examples = 0;
  std::size_t aux_examples = 0;
  int train_steps = 0;
  double value_loss = 0.0;        // mean over the episode's steps
  double policy_loss = 0.0;
};

// Games for this episode use seeds derived from (cfg.seed, episode, game),
// so results do not depend on the worker count. Training is skipped for
// evaluators that are not trainable.
EpisodeStats run_episode(std::shared_ptr<const LogicDef> logic, Evaluator& evaluator,
                         const TrainingConfig& cfg, ReplayBuffer& buffer,
                         int episode);

// Per-game seed derived from a run seed, an episode and a game index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

struct BaselineData {
  int playouts = 0;
  int constructed = 0;
  std::vector<int> move_counts;        // per completed construction
  std::vector<TrainExample> examples;  // in playout order
};

// Uniformly random legal construction moves until handover or failure.
// Each completed construction of n moves contributes its n construction
// states with a one-hot policy at the move made and value 0.99^(n-1-i) for
// the state before move i.
BaselineData generate_baseline(std::shared_ptr<const LogicDef> logic, int count,
                               const GameConfig& game, std::uint64_t seed);

// Plain minibatch SGD over the examples; returns the last step's losses.
LossReport train_on_examples(Evaluator& evaluator,
                             const std::vector<TrainExample>& examples, int steps,
                             std::size_t batch_size, std::uint64_t seed);

}  // namespace tcg

#endif  // TCG_TRAINING_HPP_
