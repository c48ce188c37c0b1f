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

// Training data from played games and the three-part replay buffer.

#ifndef TCG_REPLAY_HPP_
#define TCG_REPLAY_HPP_

#include <array>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tcg/evaluator.hpp"
#include "tcg/game.hpp"

namespace tcg {

struct Replay {
  std::uint64_t game_id = 0;
  std::string logic;
  Outcome outcome;
  int construct_moves = 0;
  int prove_moves = 0;
  std::vector<TrainExample> examples;
};

ReplayPart part_for_winner(Player winner);

// One example per decision: the searched policy as target and the outcome
// (+1 prover won, -1 adversary won) as value. Throws std::invalid_argument
// if `states` and `policies` differ in length.
Replay record_playout(std::span<const GameState> states,
                      std::span<const std::vector<double>> policies,
                      const Outcome& outcome, std::uint64_t game_id = 0);

// A demonstration of how the prover could have proven `theorem`: the
// construction moves replayed from the frozen theorem, one example per move
// with a one-hot policy and value weight 0. Throws std::invalid_argument for
// a game the prover won, std::logic_error if the replay does not end in a
// completed proof.
Replay make_auxiliary(std::shared_ptr<const LogicDef> logic,
                      std::span<const std::size_t> construction_moves,
                      const Term& theorem, const Outcome& outcome,
                      const GameConfig& config, std::uint64_t game_id = 0);

// Value weight of a value-bearing part: its share of the prover-won plus
// adversary-won examples. Auxiliary examples always get 0.
double balanced_value_weight(ReplayPart part, std::size_t prover_won,
                             std::size_t adversary_won);

class ReplayBuffer {
 public:
  // capacity_per_part == 0 means unbounded; otherwise the oldest examples
  // of a full part are dropped first.
  explicit ReplayBuffer(std::size_t capacity_per_part = 0, std::uint64_t seed = 0);

  void add(const Replay& replay);
  void add(TrainExample example);
  void clear();

  std::size_t size(ReplayPart part) const { return parts_[index(part)].size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::deque<TrainExample>& part(ReplayPart p) const { return parts_[index(p)]; }

  // Balanced: batch_size / k examples (drawn with replacement) from each of
  // the k nonempty parts, value weights from balanced_value_weight. Throws
  // std::invalid_argument if the buffer is empty or batch_size is not a
  // multiple of k.
  // Unbalanced: batch_size draws from the pooled examples, value weight 1
  // for value-bearing examples and 0 for auxiliary ones.
  std::vector<TrainExample> sample_batch(std::size_t batch_size, bool balanced = true);

 private:
  static std::size_t index(ReplayPart p) { return static_cast<std::size_t>(p); }

  std::size_t capacity_;
  std::array<std::deque<TrainExample>, 3> parts_;
  std::mt19937_64 rng_;
};

// Replay archive: a versioned text header followed by one JSON object per
// replay and line.
void write_replays(std::ostream& os, std::span<const Replay> replays);
// Throws std::runtime_error on a bad header or malformed record.
std::vector<Replay> read_replays(std::istream& is);

}  // namespace tcg

#endif  // TCG_REPLAY_HPP_
