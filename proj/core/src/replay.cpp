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

#include "tcg/replay.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "graph_json.hpp"

namespace tcg {

ReplayPart part_for_winner(Player winner) {
  return winner == Player::kProver ? ReplayPart::kProverWon
                                   : ReplayPart::kAdversaryWon;
}

Replay record_playout(std::span<const GameState> states,
                      std::span<const std::vector<double>> policies,
                      const Outcome& outcome, std::uint64_t game_id) {
  if (states.size() != policies.size()) {
    throw std::invalid_argument("record_playout: " + std::to_string(states.size()) +
                                " states but " + std::to_string(policies.size()) +
                                " policies");
  }
  Replay r;
  r.game_id = game_id;
  r.outcome = outcome;
  if (!states.empty()) r.logic = states.front().logic->name;
  const ReplayPart part = part_for_winner(outcome.winner);
  for (std::size_t i = 0; i < states.size(); ++i) {
    (states[i].phase == Phase::kConstruct ? r.construct_moves : r.prove_moves) += 1;
    TrainExample ex;
    ex.graph = encode_graph(states[i]);
    ex.policy_target = policies[i];
    ex.value_target = outcome.prover_reward();
    ex.value_weight = 1.0;
    ex.part = part;
    r.examples.push_back(std::move(ex));
  }
  return r;
}

Replay make_auxiliary(std::shared_ptr<const LogicDef> logic,
                      std::span<const std::size_t> construction_moves,
                      const Term& theorem, const Outcome& outcome,
                      const GameConfig& config, std::uint64_t game_id) {
  if (outcome.winner == Player::kProver) {
    throw std::invalid_argument("auxiliary replays are only made for games the prover lost");
  }
  Replay r;
  r.game_id = game_id;
  r.logic = logic->name;
  r.outcome = Outcome{Player::kProver, OutcomeReason::kProofComplete};
  const std::size_t actions = logic->action_space();
  // The construction used at most the cap, so the replay fits as well.
  GameConfig cfg = config;
  cfg.max_moves_per_phase = std::max<int>(cfg.max_moves_per_phase,
                                          static_cast<int>(construction_moves.size()));
  StepResult step = start_from_conjecture(std::move(logic), theorem, cfg);
  for (std::size_t move : construction_moves) {
    auto* state = std::get_if<GameState>(&step);
    if (state == nullptr) {
      throw std::logic_error("auxiliary replay ended before its last move");
    }
    TrainExample ex;
    ex.graph = encode_graph(*state);
    ex.policy_target.assign(actions, 0.0);
    ex.policy_target.at(move) = 1.0;
    ex.value_target = 1.0;
    ex.value_weight = 0.0;
    ex.part = ReplayPart::kAuxiliary;
    r.examples.push_back(std::move(ex));
    r.prove_moves += 1;
    step = apply_action(*state, move);
  }
  const auto* end = std::get_if<Outcome>(&step);
  if (end == nullptr || end->reason != OutcomeReason::kProofComplete) {
    throw std::logic_error("construction moves do not prove the frozen theorem");
  }
  return r;
}

double balanced_value_weight(ReplayPart part, std::size_t prover_won,
                             std::size_t adversary_won) {
  const std::size_t total = prover_won + adversary_won;
  if (part == ReplayPart::kAuxiliary || total == 0) return 0.0;
  const std::size_t n = part == ReplayPart::kProverWon ? prover_won : adversary_won;
  return static_cast<double>(n) / static_cast<double>(total);
}

ReplayBuffer::ReplayBuffer(std::size_t capacity_per_part, std::uint64_t seed)
    : capacity_(capacity_per_part), rng_(seed) {}

void ReplayBuffer::add(const Replay& replay) {
  for (const auto& ex : replay.examples) add(ex);
}

void ReplayBuffer::add(TrainExample example) {
  auto& part = parts_[index(example.part)];
  part.push_back(std::move(example));
  if (capacity_ > 0 && part.size() > capacity_) part.pop_front();
}

void ReplayBuffer::clear() {
  for (auto& p : parts_) p.clear();
}

std::size_t ReplayBuffer::size() const {
  return parts_[0].size() + parts_[1].size() + parts_[2].size();
}

std::vector<TrainExample> ReplayBuffer::sample_batch(std::size_t batch_size,
                                                     bool balanced) {
  if (empty()) throw std::invalid_argument("sample_batch on an empty buffer");
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  const std::size_t pw = size(ReplayPart::kProverWon);
  const std::size_t aw = size(ReplayPart::kAdversaryWon);
  std::vector<TrainExample> batch;
  batch.reserve(batch_size);
  if (balanced) {
    std::vector<std::size_t> nonempty;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (!parts_[i].empty()) nonempty.push_back(i);
    }
    if (batch_size % nonempty.size() != 0) {
      throw std::invalid_argument("batch size " + std::to_string(batch_size) +
                                  " is not a multiple of the " +
                                  std::to_string(nonempty.size()) + " nonempty parts");
    }
    const std::size_t per = batch_size / nonempty.size();
    for (std::size_t p : nonempty) {
      std::uniform_int_distribution<std::size_t> pick(0, parts_[p].size() - 1);
      const double w = balanced_value_weight(static_cast<ReplayPart>(p), pw, aw);
      for (std::size_t k = 0; k < per; ++k) {
        batch.push_back(parts_[p][pick(rng_)]);
        batch.back().value_weight = w;
      }
    }
    return batch;
  }
  std::uniform_int_distribution<std::size_t> pick(0, size() - 1);
  for (std::size_t k = 0; k < batch_size; ++k) {
    std::size_t i = pick(rng_);
    std::size_t p = 0;
    while (i >= parts_[p].size()) i -= parts_[p++].size();
    batch.push_back(parts_[p][i]);
    batch.back().value_weight = p == index(ReplayPart::kAuxiliary) ? 0.0 : 1.0;
  }
  return batch;
}

namespace {

constexpr const char* kArchiveHeader = "tcg-replays v1";

ReplayPart part_from(const std::string& s) {
  for (auto p : {ReplayPart::kProverWon, ReplayPart::kAdversaryWon, ReplayPart::kAuxiliary}) {
    if (s == to_string(p)) return p;
  }
  throw std::runtime_error("unknown replay part '" + s + "'");
}

}  // namespace

void write_replays(std::ostream& os, std::span<const Replay> replays) {
  using nlohmann::json;
  os << kArchiveHeader << '\n';
  for (const Replay& r : replays) {
    json j = {{"game_id", r.game_id},
              {"logic", r.logic},
              {"winner", to_string(r.outcome.winner)},
              {"reason", to_string(r.outcome.reason)},
              {"construct_moves", r.construct_moves},
              {"prove_moves", r.prove_moves},
              {"examples", json::array()}};
    for (const auto& ex : r.examples) {
      j["examples"].push_back({{"graph", graph_to_json_value(ex.graph)},
                               {"action_space", ex.graph.action_space},
                               {"policy_target", ex.policy_target},
                               {"value_target", ex.value_target},
                               {"value_weight", ex.value_weight},
                               {"part", to_string(ex.part)}});
    }
    os << j.dump() << '\n';
  }
}

std::vector<Replay> read_replays(std::istream& is) {
  using nlohmann::json;
  std::string line;
  if (!std::getline(is, line) || line != kArchiveHeader) {
    throw std::runtime_error("not a replay archive (expected '" +
                             std::string(kArchiveHeader) + "')");
  }
  std::vector<Replay> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("malformed replay record");
    try {
      Replay r;
      r.game_id = j.at("game_id").get<std::uint64_t>();
      r.logic = j.at("logic").get<std::string>();
      r.outcome.winner = j.at("winner").get<std::string>() == "prover"
                             ? Player::kProver
                             : Player::kAdversary;
      const std::string reason = j.at("reason").get<std::string>();
      bool known = false;
      for (auto x : {OutcomeReason::kProofComplete, OutcomeReason::kUnificationFailed,
                     OutcomeReason::kMoveLimit, OutcomeReason::kConstructionFailed}) {
        if (reason == to_string(x)) {
          r.outcome.reason = x;
          known = true;
        }
      }
      if (!known) throw std::runtime_error("unknown outcome reason '" + reason + "'");
      r.construct_moves = j.at("construct_moves").get<int>();
      r.prove_moves = j.at("prove_moves").get<int>();
      for (const auto& e : j.at("examples")) {
        TrainExample ex;
        ex.graph = graph_from_json_value(e.at("graph"));
        ex.graph.action_space = e.at("action_space").get<std::size_t>();
        ex.policy_target = e.at("policy_target").get<std::vector<double>>();
        ex.value_target = e.at("value_target").get<double>();
        ex.value_weight = e.at("value_weight").get<double>();
        ex.part = part_from(e.at("part").get<std::string>());
        r.examples.push_back(std::move(ex));
      }
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw std::runtime_error(std::string("malformed replay record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("malformed replay record: ") + e.what());
    }
  }
  return out;
}

}  // namespace tcg
