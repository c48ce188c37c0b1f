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

#include "tcg/training.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "tcg/theorem_game.hpp"

namespace tcg {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SelfPlayGame play_self_play_game(std::shared_ptr<const LogicDef> logic,
                                 Evaluator& evaluator, const TrainingConfig& cfg,
                                 std::uint64_t seed) {
  SearchConfig scfg = cfg.search;
  scfg.test_mode = false;
  TheoremGameDomain domain(evaluator);
  GameSearch search(domain, scfg, seed);
  std::mt19937_64 rng(derive_seed(seed, 1, 0));

  SelfPlayGame game;
  TraceRecorder rec(initial_state(logic, cfg.game));
  search.set_root(rec.state());
  while (!rec.finished()) {
    const GameState state = rec.state();
    SearchResult r = search.search(cfg.decision_budget);
    game.nodes += r.nodes_added;
    if (r.actions.empty()) {
      // No rule applies: the mover is stuck and loses.
      rec.end_if_stuck();
      game.outcome = *rec.trace().outcome;
      break;
    }
    std::size_t action = choose_action(r, false, cfg.temperature, rng);
    game.states.push_back(state);
    game.policies.push_back(std::move(r.policy));
    if (state.phase == Phase::kConstruct) game.construction_moves.push_back(action);
    StepResult next = rec.step(action);
    if (const auto* o = std::get_if<Outcome>(&next)) {
      game.outcome = *o;
      break;
    }
    const GameState& after = rec.state();
    if (after.phase == Phase::kProve && state.phase == Phase::kConstruct) {
      game.theorem = after.theorem;
    }
    if (!search.reuse_subtree(action)) search.set_root(after);
  }
  game.trace = rec.take();
  return game;
}

namespace {

void run_parallel(int workers, int count, const std::function<void(int)>& job) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min(workers, count); ++w) {
    threads.emplace_back([&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

EpisodeStats run_episode(std::shared_ptr<const LogicDef> logic, Evaluator& evaluator,
                         const TrainingConfig& cfg, ReplayBuffer& buffer,
                         int episode) {
  EpisodeStats stats;
  stats.episode = episode;
  if (!cfg.retain_buffer) buffer.clear();

  std::vector<SelfPlayGame> games(static_cast<std::size_t>(cfg.games_per_episode));
  run_parallel(cfg.workers, cfg.games_per_episode, [&](int i) {
    games[static_cast<std::size_t>(i)] = play_self_play_game(
        logic, evaluator, cfg,
        derive_seed(cfg.seed, static_cast<std::uint64_t>(episode),
                    static_cast<std::uint64_t>(i)));
  });

  std::size_t decisions = 0;
  for (std::size_t i = 0; i < games.size(); ++i) {
    const SelfPlayGame& g = games[i];
    stats.games += 1;
    decisions += g.states.size();
    if (g.outcome.winner == Player::kProver) {
      stats.prover_wins += 1;
      if (!g.theorem) stats.construction_failures += 1;
    } else {
      stats.adversary_wins += 1;
    }
    Replay r = record_playout(g.states, g.policies, g.outcome, i);
    r.logic = logic->name;
    buffer.add(r);
    if (g.outcome.winner == Player::kProver) {
      stats.prover_examples += r.examples.size();
    } else {
      stats.adversary_examples += r.examples.size();
    }
    if (cfg.auxiliary && g.outcome.winner == Player::kAdversary && g.theorem) {
      Replay aux = make_auxiliary(logic, g.construction_moves, *g.theorem,
                                  g.outcome, cfg.game, i);
      stats.aux_replays += 1;
      stats.aux_examples += aux.examples.size();
      buffer.add(aux);
    }
  }
  stats.mean_length = stats.games > 0 ? static_cast<double>(decisions) / stats.games : 0.0;

  if (evaluator.trainable() && !buffer.empty() && cfg.train_steps > 0) {
    std::size_t parts = 0;
    for (auto p : {ReplayPart::kProverWon, ReplayPart::kAdversaryWon, ReplayPart::kAuxiliary}) {
      if (buffer.size(p) > 0) ++parts;
    }
    std::size_t batch = cfg.batch_size;
    if (cfg.balance && batch % parts != 0) batch += parts - batch % parts;
    for (int s = 0; s < cfg.train_steps; ++s) {
      auto examples = buffer.sample_batch(batch, cfg.balance);
      LossReport l = evaluator.train_batch(examples);
      stats.value_loss += l.value_loss;
      stats.policy_loss += l.policy_loss;
      stats.train_steps += 1;
    }
    stats.value_loss /= stats.train_steps;
    stats.policy_loss /= stats.train_steps;
  }
  return stats;
}

BaselineData generate_baseline(std::shared_ptr<const LogicDef> logic, int count,
                               const GameConfig& game, std::uint64_t seed) {
  BaselineData out;
  std::mt19937_64 rng(seed);
  const std::size_t actions = logic->action_space();
  for (int p = 0; p < count; ++p) {
    out.playouts += 1;
    std::vector<GameState> states;
    std::vector<std::size_t> moves;
    GameState s = initial_state(logic, game);
    bool constructed = false;
    while (true) {
      std::vector<std::size_t> legal = legal_actions(s);
      if (legal.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
      std::size_t a = legal[pick(rng)];
      StepResult r = apply_action(s, a);
      auto* next = std::get_if<GameState>(&r);
      if (next == nullptr) break;  // move cap, or a failed unification when unfiltered
      states.push_back(std::move(s));
      moves.push_back(a);
      s = std::move(*next);
      if (s.needs_handover()) {
        constructed = true;
        break;
      }
    }
    if (!constructed) continue;
    out.constructed += 1;
    const int n = static_cast<int>(moves.size());
    out.move_counts.push_back(n);
    for (int i = 0; i < n; ++i) {
      TrainExample ex;
      ex.graph = encode_graph(states[static_cast<std::size_t>(i)]);
      ex.policy_target.assign(actions, 0.0);
      ex.policy_target[moves[static_cast<std::size_t>(i)]] = 1.0;
      ex.value_target = std::pow(0.99, n - 1 - i);
      ex.value_weight = 1.0;
      ex.part = ReplayPart::kProverWon;
      out.examples.push_back(std::move(ex));
    }
  }
  return out;
}

LossReport train_on_examples(Evaluator& evaluator,
                             const std::vector<TrainExample>& examples, int steps,
                             std::size_t batch_size, std::uint64_t seed) {
  LossReport last;
  if (examples.empty() || steps <= 0) return last;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, examples.size() - 1);
  std::vector<TrainExample> batch;
  for (int s = 0; s < steps; ++s) {
    batch.clear();
    for (std::size_t k = 0; k < batch_size; ++k) batch.push_back(examples[pick(rng)]);
    last = evaluator.train_batch(batch);
  }
  return last;
}

}  // namespace tcg
