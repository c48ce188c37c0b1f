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

// State evaluators: a value in (-1, 1), prover-centric, and a policy over
// the whole action space. Masking to legal actions is left to the search.

#ifndef TCG_EVALUATOR_HPP_
#define TCG_EVALUATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcg/game.hpp"
#include "tcg/graph.hpp"

namespace tcg {

struct Evaluation {
  double value = 0.0;
  std::vector<double> policy;
};

enum class ReplayPart : std::uint8_t { kProverWon, kAdversaryWon, kAuxiliary };
const char* to_string(ReplayPart p);

struct TrainExample {
  StateGraph graph;
  std::vector<double> policy_target;
  double value_target = 0.0;
  double value_weight = 1.0;
  ReplayPart part = ReplayPart::kProverWon;
};

struct LossReport {
  double value_loss = 0.0;   // mean of weight * (value - target)^2
  double policy_loss = 0.0;  // mean cross-entropy
  std::size_t examples = 0;
  double total() const { return value_loss + policy_loss; }
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// evaluate/evaluate_batch may be called concurrently; train_batch, save and
// load must not overlap with anything else.
class Evaluator {
 public:
  explicit Evaluator(std::size_t action_space) : action_space_(action_space) {}
  virtual ~Evaluator() = default;
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  std::size_t action_space() const { return action_space_; }
  virtual std::string name() const = 0;

  // One result per graph, in order. Throws std::invalid_argument on an
  // empty batch.
  virtual std::vector<Evaluation> evaluate_batch(
      std::span<const StateGraph> graphs) = 0;
  virtual Evaluation evaluate(const GameState& state);

  virtual bool trainable() const { return false; }
  // Throws UnsupportedOperation unless trainable(), std::invalid_argument on
  // an empty batch.
  virtual LossReport train_batch(std::span<const TrainExample> examples);
  virtual void save_params(const std::filesystem::path& path) const;
  virtual void load_params(const std::filesystem::path& path);

 private:
  std::size_t action_space_;
};

// Value 0 and a uniform policy for every state.
class UniformEvaluator final : public Evaluator {
 public:
  using Evaluator::Evaluator;
  std::string name() const override { return "uniform"; }
  std::vector<Evaluation> evaluate_batch(
      std::span<const StateGraph> graphs) override;
  Evaluation evaluate(const GameState& state) override;
};

}  // namespace tcg

#endif  // TCG_EVALUATOR_HPP_
