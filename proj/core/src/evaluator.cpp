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

#include "tcg/evaluator.hpp"

namespace tcg {

const char* to_string(ReplayPart p) {
  switch (p) {
    case ReplayPart::kProverWon: return "prover_won";
    case ReplayPart::kAdversaryWon: return "adversary_won";
    case ReplayPart::kAuxiliary: return "auxiliary";
  }
  return "?";
}

Evaluation Evaluator::evaluate(const GameState& state) {
  StateGraph g = encode_graph(state);
  return evaluate_batch(std::span<const StateGraph>(&g, 1)).front();
}

LossReport Evaluator::train_batch(std::span<const TrainExample>) {
  throw UnsupportedOperation("evaluator '" + name() + "' is not trainable");
}

void Evaluator::save_params(const std::filesystem::path&) const {
  throw UnsupportedOperation("evaluator '" + name() + "' has no parameters");
}

void Evaluator::load_params(const std::filesystem::path&) {
  throw UnsupportedOperation("evaluator '" + name() + "' has no parameters");
}

std::vector<Evaluation> UniformEvaluator::evaluate_batch(
    std::span<const StateGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("empty evaluation batch");
  Evaluation e{0.0, std::vector<double>(action_space(), 1.0 / action_space())};
  return std::vector<Evaluation>(graphs.size(), e);
}

Evaluation UniformEvaluator::evaluate(const GameState&) {
  return {0.0, std::vector<double>(action_space(), 1.0 / action_space())};
}

}  // namespace tcg
