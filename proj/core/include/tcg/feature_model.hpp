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

// Built-in trainable evaluator: hashed graph features feeding a linear
// softmax policy head and a linear tanh value head.
//
// Features (each hashed with 64-bit FNV-1a into `dim` buckets, counted, then
// L2-normalized):
//   bias                          always present
//   mover, goal count, log2 size  global
//   root edge   (mover, goal head symbol)            per goal
//   head0       (goal 0 head symbol)
//   edge        (parent label, child label, argpos)  every term edge
//   edge0       same, for edges inside goal 0
//   theorem     (mover, theorem head) and tedge (...) for the theorem
// Each of these also fires a second time crossed with the mover. Only
// head0/edge0 depend on goal order.

#ifndef TCG_FEATURE_MODEL_HPP_
#define TCG_FEATURE_MODEL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "tcg/evaluator.hpp"

namespace tcg {

constexpr std::uint32_t kFeatureVersion = 2;
constexpr std::uint32_t kDefaultFeatureDim = 1u << 16;

struct SparseFeatures {
  std::vector<std::uint32_t> index;  // strictly increasing
  std::vector<double> value;
};

SparseFeatures feature_extract(const StateGraph& g,
                               std::uint32_t dim = kDefaultFeatureDim);

struct FeatureModelConfig {
  std::uint32_t dim = kDefaultFeatureDim;
  double learning_rate = 1e-2;
};

class FeatureEvaluator final : public Evaluator {
 public:
  explicit FeatureEvaluator(std::size_t action_space,
                            FeatureModelConfig config = {});

  std::string name() const override { return "feature"; }
  std::vector<Evaluation> evaluate_batch(
      std::span<const StateGraph> graphs) override;

  bool trainable() const override { return true; }
  // One SGD step on the mean loss over the batch.
  LossReport train_batch(std::span<const TrainExample> examples) override;
  void save_params(const std::filesystem::path& path) const override;
  // Throws std::runtime_error on a corrupt file or a mismatched version,
  // dimension or action space.
  void load_params(const std::filesystem::path& path) override;

  const FeatureModelConfig& config() const { return config_; }
  void set_learning_rate(double lr) { config_.learning_rate = lr; }

  // Layout: policy weights [a * dim + f], policy biases, value weights,
  // value bias.
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  Evaluation evaluate_features(const SparseFeatures& x) const;
  // Mean loss over the batch, as reported by train_batch before its step.
  LossReport loss(std::span<const TrainExample> examples) const;
  // Same, and writes the gradient of value_loss + policy_loss with respect
  // to params() into `grad` (resized and overwritten).
  LossReport loss_and_gradient(std::span<const TrainExample> examples,
                               std::vector<double>& grad) const;

 private:
  template <class Sink>
  LossReport accumulate(std::span<const TrainExample> examples, Sink&& sink) const;

  std::size_t policy_bias(std::size_t a) const {
    return action_space() * config_.dim + a;
  }
  std::size_t value_weight(std::size_t f) const {
    return action_space() * (config_.dim + 1) + f;
  }
  std::size_t value_bias() const {
    return action_space() * (config_.dim + 1) + config_.dim;
  }

  FeatureModelConfig config_;
  std::vector<double> params_;
};

}  // namespace tcg

#endif  // TCG_FEATURE_MODEL_HPP_
