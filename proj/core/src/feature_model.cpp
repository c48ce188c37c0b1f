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

#include "tcg/feature_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string_view>

namespace tcg {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

class FeatureHash {
 public:
  explicit FeatureHash(std::string_view tag) { bytes(tag); }
  FeatureHash& add(std::string_view s) {
    byte(0x1f);
    bytes(s);
    return *this;
  }
  FeatureHash& add(std::int64_t n) {
    byte(0x1e);
    for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(n >> (8 * i)));
    return *this;
  }
  std::uint64_t value() const { return h_; }

 private:
  void byte(unsigned char b) {
    h_ ^= b;
    h_ *= kFnvPrime;
  }
  void bytes(std::string_view s) {
    for (char c : s) byte(static_cast<unsigned char>(c));
  }
  std::uint64_t h_ = kFnvOffset;
};

enum Region : std::uint8_t { kNone, kGoal0, kGoalRest, kTheorem };

}  // namespace

SparseFeatures feature_extract(const StateGraph& g, std::uint32_t dim) {
  std::vector<std::uint32_t> raw;
  const std::string_view mover = to_string(g.mover);
  // Every feature also fires crossed with the mover, so the linear heads can
  // learn separate prover and adversary preferences.
  auto emit = [&](FeatureHash h) {
    raw.push_back(static_cast<std::uint32_t>(h.value() % dim));
    raw.push_back(static_cast<std::uint32_t>(h.add(mover).value() % dim));
  };

  emit(FeatureHash("bias"));
  emit(FeatureHash("mover").add(mover));
  emit(FeatureHash("ngoals").add(std::min<std::int64_t>(g.goal_roots.size(), 15)));
  emit(FeatureHash("size").add(
      static_cast<std::int64_t>(std::bit_width(g.nodes.size()))));

  // Regions by root; shared variables are leaves, so a parent's region is
  // unambiguous.
  std::vector<Region> region(g.nodes.size(), kNone);
  std::vector<std::vector<std::uint32_t>> children(g.nodes.size());
  for (const auto& e : g.edges) children[e.parent].push_back(e.child);
  auto paint = [&](std::uint32_t root, Region r) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      std::uint32_t n = stack.back();
      stack.pop_back();
      if (region[n] != kNone) continue;
      region[n] = r;
      for (std::uint32_t c : children[n]) stack.push_back(c);
    }
  };
  for (std::size_t i = 0; i < g.goal_roots.size(); ++i) {
    paint(g.goal_roots[i], i == 0 ? kGoal0 : kGoalRest);
  }
  if (g.theorem_root) paint(*g.theorem_root, kTheorem);

  if (!g.goal_roots.empty()) {
    emit(FeatureHash("head0").add(g.nodes[g.goal_roots[0]].label));
  }
  for (const auto& e : g.edges) {
    const std::string_view pl = g.nodes[e.parent].label;
    const std::string_view cl = g.nodes[e.child].label;
    if (g.nodes[e.parent].kind == NodeKind::kRoot) {
      emit(FeatureHash(e.argpos == kTheoremArgpos ? "theorem" : "root").add(pl).add(cl));
      continue;
    }
    switch (region[e.parent]) {
      case kTheorem:
        emit(FeatureHash("tedge").add(pl).add(cl).add(e.argpos));
        break;
      case kGoal0:
        emit(FeatureHash("edge0").add(pl).add(cl).add(e.argpos));
        [[fallthrough]];
      default:
        emit(FeatureHash("edge").add(pl).add(cl).add(e.argpos));
        break;
    }
  }

  std::sort(raw.begin(), raw.end());
  SparseFeatures out;
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    while (j < raw.size() && raw[j] == raw[i]) ++j;
    out.index.push_back(raw[i]);
    out.value.push_back(static_cast<double>(j - i));
    i = j;
  }
  double norm = 0.0;
  for (double v : out.value) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : out.value) v /= norm;
  return out;
}

FeatureEvaluator::FeatureEvaluator(std::size_t action_space,
                                   FeatureModelConfig config)
    : Evaluator(action_space), config_(config) {
  if (config_.dim == 0) throw std::invalid_argument("feature dim must be positive");
  params_.assign(action_space * (config_.dim + 1) + config_.dim + 1, 0.0);
}

Evaluation FeatureEvaluator::evaluate_features(const SparseFeatures& x) const {
  const std::size_t A = action_space();
  Evaluation out;
  out.policy.resize(A);
  double a = params_[value_bias()];
  for (std::size_t k = 0; k < x.index.size(); ++k) {
    a += params_[value_weight(x.index[k])] * x.value[k];
  }
  out.value = std::tanh(a);
  double max_logit = -INFINITY;
  for (std::size_t i = 0; i < A; ++i) {
    double z = params_[policy_bias(i)];
    const double* row = params_.data() + i * config_.dim;
    for (std::size_t k = 0; k < x.index.size(); ++k) z += row[x.index[k]] * x.value[k];
    out.policy[i] = z;
    max_logit = std::max(max_logit, z);
  }
  double sum = 0.0;
  for (double& p : out.policy) sum += (p = std::exp(p - max_logit));
  for (double& p : out.policy) p /= sum;
  return out;
}

std::vector<Evaluation> FeatureEvaluator::evaluate_batch(
    std::span<const StateGraph> graphs) {
  if (graphs.empty()) throw std::invalid_argument("empty evaluation batch");
  std::vector<Evaluation> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) {
    out.push_back(evaluate_features(feature_extract(g, config_.dim)));
  }
  return out;
}

// Calls sink(param_index, dloss/dparam) for every nonzero gradient term; an
// index may be reported more than once.
template <class Sink>
LossReport FeatureEvaluator::accumulate(std::span<const TrainExample> examples,
                                        Sink&& sink) const {
  if (examples.empty()) throw std::invalid_argument("empty training batch");
  const std::size_t A = action_space();
  const double inv_b = 1.0 / static_cast<double>(examples.size());
  LossReport report;
  report.examples = examples.size();
  for (const TrainExample& ex : examples) {
    if (ex.policy_target.size() != A) {
      throw std::invalid_argument("policy target length differs from action space");
    }
    SparseFeatures x = feature_extract(ex.graph, config_.dim);
    Evaluation e = evaluate_features(x);

    const double diff = e.value - ex.value_target;
    report.value_loss += ex.value_weight * diff * diff * inv_b;
    double target_mass = 0.0;
    for (std::size_t i = 0; i < A; ++i) {
      target_mass += ex.policy_target[i];
      if (ex.policy_target[i] > 0.0) {
        report.policy_loss -=
            ex.policy_target[i] * std::log(std::max(e.policy[i], 1e-300)) * inv_b;
      }
    }

    // d/d(pre-tanh) of w * (tanh(a) - z)^2.
    const double gv = 2.0 * ex.value_weight * diff * (1.0 - e.value * e.value) * inv_b;
    if (gv != 0.0) {
      sink(value_bias(), gv);
      for (std::size_t k = 0; k < x.index.size(); ++k) {
        sink(value_weight(x.index[k]), gv * x.value[k]);
      }
    }
    for (std::size_t i = 0; i < A; ++i) {
      const double gl = (e.policy[i] * target_mass - ex.policy_target[i]) * inv_b;
      if (gl == 0.0) continue;
      sink(policy_bias(i), gl);
      for (std::size_t k = 0; k < x.index.size(); ++k) {
        sink(i * config_.dim + x.index[k], gl * x.value[k]);
      }
    }
  }
  return report;
}

LossReport FeatureEvaluator::loss(std::span<const TrainExample> examples) const {
  return accumulate(examples, [](std::size_t, double) {});
}

LossReport FeatureEvaluator::loss_and_gradient(
    std::span<const TrainExample> examples, std::vector<double>& grad) const {
  grad.assign(params_.size(), 0.0);
  return accumulate(examples, [&](std::size_t i, double g) { grad[i] += g; });
}

LossReport FeatureEvaluator::train_batch(std::span<const TrainExample> examples) {
  std::vector<std::pair<std::size_t, double>> grad;
  LossReport r = accumulate(examples, [&](std::size_t i, double g) {
    grad.emplace_back(i, g);
  });
  for (const auto& [i, g] : grad) params_[i] -= config_.learning_rate * g;
  return r;
}

namespace {

constexpr char kMagic[8] = {'T', 'C', 'G', 'F', 'E', 'A', 'T', '\0'};

std::uint64_t checksum(std::span<const double> values) {
  std::uint64_t h = kFnvOffset;
  const auto* bytes = reinterpret_cast<const unsigned char*>(values.data());
  for (std::size_t i = 0; i < values.size_bytes(); ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
  return h;
}

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("feature model file is truncated");
  return v;
}

}  // namespace

void FeatureEvaluator::save_params(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kFeatureVersion);
  put<std::uint32_t>(os, config_.dim);
  put<std::uint64_t>(os, action_space());
  put<std::uint64_t>(os, params_.size());
  os.write(reinterpret_cast<const char*>(params_.data()),
           static_cast<std::streamsize>(params_.size() * sizeof(double)));
  put<std::uint64_t>(os, checksum(params_));
  if (!os) throw std::runtime_error("error writing " + path.string());
}

void FeatureEvaluator::load_params(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  char magic[sizeof(kMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error(path.string() + " is not a feature model file");
  }
  auto version = get<std::uint32_t>(is);
  if (version != kFeatureVersion) {
    throw std::runtime_error("feature model version " + std::to_string(version) +
                             " is not supported");
  }
  auto dim = get<std::uint32_t>(is);
  auto actions = get<std::uint64_t>(is);
  auto count = get<std::uint64_t>(is);
  if (dim != config_.dim || actions != action_space() || count != params_.size()) {
    throw std::runtime_error("feature model shape mismatch: file has dim " +
                             std::to_string(dim) + " and " +
                             std::to_string(actions) + " actions");
  }
  std::vector<double> values(count);
  is.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!is) throw std::runtime_error("feature model file is truncated");
  if (get<std::uint64_t>(is) != checksum(values)) {
    throw std::runtime_error("feature model checksum mismatch");
  }
  params_ = std::move(values);
}

}  // namespace tcg
