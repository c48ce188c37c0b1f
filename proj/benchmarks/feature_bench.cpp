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

#include <vector>

#include <benchmark/benchmark.h>

#include "tcg/feature_model.hpp"
#include "tcg/game.hpp"
#include "tcg/graph.hpp"
#include "tcg/logic.hpp"

namespace {

tcg::StateGraph SampleGraph() {
  auto logic = tcg::bundled_logic_ptr("fig2-mini");
  return tcg::encode_graph(tcg::start_from_conjecture(
      logic, tcg::parse_term("tee(nil, implies(p, implies(q, and(p, q))))"),
      tcg::GameConfig{}));
}

void BM_EncodeGraph(benchmark::State& state) {
  auto logic = tcg::bundled_logic_ptr("fig2-mini");
  const tcg::GameState s = tcg::start_from_conjecture(
      logic, tcg::parse_term("tee(nil, implies(p, implies(q, and(p, q))))"),
      tcg::GameConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(tcg::encode_graph(s));
}
BENCHMARK(BM_EncodeGraph);

void BM_FeatureEvaluate(benchmark::State& state) {
  tcg::FeatureEvaluator ev(6);
  std::vector<tcg::StateGraph> batch(static_cast<std::size_t>(state.range(0)), SampleGraph());
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate_batch(batch));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FeatureEvaluate)->Arg(1)->Arg(64);

void BM_FeatureTrain(benchmark::State& state) {
  tcg::FeatureEvaluator ev(6);
  tcg::TrainExample ex;
  ex.graph = SampleGraph();
  ex.policy_target = {0.5, 0.5, 0, 0, 0, 0};
  ex.value_target = 1.0;
  std::vector<tcg::TrainExample> batch(64, ex);
  for (auto _ : state) benchmark::DoNotOptimize(ev.train_batch(batch));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_FeatureTrain);

}  // namespace

BENCHMARK_MAIN();
