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

// Test-time proving, evaluation runs, the training loop and their reports.

#ifndef TCG_HARNESS_HPP_
#define TCG_HARNESS_HPP_

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcg/evaluator.hpp"
#include "tcg/logic.hpp"
#include "tcg/search.hpp"
#include "tcg/trace.hpp"
#include "tcg/training.hpp"

namespace tcg {

struct SolveConfig {
  GameConfig game;
  SearchConfig search;                 // test_mode is forced on
  std::size_t node_budget = 10000;     // nodes added over the whole problem
  std::size_t decision_budget = 1000;  // nodes added per move, at most
};

struct SolveResult {
  std::string id;
  bool solved = false;
  int moves = 0;
  std::size_t nodes = 0;
  double seconds = 0.0;
  std::optional<PlayoutTrace> trace;  // the prover's game, solved or not
};

// Plays the prover alone on `conjecture`: search from the current state,
// then either follow a certified path to a completed proof or make the
// most visited move and reuse its subtree. Stops when the game ends or the
// node budget is spent. A solution is only reported after its trace has
// been replayed through the game engine.
SolveResult solve_problem(std::shared_ptr<const LogicDef> logic, const Term& conjecture,
                          Evaluator& evaluator, const SolveConfig& cfg,
                          const std::string& id = "");

struct EvalReport {
  std::vector<SolveResult> results;  // in problem order
  int solved() const;
};

EvalReport run_eval(std::shared_ptr<const LogicDef> logic, const ProblemSet& problems,
                    Evaluator& evaluator, const SolveConfig& cfg, int workers = 1);

inline constexpr const char* kEvalCsvHeader = "problem_id,solved,moves,nodes,seconds";
inline constexpr const char* kCurveCsvHeader =
    "episode,solved,cumulative_unique,adv_wins,prover_wins,aux_replays";

void write_eval_csv(std::ostream& os, const EvalReport& report);

struct CurveRow {
  int episode = 0;
  int solved = 0;
  int cumulative_unique = 0;
  int adv_wins = 0;
  int prover_wins = 0;
  int aux_replays = 0;
};

void write_curve_header(std::ostream& os);
void write_curve_row(std::ostream& os, const CurveRow& row);
// Line chart of solved and cumulative_unique per episode.
std::string render_curve_svg(const std::vector<CurveRow>& rows, const std::string& title);

struct TrainingRun {
  std::vector<CurveRow> curve;
  std::vector<EpisodeStats> episodes;
  std::set<std::string> solved_ids;  // every problem solved after some episode
  bool stagnated = false;            // the last episode added nothing new
};

// Alternates run_episode and run_eval for `episodes` rounds. `on_episode`
// runs after each round, for example to flush the curve.
TrainingRun run_training(
    std::shared_ptr<const LogicDef> logic, const ProblemSet& problems,
    Evaluator& evaluator, const TrainingConfig& train, const SolveConfig& solve,
    int episodes,
    const std::function<void(const CurveRow&, const EpisodeStats&, const EvalReport&)>&
        on_episode = {});

}  // namespace tcg

#endif  // TCG_HARNESS_HPP_
