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

#include "tcg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "tcg/theorem_game.hpp"

namespace tcg {

SolveResult solve_problem(std::shared_ptr<const LogicDef> logic, const Term& conjecture,
                          Evaluator& evaluator, const SolveConfig& cfg,
                          const std::string& id) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  result.id = id;

  SearchConfig scfg = cfg.search;
  scfg.test_mode = true;
  TheoremGameDomain domain(evaluator);
  GameSearch search(domain, scfg);
  const GameState first = start_from_conjecture(logic, conjecture, cfg.game);
  TraceRecorder rec(first);
  search.set_root(first);

  while (!rec.finished() && result.nodes < cfg.node_budget) {
    const std::size_t budget =
        std::min(cfg.decision_budget, cfg.node_budget - result.nodes);
    SearchResult r = search.search(budget);
    result.nodes += r.nodes_added;
    if (r.actions.empty()) {  // no rule applies: the prover is stuck
      rec.end_if_stuck();
      break;
    }

    if (auto path = search.follow_final_path()) {
      for (std::size_t a : *path) {
        if (rec.finished()) break;
        rec.step(a);
      }
      break;
    }
    std::mt19937_64 unused;
    std::size_t action = choose_action(r, true, 0.0, unused);
    StepResult next = rec.step(action);
    if (is_terminal(next)) break;
    if (!search.reuse_subtree(action)) search.set_root(rec.state());
  }

  PlayoutTrace trace = rec.take();
  result.moves = static_cast<int>(trace.moves().size());
  if (trace.outcome && trace.outcome->winner == Player::kProver) {
    result.solved = verify_trace(trace, logic, cfg.game).ok;
  }
  result.trace = std::move(trace);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

int EvalReport::solved() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [](const SolveResult& r) { return r.solved; }));
}

EvalReport run_eval(std::shared_ptr<const LogicDef> logic, const ProblemSet& problems,
                    Evaluator& evaluator, const SolveConfig& cfg, int workers) {
  EvalReport report;
  const int n = static_cast<int>(problems.problems.size());
  report.results.resize(problems.problems.size());
  auto job = [&](int i) {
    const Problem& p = problems.problems[static_cast<std::size_t>(i)];
    report.results[static_cast<std::size_t>(i)] =
        solve_problem(logic, p.conjecture, evaluator, cfg, p.id);
  };
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) job(i);
    return report;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min(workers, n); ++w) {
    threads.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return report;
}

void write_eval_csv(std::ostream& os, const EvalReport& report) {
  os << kEvalCsvHeader << '\n';
  char seconds[32];
  for (const auto& r : report.results) {
    std::snprintf(seconds, sizeof(seconds), "%.3f", r.seconds);
    os << r.id << ',' << (r.solved ? 1 : 0) << ',' << r.moves << ',' << r.nodes << ','
       << seconds << '\n';
  }
}

void write_curve_header(std::ostream& os) { os << kCurveCsvHeader << '\n'; }

void write_curve_row(std::ostream& os, const CurveRow& r) {
  os << r.episode << ',' << r.solved << ',' << r.cumulative_unique << ',' << r.adv_wins
     << ',' << r.prover_wins << ',' << r.aux_replays << '\n';
  os.flush();
}

std::string render_curve_svg(const std::vector<CurveRow>& rows, const std::string& title) {
  constexpr double kW = 640, kH = 400, kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;
  int max_y = 1, max_x = 1;
  for (const auto& r : rows) {
    max_y = std::max({max_y, r.solved, r.cumulative_unique});
    max_x = std::max(max_x, r.episode);
  }
  auto px = [&](double x) { return kLeft + (kW - kLeft - kRight) * x / max_x; };
  auto py = [&](double y) { return kH - kBottom - (kH - kTop - kBottom) * y / max_y; };
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
      }
    }
    return out;
  };
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\">\n",
                kW, kH);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">", kLeft);
  svg += buf + escape(title) + "</text>\n";
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n"
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
                kLeft, py(0), kW - kRight, py(0), kLeft, py(0), kLeft, double(kTop));
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\">episode</text>\n"
                "<text x=\"10\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\">%d</text>\n"
                "<text x=\"10\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\">0</text>\n",
                (kW - kRight) / 2, kH - 15, py(max_y) + 4, max_y, py(0) + 4);
  svg += buf;
  auto polyline = [&](auto value, const char* color, const char* label, double ly) {
    std::string pts;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", px(r.episode), py(value(r)));
      pts += buf;
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%g\" y=\"%g\" fill=\"%s\" font-family=\"sans-serif\" "
                  "font-size=\"12\">%s</text>\n",
                  kW - 180, ly, color, label);
    svg += buf;
  };
  polyline([](const CurveRow& r) { return double(r.solved); }, "#1f77b4", "solved", kTop + 10);
  polyline([](const CurveRow& r) { return double(r.cumulative_unique); }, "#d62728",
           "cumulative unique", kTop + 26);
  svg += "</svg>\n";
  return svg;
}

TrainingRun run_training(
    std::shared_ptr<const LogicDef> logic, const ProblemSet& problems,
    Evaluator& evaluator, const TrainingConfig& train, const SolveConfig& solve,
    int episodes,
    const std::function<void(const CurveRow&, const EpisodeStats&, const EvalReport&)>&
        on_episode) {
  TrainingRun run;
  ReplayBuffer buffer(0, derive_seed(train.seed, 0xb0ff, 0));
  for (int e = 1; e <= episodes; ++e) {
    EpisodeStats stats = run_episode(logic, evaluator, train, buffer, e);
    EvalReport report = run_eval(logic, problems, evaluator, solve, train.workers);
    const std::size_t before = run.solved_ids.size();
    for (const auto& r : report.results) {
      if (r.solved) run.solved_ids.insert(r.id);
    }
    run.stagnated = run.solved_ids.size() == before;
    CurveRow row{e,
                 report.solved(),
                 static_cast<int>(run.solved_ids.size()),
                 stats.adversary_wins,
                 stats.prover_wins,
                 stats.aux_replays};
    run.curve.push_back(row);
    run.episodes.push_back(stats);
    if (on_episode) on_episode(row, stats, report);
  }
  return run;
}

}  // namespace tcg
