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

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "tcg/evaluator.hpp"
#include "tcg/external_evaluator.hpp"
#include "tcg/feature_model.hpp"
#include "tcg/harness.hpp"
#include "tcg/logic.hpp"
#include "tcg/trace.hpp"
#include "tcg/training.hpp"

namespace tcg::cli {

namespace fs = std::filesystem;

const std::vector<std::string> kConfigKeys = {
    "logic",   "problems", "seed",        "workers",  "budget", "train_budget",
    "decision_budget",    "games",        "episodes", "steps",  "batch",
    "temperature", "move_cap", "evaluator", "cvp",    "aux",    "balance",
    "out"};

namespace {

using nlohmann::json;

template <class T>
T json_integer(const json& v, const std::string& key, long long min) {
  if (!v.is_number_integer() || v.get<long long>() < min) {
    throw UsageError("config key '" + key + "' must be an integer >= " +
                     std::to_string(min));
  }
  return static_cast<T>(v.get<long long>());
}

bool json_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw UsageError("config key '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string json_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

void apply_config_json(const std::string& text, Options& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "logic") opts.logic = json_string(v, key);
    else if (key == "problems") opts.problems = json_string(v, key);
    else if (key == "seed") opts.seed = json_integer<std::uint64_t>(v, key, 0);
    else if (key == "workers") opts.workers = json_integer<int>(v, key, 1);
    else if (key == "budget") opts.budget = json_integer<std::size_t>(v, key, 1);
    else if (key == "train_budget") opts.train_budget = json_integer<std::size_t>(v, key, 1);
    else if (key == "decision_budget") opts.decision_budget = json_integer<std::size_t>(v, key, 1);
    else if (key == "games") opts.games = json_integer<int>(v, key, 0);
    else if (key == "episodes") opts.episodes = json_integer<int>(v, key, 0);
    else if (key == "steps") opts.steps = json_integer<int>(v, key, 0);
    else if (key == "batch") opts.batch = json_integer<std::size_t>(v, key, 1);
    else if (key == "move_cap") opts.move_cap = json_integer<int>(v, key, 1);
    else if (key == "temperature") {
      if (!v.is_number() || v.get<double>() <= 0.0) {
        throw UsageError("config key 'temperature' must be a positive number");
      }
      opts.temperature = v.get<double>();
    } else if (key == "evaluator") opts.evaluator = json_string(v, key);
    else if (key == "cvp") opts.cvp = json_bool(v, key);
    else if (key == "aux") opts.aux = json_bool(v, key);
    else if (key == "balance") opts.balance = json_bool(v, key);
    else if (key == "out") opts.out = json_string(v, key);
    else throw UsageError("unknown config key '" + key + "'");
  }
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const LogicDef> resolve_logic(const Options& o) {
  if (o.logic.empty()) throw UsageError("--logic is required");
  for (const auto& name : bundled_logic_names()) {
    if (name == o.logic) return bundled_logic_ptr(name);
  }
  if (!fs::exists(o.logic)) {
    throw std::runtime_error("unknown logic '" + o.logic +
                             "': not a bundled logic and no such file");
  }
  return std::make_shared<LogicDef>(load_logic(o.logic));
}

ProblemSet resolve_problems(const Options& o, const LogicDef& logic) {
  if (o.problems.empty()) return bundled_problems(logic.name);
  if (!fs::exists(o.problems)) {
    throw std::runtime_error("problems file not found: " + o.problems);
  }
  return load_problems(o.problems);
}

GameConfig game_config(const Options& o, const LogicDef& logic) {
  GameConfig g;
  g.max_moves_per_phase = o.move_cap.value_or(recommended_move_cap(logic.name));
  return g;
}

SolveConfig solve_config(const Options& o, const GameConfig& game) {
  SolveConfig s;
  s.game = game;
  s.search.cvp = o.cvp;
  s.node_budget = o.budget;
  s.decision_budget = o.decision_budget;
  return s;
}

struct EvaluatorHandle {
  std::unique_ptr<Evaluator> evaluator;
  fs::path save_path;  // where trained parameters go, if anywhere
};

EvaluatorHandle make_evaluator(const Options& o, const LogicDef& logic,
                               bool training) {
  std::string choice = o.evaluator;
  if (choice.empty()) choice = training ? "feature" : "uniform";
  const std::size_t actions = logic.action_space();
  const std::string kind = choice.substr(0, choice.find(':'));
  const std::string arg =
      choice.find(':') == std::string::npos ? "" : choice.substr(choice.find(':') + 1);
  EvaluatorHandle h;
  if (kind == "uniform" && arg.empty()) {
    h.evaluator = std::make_unique<UniformEvaluator>(actions);
    return h;
  }
  if (kind == "feature") {
    h.evaluator = std::make_unique<FeatureEvaluator>(actions);
    if (!arg.empty()) {
      if (fs::exists(arg)) {
        h.evaluator->load_params(arg);
      } else if (!training) {
        throw std::runtime_error("model file not found: " + arg);
      }
      h.save_path = arg;
    } else if (training && !o.out.empty()) {
      h.save_path = fs::path(o.out) / "model.tcgf";
    }
    return h;
  }
  if (kind == "external" && !arg.empty()) {
    ExternalEndpoint endpoint;
    try {
      endpoint = parse_endpoint(arg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    h.evaluator = std::make_unique<ExternalEvaluator>(actions, endpoint);
    if (training && !o.out.empty()) h.save_path = fs::path(o.out) / "model.params";
    return h;
  }
  throw UsageError("bad --evaluator '" + choice +
                   "' (expected uniform, feature[:file] or external:<endpoint>)");
}

// Opens `path` for writing, or returns nullptr so that callers use stdout.
std::unique_ptr<std::ofstream> open_output(const fs::path& path) {
  if (path.empty()) return nullptr;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_logics(std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-18s %6s %9s %9s\n", "logic", "rules",
                "problems", "move_cap");
  out << line;
  for (const auto& name : bundled_logic_names()) {
    std::snprintf(line, sizeof line, "%-18s %6zu %9zu %9d\n", name.c_str(),
                  bundled_logic(name).rules.size(),
                  bundled_problems(name).problems.size(),
                  recommended_move_cap(name));
    out << line;
  }
  return kExitOk;
}

std::string aggregate_line(const EvalReport& r, const LogicDef& logic,
                           const Options& o, const Evaluator& ev) {
  return "solved " + std::to_string(r.solved()) + "/" +
         std::to_string(r.results.size()) + " logic=" + logic.name +
         " budget=" + std::to_string(o.budget) + " evaluator=" + ev.name() +
         " cvp=" + (o.cvp ? "on" : "off");
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  auto logic = resolve_logic(o);
  ProblemSet problems = resolve_problems(o, *logic);
  EvaluatorHandle h = make_evaluator(o, *logic, false);
  EvalReport report = run_eval(logic, problems, *h.evaluator,
                               solve_config(o, game_config(o, *logic)), o.workers);
  auto file = open_output(o.out);
  write_eval_csv(file ? *file : out, report);
  (file ? out : err) << aggregate_line(report, *logic, o, *h.evaluator) << "\n";
  return kExitOk;
}

int cmd_solve(const Options& o, const std::string& conjecture,
              const std::string& problem_id, std::ostream& out, std::ostream& err) {
  auto logic = resolve_logic(o);
  if (conjecture.empty() == problem_id.empty()) {
    throw UsageError("solve needs exactly one of a conjecture or --problem");
  }
  Term goal;
  std::string id = problem_id;
  if (!problem_id.empty()) {
    ProblemSet set = resolve_problems(o, *logic);
    bool found = false;
    for (const auto& p : set.problems) {
      if (p.id == problem_id) {
        goal = p.conjecture;
        found = true;
      }
    }
    if (!found) throw std::runtime_error("no problem '" + problem_id + "'");
  } else {
    goal = parse_term(conjecture);
    id = "conjecture";
  }
  EvaluatorHandle h = make_evaluator(o, *logic, false);
  SolveResult r = solve_problem(logic, goal, *h.evaluator,
                                solve_config(o, game_config(o, *logic)), id);
  auto file = open_output(o.out);
  if (r.trace) write_trace(file ? *file : out, *r.trace);
  (file ? out : err) << (r.solved ? "solved" : "unsolved") << " " << id
                     << " moves=" << r.moves << " nodes=" << r.nodes
                     << " seconds=" << fixed(r.seconds) << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, const std::string& trace_path, std::ostream& out,
               std::ostream& err) {
  PlayoutTrace trace = parse_trace(read_file(trace_path));
  Options with_logic = o;
  if (with_logic.logic.empty()) with_logic.logic = trace.logic;
  auto logic = resolve_logic(with_logic);
  TraceCheck check = verify_trace(trace, logic, game_config(with_logic, *logic));
  if (!check.ok) {
    err << "trace mismatch: " << check.message << "\n";
    return kExitRuntime;
  }
  out << "ok " << trace.moves().size() << " moves";
  if (trace.outcome) {
    out << ", " << to_string(trace.outcome->winner) << " wins by "
        << to_string(trace.outcome->reason);
  }
  out << "\n";
  return kExitOk;
}

void save_if_requested(const EvaluatorHandle& h) {
  if (h.save_path.empty() || !h.evaluator->trainable()) return;
  if (h.save_path.has_parent_path()) fs::create_directories(h.save_path.parent_path());
  h.evaluator->save_params(h.save_path);
}

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  auto logic = resolve_logic(o);
  ProblemSet problems = resolve_problems(o, *logic);
  EvaluatorHandle h = make_evaluator(o, *logic, true);
  const GameConfig game = game_config(o, *logic);

  TrainingConfig tc;
  tc.game = game;
  tc.search.cvp = o.cvp;
  tc.decision_budget = o.train_budget;
  tc.temperature = o.temperature;
  tc.games_per_episode = o.games;
  tc.train_steps = o.steps;
  tc.batch_size = o.batch;
  tc.auxiliary = o.aux;
  tc.balance = o.balance;
  tc.workers = o.workers;
  tc.seed = o.seed;

  std::unique_ptr<std::ofstream> curve_file;
  fs::path svg_path;
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    curve_file = open_output(fs::path(o.out) / "curve.csv");
    svg_path = fs::path(o.out) / "curve.svg";
  }
  std::ostream& curve = curve_file ? *curve_file : out;
  std::ostream& log = curve_file ? out : err;
  write_curve_header(curve);

  std::vector<CurveRow> rows;
  auto on_episode = [&](const CurveRow& row, const EpisodeStats& s, const EvalReport&) {
    write_curve_row(curve, row);
    rows.push_back(row);
    if (!svg_path.empty()) {
      std::ofstream svg(svg_path);
      svg << render_curve_svg(rows, logic->name + " training");
    }
    save_if_requested(h);
    log << "episode " << row.episode << ": solved " << row.solved << "/"
        << problems.problems.size() << " unique " << row.cumulative_unique
        << " games " << s.games << " prover_wins " << s.prover_wins
        << " adv_wins " << s.adversary_wins << " aux " << s.aux_replays
        << " mean_len " << fixed(s.mean_length, 1) << " value_loss "
        << fixed(s.value_loss, 4) << " policy_loss " << fixed(s.policy_loss, 4)
        << "\n";
    log.flush();
  };
  TrainingRun run = run_training(logic, problems, *h.evaluator, tc,
                                 solve_config(o, game), o.episodes, on_episode);
  log << "total solved during training " << run.solved_ids.size() << "/"
      << problems.problems.size() << (run.stagnated ? " (last episode added none)" : "")
      << "\n";
  return kExitOk;
}

int cmd_baseline(const Options& o, std::ostream& out, std::ostream& err) {
  auto logic = resolve_logic(o);
  ProblemSet problems = resolve_problems(o, *logic);
  EvaluatorHandle h = make_evaluator(o, *logic, true);
  const GameConfig game = game_config(o, *logic);

  BaselineData data = generate_baseline(logic, o.games, game, o.seed);
  LossReport loss;
  if (h.evaluator->trainable() && !data.examples.empty() && o.steps > 0) {
    loss = train_on_examples(*h.evaluator, data.examples, o.steps, o.batch,
                             derive_seed(o.seed, 0xba5e, 0));
  }
  save_if_requested(h);
  EvalReport report =
      run_eval(logic, problems, *h.evaluator, solve_config(o, game), o.workers);

  auto file = open_output(o.out.empty() ? fs::path() : fs::path(o.out) / "baseline.csv");
  write_eval_csv(file ? *file : out, report);
  double mean_moves = 0.0;
  for (int m : data.move_counts) mean_moves += m;
  if (!data.move_counts.empty()) mean_moves /= static_cast<double>(data.move_counts.size());
  std::ostream& log = file ? out : err;
  log << "baseline playouts " << data.playouts << " constructed " << data.constructed
      << " mean_moves " << fixed(mean_moves, 2) << " examples " << data.examples.size()
      << " value_loss " << fixed(loss.value_loss, 4) << " policy_loss "
      << fixed(loss.policy_loss, 4) << "\n";
  log << aggregate_line(report, *logic, o, *h.evaluator) << "\n";
  return kExitOk;
}

// Registers a flag whose value, when given, overrides the config file.
template <class T>
void add_setting(CLI::App& app, std::vector<std::function<void(Options&)>>& apply,
          const std::string& name, std::function<void(Options&, const T&)> set,
          const std::string& desc, const CLI::Validator* check = nullptr) {
  auto value = std::make_shared<T>();
  CLI::Option* opt = app.add_option(name, *value, desc);
  if (check != nullptr) opt->check(*check);
  apply.push_back([opt, value, set](Options& o) {
    if (opt->count() > 0) set(o, *value);
  });
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn to prove theorems from inference rules by self-play.", "tcg"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::vector<std::function<void(Options&)>> apply;
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file with any of the flag settings; flags override it")
      ->check(CLI::ExistingFile);
  add_setting<std::string>(app, apply, "--logic", [](Options& o, const std::string& v) { o.logic = v; },
                    "Bundled logic name or path to a .logic file");
  add_setting<std::string>(app, apply, "--problems",
                    [](Options& o, const std::string& v) { o.problems = v; },
                    "Problem file (default: the logic's bundled problems)");
  add_setting<std::uint64_t>(app, apply, "--seed",
                      [](Options& o, const std::uint64_t& v) { o.seed = v; }, "Random seed");
  add_setting<int>(app, apply, "--workers", [](Options& o, const int& v) { o.workers = v; },
            "Parallel games or problems", &CLI::PositiveNumber);
  add_setting<std::size_t>(app, apply, "--budget",
                    [](Options& o, const std::size_t& v) { o.budget = v; },
                    "Search nodes per problem for eval and solve (default 10000)",
                    &CLI::PositiveNumber);
  add_setting<std::size_t>(app, apply, "--decision-budget",
                    [](Options& o, const std::size_t& v) { o.decision_budget = v; },
                    "Search nodes per move for eval and solve (default 1000)",
                    &CLI::PositiveNumber);
  add_setting<std::size_t>(app, apply, "--train-budget",
                    [](Options& o, const std::size_t& v) { o.train_budget = v; },
                    "Search nodes per self-play move (default 128)", &CLI::PositiveNumber);
  add_setting<int>(app, apply, "--games", [](Options& o, const int& v) { o.games = v; },
            "Self-play games per episode, or baseline playouts (default 200)",
            &CLI::NonNegativeNumber);
  add_setting<int>(app, apply, "--episodes", [](Options& o, const int& v) { o.episodes = v; },
            "Training episodes (default 10)", &CLI::NonNegativeNumber);
  add_setting<int>(app, apply, "--steps", [](Options& o, const int& v) { o.steps = v; },
            "Training steps per episode or for the baseline (default 100)",
            &CLI::NonNegativeNumber);
  add_setting<std::size_t>(app, apply, "--batch", [](Options& o, const std::size_t& v) { o.batch = v; },
                    "Training batch size (default 64)", &CLI::PositiveNumber);
  add_setting<double>(app, apply, "--temperature",
               [](Options& o, const double& v) { o.temperature = v; },
               "Self-play move sampling temperature (default 1)", &CLI::PositiveNumber);
  add_setting<int>(app, apply, "--move-cap", [](Options& o, const int& v) { o.move_cap = v; },
            "Moves allowed per phase (default: per logic)", &CLI::PositiveNumber);
  add_setting<std::string>(app, apply, "--evaluator",
                    [](Options& o, const std::string& v) { o.evaluator = v; },
                    "uniform | feature[:file] | external:process:<cmd> | "
                    "external:tcp:<host>:<port>");
  add_setting<std::string>(app, apply, "--out", [](Options& o, const std::string& v) { o.out = v; },
                    "Output: CSV file (eval), trace file (solve) or directory "
                    "(train, baseline); default stdout");
  auto* no_cvp = app.add_flag("--no-cvp", "Disable certain-value propagation");
  auto* no_aux = app.add_flag("--no-aux", "Disable auxiliary replays");
  auto* no_balance = app.add_flag("--no-balance", "Disable replay balancing");

  auto* train = app.add_subcommand("train", "Self-play training with evaluation per episode");
  auto* baseline = app.add_subcommand(
      "baseline", "Train on random constructions, then evaluate");
  auto* eval = app.add_subcommand("eval", "Evaluate on a problem set and write CSV");
  auto* solve = app.add_subcommand("solve", "Prove one conjecture and print the trace");
  auto* logics = app.add_subcommand("logics", "List the bundled logics");
  auto* verify = app.add_subcommand("verify", "Replay a trace file through the engine");
  for (auto* sub : {train, baseline, eval, solve, logics, verify}) sub->fallthrough();
  std::string conjecture, problem_id, trace_path;
  solve->add_option("conjecture", conjecture, "Ground term to prove");
  solve->add_option("--problem", problem_id, "Problem id from the problem set");
  verify->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Options opts;
    if (!config_path.empty()) apply_config_json(read_file(config_path), opts);
    for (auto& f : apply) f(opts);
    if (no_cvp->count() > 0) opts.cvp = false;
    if (no_aux->count() > 0) opts.aux = false;
    if (no_balance->count() > 0) opts.balance = false;

    if (*logics) return cmd_logics(out);
    if (*eval) return cmd_eval(opts, out, err);
    if (*solve) return cmd_solve(opts, conjecture, problem_id, out, err);
    if (*verify) return cmd_verify(opts, trace_path, out, err);
    if (*train) return cmd_train(opts, out, err);
    if (*baseline) return cmd_baseline(opts, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tcg::cli
