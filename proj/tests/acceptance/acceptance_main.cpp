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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero if any fails. Arguments, if given, select criteria by name.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "example_game.hpp"
#include "proof_search.hpp"
#include "reference_unifier.hpp"
#include "sokoban_bfs.hpp"
#include "tcg/evaluator.hpp"
#include "tcg/feature_model.hpp"
#include "tcg/game.hpp"
#include "tcg/harness.hpp"
#include "tcg/logic.hpp"
#include "tcg/replay.hpp"
#include "tcg/sokoban.hpp"
#include "tcg/trace.hpp"
#include "tcg/training.hpp"
#include "tcg/unify.hpp"
#include "tree_domain.hpp"

namespace {

using namespace tcg;
using namespace tcg::testing;

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict pass(std::string detail) { return {true, std::move(detail)}; }
Verdict fail(std::string detail) { return {false, std::move(detail)}; }

GameConfig config_for(const std::string& logic) {
  GameConfig g;
  g.max_moves_per_phase = recommended_move_cap(logic);
  return g;
}

// ---------------------------------------------------------------------------

Verdict example_game_trace() {
  auto logic = bundled_logic_ptr("fig2-mini");
  std::string diff = check_example_game(logic);
  if (!diff.empty()) return fail(diff);

  // The same game through the recorder, then replayed from its text form.
  TraceRecorder rec(initial_state(logic));
  for (int r : {2, 3, 4, 1, 6, 5, 1, 2, 6, 5, 1}) rec.step(static_cast<std::size_t>(r - 1));
  if (!rec.finished()) return fail("recorded game did not finish");
  PlayoutTrace trace = parse_trace(format_trace(rec.trace()));
  TraceCheck check = verify_trace(trace, logic, GameConfig{});
  if (!check.ok) return fail("recorded trace does not verify: " + check.message);
  const Outcome want{Player::kProver, OutcomeReason::kProofComplete};
  if (!trace.outcome || *trace.outcome != want) return fail("outcome is not a prover win");
  return pass("12 rows match up to renaming; prover won by proof_complete");
}

// ---------------------------------------------------------------------------

std::optional<Term> board_of_theorem(const Term& theorem) {
  if (!theorem.is_compound() || theorem.arity() != 1) return std::nullopt;
  return theorem.arg(0);
}

Verdict construction_soundness() {
  const std::vector<std::string> logics = {"fig2-mini", "int-prop-sequent", "modal-k",
                                           "sokoban-6x6"};
  const int playouts = 1000;
  std::string summary;
  for (const auto& name : logics) {
    auto logic = bundled_logic_ptr(name);
    const GameConfig game = config_for(name);
    std::mt19937_64 rng(0x5eed + name.size());
    int completed = 0, bfs_checked = 0;
    for (int p = 0; p < playouts; ++p) {
      GameState s = initial_state(logic, game);
      std::vector<std::size_t> moves;
      bool done = false;
      while (true) {
        auto legal = legal_actions(s);
        if (legal.empty()) break;
        std::size_t a = legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)];
        StepResult r = apply_action(s, a);
        if (is_terminal(r)) break;
        moves.push_back(a);
        s = std::get<GameState>(std::move(r));
        if (s.needs_handover()) {
          done = true;
          break;
        }
      }
      if (!done) continue;
      ++completed;
      const Term theorem = handover(s).theorem;
      // The prover replays the adversary's moves on the frozen theorem.
      GameState t = start_from_conjecture(logic, theorem, game);
      std::optional<Outcome> outcome;
      for (std::size_t i = 0; i < moves.size(); ++i) {
        StepResult r = apply_action(t, moves[i]);
        if (const auto* o = std::get_if<Outcome>(&r)) {
          if (i + 1 != moves.size()) return fail(name + ": replay ended early");
          outcome = *o;
          break;
        }
        t = std::get<GameState>(std::move(r));
      }
      if (!outcome || outcome->winner != Player::kProver ||
          outcome->reason != OutcomeReason::kProofComplete) {
        return fail(name + ": construction " + std::to_string(p) +
                    " is not provable by replay: " + format_term(theorem));
      }
      if (name == "sokoban-6x6") {
        auto board_term = board_of_theorem(theorem);
        auto board = board_term ? sokoban_board_from_term(*board_term) : std::nullopt;
        if (!board) return fail("sokoban theorem is not a board: " + format_term(theorem));
        SokobanSolveResult bfs = solve_sokoban_bfs(*board);
        if (!bfs.solvable) {
          return fail("BFS finds no solution for constructed board:\n" +
                      format_sokoban_ascii(*board));
        }
        ++bfs_checked;
      }
    }
    if (completed == 0) return fail(name + ": no construction completed");
    summary += name + " " + std::to_string(completed) + "/" + std::to_string(playouts);
    if (name == "sokoban-6x6") summary += " (BFS-verified " + std::to_string(bfs_checked) + ")";
    summary += "; ";
  }
  return pass("provable constructions: " + summary);
}

// ---------------------------------------------------------------------------

Term perturb(std::mt19937_64& rng, const Term& t, unsigned num_vars, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  int c = pick(rng);
  if (c == 0) return Term::variable(std::uniform_int_distribution<unsigned>(0, num_vars - 1)(rng));
  if (c == 1) return random_term(rng, std::max(depth - 1, 0), num_vars);
  if (t.is_variable() || t.arity() == 0) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(perturb(rng, a, num_vars, depth - 1));
  return Term::compound(t.atom(), std::move(args));
}

Verdict unification_oracle() {
  std::mt19937_64 rng(20260101);
  const int pairs = 10000;
  int solvable = 0;
  for (int i = 0; i < pairs; ++i) {
    const unsigned nv = 1 + static_cast<unsigned>(i % 6);
    const int depth = i % 7;
    Term a = random_term(rng, depth, nv);
    Term b = i % 2 == 0 ? random_term(rng, depth, nv) : perturb(rng, a, nv, depth);
    auto sigma = unify(a, b);
    auto theta = ref_unify(to_ref(a), to_ref(b));
    const std::string where = "pair " + std::to_string(i) + " " + format_term(a) +
                              " = " + format_term(b);
    if (sigma.has_value() != theta.has_value()) {
      return fail(where + ": unify says " + (sigma ? "yes" : "no") + ", reference says " +
                  (theta ? "yes" : "no"));
    }
    if (!sigma) continue;
    ++solvable;
    if (apply_subst(*sigma, a) != apply_subst(*sigma, b)) return fail(where + ": not a unifier");
    // sigma as a fully applied map over the variables of both terms.
    std::vector<VarId> vars = variables_of(a);
    for (VarId v : variables_of(b)) vars.push_back(v);
    RefSubst s;
    for (VarId v : vars) {
      RefTerm img = to_ref(apply_subst(*sigma, Term::variable(v)));
      if (!(img.is_var && img.var == v)) s[v] = img;
    }
    for (VarId v : vars) {
      RefTerm x;
      x.is_var = true;
      x.var = v;
      const RefTerm sx = ref_apply(s, x), tx = ref_apply(*theta, x);
      // Idempotent sigma is more general than theta iff theta = sigma;theta,
      // and the converse shows sigma is no more specific than theta.
      if (ref_apply(s, sx) != sx) return fail(where + ": unifier is not idempotent");
      if (ref_apply(*theta, sx) != tx) return fail(where + ": theta is not an instance of sigma");
      if (ref_apply(s, tx) != sx) return fail(where + ": sigma is not an instance of theta");
    }
  }
  return pass(std::to_string(pairs) + " pairs agree, " + std::to_string(solvable) +
              " solvable with most general unifiers");
}

// ---------------------------------------------------------------------------

Verdict cvp_correctness() {
  std::mt19937_64 rng(4242);
  std::size_t max_seen = 0, partial_checked = 0;
  for (int t = 0; t < 200; ++t) {
    TreeTable table = random_tree(rng, 500, 0.55);
    max_seen = std::max(max_seen, table.total_nodes());
    if (table.total_nodes() > 500) return fail("generated tree exceeds 500 nodes");
    SearchConfig cfg;
    cfg.noise_fraction = 0.0;

    TreeDomain dom(table);
    TreeSearch full(dom, cfg);
    full.set_root(0);
    full.search(1'000'000);
    if (full.root().open) return fail("tree " + std::to_string(t) + " not fully expanded");
    if (full.root().size != table.total_nodes()) return fail("node count differs from tree size");
    if (auto d = check_minimax(table, full.root()); !d.empty()) {
      return fail("tree " + std::to_string(t) + ": " + d);
    }
    if (auto d = check_against_reference(table, full.root(), true); !d.empty()) {
      return fail("tree " + std::to_string(t) + " full: " + d);
    }

    for (bool cvp : {true, false}) {
      SearchConfig pc = cfg;
      pc.cvp = cvp;
      TreeDomain pdom(table);
      TreeSearch partial(pdom, pc);
      partial.set_root(0);
      std::size_t budget =
          std::uniform_int_distribution<std::size_t>(1, table.total_nodes())(rng);
      partial.search(budget);
      if (auto d = check_against_reference(table, partial.root(), cvp); !d.empty()) {
        return fail("tree " + std::to_string(t) + " partial (cvp " + (cvp ? "on" : "off") +
                    "): " + d);
      }
      ++partial_checked;
    }
  }
  return pass("200 complete trees (up to " + std::to_string(max_seen) +
              " nodes) match minimax; " + std::to_string(partial_checked) +
              " partial trees match the reference formulas exactly");
}

// ---------------------------------------------------------------------------

// Builds the example tree: root, right child and both its children, then
// the left child.
void build_cvp_example(TreeSearch& m) {
  m.set_root(0);
  const std::vector<std::vector<std::size_t>> paths = {{1}, {1, 0}, {1, 1}, {0}};
  for (const auto& p : paths) m.expand_along(p);
}

Verdict cvp_example_tree() {
  TreeTable table = tcg::testing::cvp_example_tree();
  TreeDomain dom(table);
  SearchConfig cfg;
  cfg.test_mode = true;
  TreeSearch m(dom, cfg);
  build_cvp_example(m);
  const auto& right = *m.root().edges[1].child;
  if (right.lower != 1.0 || right.upper != 1.0) return fail("right child bounds are not (1,1)");
  if (right.v != 0.5) return fail("right child v = " + std::to_string(right.v));
  if (right.v_c != 1.0) return fail("right child v_c = " + std::to_string(right.v_c));
  SearchResult r = m.search(0);
  if (r.policy.size() != 2 || r.policy[0] != 0.25 || r.policy[1] != 0.75) {
    return fail("improved policy is not (0.25, 0.75)");
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "right child (1,1) v=0.5 v_c=1; policy (0.25, 0.75); root v=%.4g v_c=%.4g",
                m.root().v, m.root().v_c);
  return pass(buf);
}

// ---------------------------------------------------------------------------

Verdict certified_loss_avoidance() {
  // Adversary to move: the visit leader (right) is a certified prover win.
  TreeTable adv = tcg::testing::cvp_example_tree();
  // Prover to move: the visit leader is a certified adversary win.
  TreeTable pro = adv;
  pro.nodes[0].owner = Player::kProver;
  pro.nodes[2].owner = Player::kAdversary;
  pro.nodes[2].children[1].reward = -1.0;
  pro.nodes[3].children = {{-1, -1.0}, {-1, -1.0}};

  std::string detail;
  for (const TreeTable* table : {&adv, &pro}) {
    const char* who = table == &adv ? "adversary" : "prover";
    for (bool test_mode : {true, false}) {
      TreeDomain dom(*table);
      SearchConfig cfg;
      cfg.test_mode = true;  // no root noise while building
      TreeSearch m(dom, cfg);
      build_cvp_example(m);
      SearchResult r = m.search(0);
      if (r.visits[1] <= r.visits[0] || !r.certified_loss[1] || r.certified_loss[0]) {
        return fail(std::string(who) + ": setup is not a certified visit leader");
      }
      std::mt19937_64 rng(7);
      const int draws = test_mode ? 1 : 2000;
      for (int i = 0; i < draws; ++i) {
        if (choose_action(r, test_mode, 1.0, rng) != 0) {
          return fail(std::string(who) + (test_mode ? " test" : " training") +
                      " mode chose the certified loss");
        }
      }
    }
    detail += std::string(who) + " avoids it in test and training mode; ";
  }
  return pass(detail);
}

// ---------------------------------------------------------------------------

TrainExample tagged(ReplayPart part) {
  TrainExample ex;
  ex.part = part;
  ex.policy_target = {1.0};
  ex.value_target = part == ReplayPart::kAdversaryWon ? -1.0 : 1.0;
  return ex;
}

Verdict balancing_arithmetic() {
  for (bool with_aux : {false, true}) {
    ReplayBuffer buf(0, 99);
    for (int i = 0; i < 400; ++i) buf.add(tagged(ReplayPart::kProverWon));
    for (int i = 0; i < 100; ++i) buf.add(tagged(ReplayPart::kAdversaryWon));
    if (with_aux) {
      for (int i = 0; i < 37; ++i) buf.add(tagged(ReplayPart::kAuxiliary));
    }
    const std::size_t k = with_aux ? 3 : 2;
    const std::size_t batch = 32 * k;
    for (int rep = 0; rep < 100; ++rep) {
      auto b = buf.sample_batch(batch, true);
      std::map<ReplayPart, std::size_t> count;
      for (const auto& ex : b) {
        ++count[ex.part];
        const double want = ex.part == ReplayPart::kProverWon     ? 4.0 / 5.0
                            : ex.part == ReplayPart::kAdversaryWon ? 1.0 / 5.0
                                                                   : 0.0;
        if (ex.value_weight != want) {
          return fail(std::string("weight ") + std::to_string(ex.value_weight) + " for part " +
                      to_string(ex.part));
        }
      }
      if (b.size() != batch || count[ReplayPart::kProverWon] != 32 ||
          count[ReplayPart::kAdversaryWon] != 32 ||
          count[ReplayPart::kAuxiliary] != (with_aux ? 32u : 0u)) {
        return fail("batch is not split equally between parts");
      }
    }
  }
  return pass("4:1 parts give equal halves with weights 4/5 and 1/5; auxiliary weight 0");
}

// ---------------------------------------------------------------------------

Verdict baseline_targets() {
  auto logic = bundled_logic_ptr("fig2-mini");
  BaselineData d = generate_baseline(logic, 1000, config_for("fig2-mini"), 1234);
  if (d.playouts != 1000) return fail("playout count");
  if (d.constructed != static_cast<int>(d.move_counts.size()) || d.constructed == 0) {
    return fail("move count records do not match constructions");
  }
  std::size_t pos = 0;
  for (int n : d.move_counts) {
    for (int i = 0; i < n; ++i, ++pos) {
      if (pos >= d.examples.size()) return fail("fewer examples than recorded moves");
      const TrainExample& ex = d.examples[pos];
      const double want = std::pow(0.99, n - 1 - i);
      if (ex.value_target != want) {
        return fail("target " + std::to_string(ex.value_target) + " != 0.99^" +
                    std::to_string(n - 1 - i));
      }
      if (ex.value_weight != 1.0) return fail("value weight is not 1");
    }
    if (d.examples[pos - 1].value_target != 1.0) return fail("final state target is not 1");
  }
  if (pos != d.examples.size()) return fail("more examples than recorded moves");
  return pass(std::to_string(d.constructed) + " constructions, " +
              std::to_string(d.examples.size()) + " examples with 0.99^(n-1-i) targets");
}

// ---------------------------------------------------------------------------

Verdict untrained_prover() {
  SolveConfig cfg;  // node budget 10^4
  std::string detail;
  for (const std::string name : {"fig2-mini", "int-prop-sequent"}) {
    auto logic = bundled_logic_ptr(name);
    cfg.game = config_for(name);
    UniformEvaluator ev(logic->action_space());
    int total = 0, solved = 0;
    for (const auto& p : bundled_problems(name).problems) {
      if (p.id.rfind("easy_", 0) != 0) continue;
      ++total;
      // The tier is defined by proof length; confirm it independently.
      auto shortest = shortest_proof(start_from_conjecture(logic, p.conjecture, cfg.game), 6);
      if (!shortest.proof) return fail(name + "/" + p.id + " has no proof of <= 6 moves");
      SolveResult r = solve_problem(logic, p.conjecture, ev, cfg, p.id);
      if (r.solved) {
        if (!r.trace || !verify_trace(*r.trace, logic, cfg.game).ok) {
          return fail(name + "/" + p.id + " solved without a verifying trace");
        }
        ++solved;
      }
    }
    if (total == 0) return fail(name + " has no easy tier");
    detail += name + " " + std::to_string(solved) + "/" + std::to_string(total) + "; ";
    if (solved * 10 < total * 9) return fail(detail + "below 90%");
  }
  auto sok = bundled_logic_ptr("sokoban-6x6");
  cfg.game = config_for("sokoban-6x6");
  UniformEvaluator ev(sok->action_space());
  bool any = false;
  for (const auto& p : bundled_problems("sokoban-6x6").problems) {
    if (p.id.find("push1") == std::string::npos || p.id.find("walk") != std::string::npos) continue;
    SolveResult r = solve_problem(sok, p.conjecture, ev, cfg, p.id);
    if (r.solved) {
      detail += "sokoban " + p.id + " solved in " + std::to_string(r.moves) + " moves";
      any = true;
      break;
    }
  }
  if (!any) return fail(detail + "no 1-push sokoban instance solved");
  return pass(detail);
}

// ---------------------------------------------------------------------------

Verdict training_smoke() {
  auto logic = bundled_logic_ptr("fig2-mini");
  ProblemSet problems = bundled_problems("fig2-mini");
  if (problems.problems.size() != 20) return fail("bundled set does not have 20 problems");
  TrainingConfig tc;
  tc.game = config_for("fig2-mini");
  tc.games_per_episode = 200;
  tc.seed = 11;
  SolveConfig sc;
  sc.game = tc.game;

  FeatureEvaluator trained(logic->action_space());
  TrainingRun run = run_training(logic, problems, trained, tc, sc, 5);
  if (run.curve.size() != 5) return fail("expected 5 curve rows");
  for (std::size_t i = 1; i < run.curve.size(); ++i) {
    if (run.curve[i].cumulative_unique < run.curve[i - 1].cumulative_unique) {
      return fail("cumulative unique solved decreased");
    }
  }

  // Baseline with the same amount of data and training.
  FeatureEvaluator base(logic->action_space());
  BaselineData data = generate_baseline(logic, 5 * tc.games_per_episode, tc.game, 11);
  train_on_examples(base, data.examples, 5 * tc.train_steps, tc.batch_size, 12);
  EvalReport base_report = run_eval(logic, problems, base, sc);

  const int unique = run.curve.back().cumulative_unique;
  std::string curve;
  for (const auto& r : run.curve) curve += std::to_string(r.solved) + " ";
  std::string detail = "solved per episode " + curve + "cumulative " + std::to_string(unique) +
                       ", baseline " + std::to_string(base_report.solved()) +
                       (run.stagnated ? ", stagnation flagged" : "");
  if (unique >= base_report.solved() || run.stagnated) return pass(detail);
  return fail(detail + "; below baseline without stagnation");
}

// ---------------------------------------------------------------------------

std::vector<TrainExample> random_batch(std::mt19937_64& rng,
                                       std::shared_ptr<const LogicDef> logic,
                                       std::size_t size) {
  std::vector<TrainExample> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (out.size() < size) {
    GameState s = initial_state(logic);
    for (int step = 0; step < 12 && out.size() < size; ++step) {
      auto legal = legal_actions(s);
      if (legal.empty()) break;
      TrainExample ex;
      ex.graph = encode_graph(s);
      ex.policy_target.assign(logic->action_space(), 0.0);
      double total = 0.0;
      for (std::size_t a : legal) total += (ex.policy_target[a] = unit(rng) + 0.01);
      for (double& p : ex.policy_target) p /= total;
      ex.value_target = unit(rng) * 2.0 - 1.0;
      const double weights[] = {0.0, 0.2, 0.8, 1.0};
      ex.value_weight = weights[std::uniform_int_distribution<int>(0, 3)(rng)];
      out.push_back(std::move(ex));
      StepResult r = advance(s, legal[std::uniform_int_distribution<std::size_t>(
                                    0, legal.size() - 1)(rng)]);
      if (is_terminal(r)) break;
      s = std::get<GameState>(std::move(r));
    }
  }
  return out;
}

Verdict gradient_check() {
  auto logic = bundled_logic_ptr("int-prop-sequent");
  FeatureModelConfig fc;
  fc.dim = 1024;
  FeatureEvaluator model(logic->action_space(), fc);
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> normal(0.0, 0.3);
  for (double& p : model.params()) p = normal(rng);

  const double h = 1e-5;
  double worst = 0.0;
  std::size_t checked = 0;
  for (int b = 0; b < 20; ++b) {
    auto batch = random_batch(rng, logic, 8);
    std::vector<double> grad;
    model.loss_and_gradient(batch, grad);
    // Coordinates touched by the batch, plus every bias and a few others.
    std::set<std::size_t> coords;
    const std::size_t A = logic->action_space(), D = fc.dim;
    for (const auto& ex : batch) {
      SparseFeatures x = feature_extract(ex.graph, D);
      for (std::size_t k = 0; k < x.index.size(); k += 3) {
        std::size_t a = std::uniform_int_distribution<std::size_t>(0, A - 1)(rng);
        coords.insert(a * D + x.index[k]);
        coords.insert(A * (D + 1) + x.index[k]);
      }
    }
    for (std::size_t a = 0; a < A; ++a) coords.insert(A * D + a);
    coords.insert(A * (D + 1) + D);
    for (int i = 0; i < 10; ++i) {
      coords.insert(std::uniform_int_distribution<std::size_t>(0, model.params().size() - 1)(rng));
    }
    for (std::size_t c : coords) {
      double& p = model.params()[c];
      const double saved = p;
      p = saved + h;
      const double up = model.loss(batch).total();
      p = saved - h;
      const double down = model.loss(batch).total();
      p = saved;
      const double fd = (up - down) / (2.0 * h);
      const double rel =
          std::abs(fd - grad[c]) / std::max({std::abs(fd), std::abs(grad[c]), 1e-6});
      worst = std::max(worst, rel);
      ++checked;
      if (rel > 1e-4) {
        return fail("batch " + std::to_string(b) + " coordinate " + std::to_string(c) +
                    ": analytic " + std::to_string(grad[c]) + " vs numeric " +
                    std::to_string(fd));
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu coordinates over 20 batches, worst relative error %.2e",
                checked, worst);
  return pass(buf);
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* name;
  double limit_seconds;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"example_game_trace", 1, example_game_trace},
    {"construction_soundness", 300, construction_soundness},
    {"unification_oracle", 30, unification_oracle},
    {"cvp_correctness", 60, cvp_correctness},
    {"cvp_example_tree", 1, cvp_example_tree},
    {"certified_loss_avoidance", 1, certified_loss_avoidance},
    {"balancing_arithmetic", 10, balancing_arithmetic},
    {"baseline_targets", 60, baseline_targets},
    {"untrained_prover", 300, untrained_prover},
    {"training_smoke", 1800, training_smoke},
    {"gradient_check", 10, gradient_check},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> only(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.name)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && secs > c.limit_seconds) {
      v = fail("took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) +
               " s; " + v.detail);
    }
    std::printf("%s %s (%.2f s): %s\n", v.pass ? "PASS" : "FAIL", c.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
