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

// PUCT Monte-Carlo tree search with certain value propagation.
//
// Every node stores, in prover-centric terms (+1 = prover wins):
//
//   v_theta  the evaluator's estimate when the node was created
//   N        the number of nodes in its subtree, itself included
//   v        (v_theta + sum over children c of v_c(c) * N(c)) / N
//   lower, upper
//            bounds on the game value proven by terminal nodes below. A
//            prover node takes the max of its children's lower bounds, and
//            the max of their upper bounds once every action is expanded
//            (otherwise 1). Adversary nodes mirror this with min. Terminal
//            nodes have lower = upper = reward; fresh nodes (-1, 1).
//   v_c      v clamped into [lower, upper]
//
// Selection maximizes Q(c) + c_puct * prior(c) * sqrt(N) / (1 + N(c)), where
// Q is v_c(c) seen from the mover (0 for unexpanded actions). Children that
// are certified losses for the mover (upper = -1 under the prover, lower = 1
// under the adversary) are skipped unless every candidate is one. Subtrees
// with nothing left to expand are never entered. Ties go to the lowest
// action index.
//
// Mcts is generic over a search domain so the value arithmetic can be tested
// on synthetic trees; TheoremGameDomain (theorem_game.hpp) plugs in the game.

#ifndef TCG_SEARCH_HPP_
#define TCG_SEARCH_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tcg/game.hpp"

namespace tcg {

struct SearchConfig {
  double c_puct = 1.5;
  double dirichlet_alpha = 0.3;
  double noise_fraction = 0.25;
  // Test mode: no root noise, and search stops once the root is certain.
  bool test_mode = false;
  // Off: plain averaging of children's v, no bounds in values or selection.
  bool cvp = true;
};

// What the domain reports for a newly created non-terminal node.
struct Expansion {
  Player owner = Player::kProver;
  std::vector<std::size_t> actions;  // legal actions, increasing
  std::vector<double> priors;        // parallel to actions, sums to 1
  double value = 0.0;                // prover-centric, in (-1, 1)
  // Set when the state has no legal action; the node becomes terminal with
  // this prover-centric reward.
  std::optional<double> dead_end_reward;
};

template <class D>
concept SearchDomain = requires(D& d, const typename D::State& s, std::size_t a) {
  typename D::State;
  { d.expand(s) } -> std::same_as<Expansion>;
  // A successor state, or the prover-centric reward of a terminal outcome.
  { d.next(s, a) } -> std::same_as<std::variant<typename D::State, double>>;
  { d.action_space() } -> std::convertible_to<std::size_t>;
};

struct SearchResult {
  Player owner = Player::kProver;
  // Over the whole action space; proportional to child subtree sizes, or the
  // legal-action prior when no child was expanded.
  std::vector<double> policy;
  std::vector<std::size_t> actions;  // legal actions at the root
  std::vector<double> priors;        // parallel to actions
  std::vector<std::size_t> visits;   // parallel to actions
  std::vector<bool> certified_loss;  // parallel to actions
  double value = 0.0;                // v_c of the root
  double raw_value = 0.0;            // v of the root
  double lower = -1.0;
  double upper = 1.0;
  std::size_t nodes_added = 0;
  std::size_t tree_size = 0;
};

// One line: nodes, root v/v_c/bounds, and the nonzero policy entries.
std::string format_search_summary(const SearchResult& r);

// Test mode: the highest-policy action (ties: higher prior, then lower
// index). Training mode: a sample from policy^(1/temperature), or from the
// priors if the policy has no mass. Certified losses for the mover are
// excluded unless all actions are. Throws std::invalid_argument if the
// result has no actions.
std::size_t choose_action(const SearchResult& r, bool test_mode,
                          double temperature, std::mt19937_64& rng);

template <SearchDomain D>
class Mcts {
 public:
  using State = typename D::State;

  struct Node;
  struct Edge {
    std::size_t action = 0;
    double base_prior = 0.0;  // as produced by the domain
    double prior = 0.0;       // after root noise
    std::unique_ptr<Node> child;
  };
  struct Node {
    std::optional<State> state;  // empty for terminal nodes
    bool terminal = false;
    double reward = 0.0;
    Player owner = Player::kProver;
    double v_theta = 0.0;
    double v = 0.0;
    double v_c = 0.0;
    double lower = -1.0;
    double upper = 1.0;
    std::size_t size = 1;
    std::size_t expanded = 0;  // edges with a child
    bool open = true;          // something below is still unexpanded
    std::vector<Edge> edges;

    bool certain() const { return lower == upper; }
  };

  Mcts(D& domain, SearchConfig config, std::uint64_t seed = 0)
      : domain_(domain), config_(config), rng_(seed) {}

  const SearchConfig& config() const { return config_; }
  SearchConfig& mutable_config() { return config_; }

  bool has_root() const { return root_ != nullptr; }
  const Node& root() const { return *root_; }

  // Discards the current tree.
  void set_root(const State& state) {
    root_.reset();
    pending_root_ = state;
  }

  // Makes the child reached by `action` the new root, keeping its subtree.
  // Returns false (and clears the tree) when the child was never expanded or
  // is terminal; the caller then supplies the state with set_root.
  bool reuse_subtree(std::size_t action) {
    if (!root_) return false;
    for (Edge& e : root_->edges) {
      if (e.action == action && e.child && !e.child->terminal) {
        std::unique_ptr<Node> child = std::move(e.child);
        root_ = std::move(child);
        restore_priors(*root_);
        return true;
      }
    }
    root_.reset();
    return false;
  }

  // Adds up to `budget` nodes. Creating the root counts as one. Stops early
  // when nothing is left to expand, and in test mode once the root value is
  // certain.
  SearchResult search(std::size_t budget) {
    std::size_t added = 0;
    if (!root_) {
      if (!pending_root_) throw std::logic_error("search without a root");
      if (budget == 0) throw std::invalid_argument("node budget must be >= 1");
      root_ = make_node(std::variant<State, double>(std::move(*pending_root_)));
      pending_root_.reset();
      ++added;
    }
    if (!config_.test_mode && config_.noise_fraction > 0.0) add_root_noise();
    while (added < budget && root_->open) {
      if (config_.test_mode && config_.cvp && root_->certain()) break;
      step_once();
      ++added;
    }
    return summarize(added);
  }

  // Descends through `path`; every action but the last must lead to an
  // expanded non-terminal child, the last must be unexpanded. Expands it and
  // backpropagates. Used to build specific trees in tests.
  void expand_along(std::span<const std::size_t> path) {
    if (!root_) {
      root_ = make_node(std::variant<State, double>(std::move(*pending_root_)));
      pending_root_.reset();
    }
    if (path.empty()) throw std::invalid_argument("empty path");
    std::vector<Node*> nodes{root_.get()};
    for (std::size_t i = 0; i < path.size(); ++i) {
      Node* n = nodes.back();
      Edge* e = find_edge(*n, path[i]);
      if (e == nullptr) throw std::invalid_argument("action not legal on path");
      bool last = i + 1 == path.size();
      if (last != (e->child == nullptr)) {
        throw std::invalid_argument("path must end at an unexpanded action");
      }
      if (last) {
        expand_edge(*n, *e);
      } else {
        if (e->child->terminal) throw std::invalid_argument("path crosses a terminal");
        nodes.push_back(e->child.get());
      }
    }
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) recompute(**it);
  }

  // Dirichlet noise over the root's legal actions, blended into the base
  // priors. No effect in test mode.
  void add_root_noise() {
    if (config_.test_mode || !root_ || root_->edges.empty()) return;
    const double eps = config_.noise_fraction;
    std::gamma_distribution<double> gamma(config_.dirichlet_alpha, 1.0);
    std::vector<double> noise(root_->edges.size());
    double total = 0.0;
    for (double& x : noise) total += (x = gamma(rng_));
    for (std::size_t i = 0; i < noise.size(); ++i) {
      double d = total > 0.0 ? noise[i] / total : 1.0 / noise.size();
      Edge& e = root_->edges[i];
      e.prior = (1.0 - eps) * e.base_prior + eps * d;
    }
  }

  // The moves of a shortest prover-only path to a winning terminal through
  // children with lower = 1, if the root is certified won.
  std::optional<std::vector<std::size_t>> follow_final_path() const {
    if (!root_ || root_->lower < 1.0) return std::nullopt;
    std::vector<std::size_t> path;
    const Node* n = root_.get();
    while (!n->terminal) {
      if (n->owner != Player::kProver) return std::nullopt;
      const Edge* best = nullptr;
      std::size_t best_depth = kUnreachable;
      for (const Edge& e : n->edges) {
        if (!e.child || e.child->lower < 1.0) continue;
        std::size_t d = win_depth(*e.child);
        if (d < best_depth) {
          best_depth = d;
          best = &e;
        }
      }
      if (best == nullptr) return std::nullopt;
      path.push_back(best->action);
      n = best->child.get();
    }
    return path;
  }

 private:
  static constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

  static double sign(Player p) { return p == Player::kProver ? 1.0 : -1.0; }

  static std::size_t win_depth(const Node& n) {
    if (n.terminal) return n.reward >= 1.0 ? 0 : kUnreachable;
    if (n.owner != Player::kProver) return kUnreachable;
    std::size_t best = kUnreachable;
    for (const Edge& e : n.edges) {
      if (!e.child || e.child->lower < 1.0) continue;
      std::size_t d = win_depth(*e.child);
      if (d != kUnreachable) best = std::min(best, d + 1);
    }
    return best;
  }

  static Edge* find_edge(Node& n, std::size_t action) {
    for (Edge& e : n.edges) {
      if (e.action == action) return &e;
    }
    return nullptr;
  }

  static void restore_priors(Node& n) {
    for (Edge& e : n.edges) e.prior = e.base_prior;
  }

  std::unique_ptr<Node> make_node(std::variant<State, double> what) {
    auto node = std::make_unique<Node>();
    if (double* r = std::get_if<double>(&what)) {
      make_terminal(*node, *r);
      return node;
    }
    State& state = std::get<State>(what);
    Expansion ex = domain_.expand(state);
    if (ex.dead_end_reward) {
      make_terminal(*node, *ex.dead_end_reward);
      return node;
    }
    node->owner = ex.owner;
    node->v_theta = ex.value;
    node->v = ex.value;
    node->edges.resize(ex.actions.size());
    for (std::size_t i = 0; i < ex.actions.size(); ++i) {
      node->edges[i].action = ex.actions[i];
      node->edges[i].base_prior = ex.priors[i];
      node->edges[i].prior = ex.priors[i];
    }
    node->state = std::move(state);
    recompute(*node);
    return node;
  }

  static void make_terminal(Node& n, double reward) {
    n.terminal = true;
    n.reward = reward;
    n.v_theta = n.v = n.v_c = reward;
    n.lower = n.upper = reward;
    n.open = false;
  }

  void expand_edge(Node& parent, Edge& e) {
    e.child = make_node(domain_.next(*parent.state, e.action));
    parent.expanded += 1;
  }

  // Recomputes a non-terminal node's statistics from its children.
  void recompute(Node& n) const {
    if (n.terminal) return;
    std::size_t size = 1;
    double sum = n.v_theta;
    bool open = n.expanded < n.edges.size();
    const bool prover = n.owner == Player::kProver;
    double lo = -1.0, hi = 1.0;
    double best_lo = -1.0, best_hi = 1.0;
    bool any = false;
    for (const Edge& e : n.edges) {
      if (!e.child) continue;
      const Node& c = *e.child;
      size += c.size;
      sum += (config_.cvp ? c.v_c : c.v) * static_cast<double>(c.size);
      open = open || c.open;
      if (!any) {
        best_lo = c.lower;
        best_hi = c.upper;
        any = true;
      } else if (prover) {
        best_lo = std::max(best_lo, c.lower);
        best_hi = std::max(best_hi, c.upper);
      } else {
        best_lo = std::min(best_lo, c.lower);
        best_hi = std::min(best_hi, c.upper);
      }
    }
    const bool complete = n.expanded == n.edges.size();
    if (any) {
      if (prover) {
        lo = best_lo;
        hi = complete ? best_hi : 1.0;
      } else {
        hi = best_hi;
        lo = complete ? best_lo : -1.0;
      }
    }
    n.size = size;
    n.v = sum / static_cast<double>(size);
    n.lower = lo;
    n.upper = hi;
    n.v_c = config_.cvp ? std::clamp(n.v, lo, hi) : n.v;
    n.open = open;
  }

  bool certified_loss(const Node& parent, const Node& child) const {
    if (!config_.cvp) return false;
    return parent.owner == Player::kProver ? child.upper <= -1.0
                                           : child.lower >= 1.0;
  }

  // Index into n.edges of the edge to descend or expand.
  std::size_t select(const Node& n) const {
    const double s = sign(n.owner);
    const double sqrt_n = std::sqrt(static_cast<double>(n.size));
    std::size_t best = n.edges.size(), best_safe = n.edges.size();
    double best_score = -std::numeric_limits<double>::infinity();
    double best_safe_score = best_score;
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
      const Edge& e = n.edges[i];
      double q = 0.0;
      double visits = 0.0;
      bool avoid = false;
      if (e.child) {
        if (!e.child->open) continue;
        q = s * (config_.cvp ? e.child->v_c : e.child->v);
        visits = static_cast<double>(e.child->size);
        avoid = certified_loss(n, *e.child);
      }
      double score = q + config_.c_puct * e.prior * sqrt_n / (1.0 + visits);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
      if (!avoid && score > best_safe_score) {
        best_safe_score = score;
        best_safe = i;
      }
    }
    return best_safe < n.edges.size() ? best_safe : best;
  }

  void step_once() {
    path_.clear();
    Node* n = root_.get();
    while (true) {
      path_.push_back(n);
      std::size_t i = select(*n);
      if (i >= n->edges.size()) break;  // unreachable while n->open
      Edge& e = n->edges[i];
      if (!e.child) {
        expand_edge(*n, e);
        break;
      }
      n = e.child.get();
    }
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) recompute(**it);
  }

  SearchResult summarize(std::size_t added) const {
    const Node& r = *root_;
    SearchResult out;
    out.owner = r.owner;
    out.policy.assign(domain_.action_space(), 0.0);
    out.value = r.v_c;
    out.raw_value = r.v;
    out.lower = r.lower;
    out.upper = r.upper;
    out.nodes_added = added;
    out.tree_size = r.size;
    std::size_t total = 0;
    for (const Edge& e : r.edges) {
      std::size_t visits = e.child ? e.child->size : 0;
      out.actions.push_back(e.action);
      out.priors.push_back(e.prior);
      out.visits.push_back(visits);
      out.certified_loss.push_back(e.child != nullptr &&
                                   certified_loss(r, *e.child));
      total += visits;
    }
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
      out.policy[r.edges[i].action] =
          total > 0 ? static_cast<double>(out.visits[i]) / static_cast<double>(total)
                    : r.edges[i].prior;
    }
    return out;
  }

  D& domain_;
  SearchConfig config_;
  std::mt19937_64 rng_;
  std::unique_ptr<Node> root_;
  std::optional<State> pending_root_;
  std::vector<Node*> path_;
};

}  // namespace tcg

#endif  // TCG_SEARCH_HPP_
