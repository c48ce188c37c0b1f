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

// Synthetic game trees for testing the search. A tree is an explicit table
// of nodes; each action leads to another node or to a terminal reward. The
// minimax and reference evaluators below recompute everything from the
// definitions and share no code with Mcts.

#ifndef TCG_TESTS_SUPPORT_TREE_DOMAIN_HPP_
#define TCG_TESTS_SUPPORT_TREE_DOMAIN_HPP_

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tcg/search.hpp"

namespace tcg::testing {

struct TreeTable {
  struct Child {
    int node = -1;        // index of an internal node, or -1 for a terminal
    double reward = 0.0;  // prover-centric, used when node < 0
  };
  struct Node {
    Player owner = Player::kProver;
    double value = 0.0;
    std::vector<double> priors;  // one per child
    std::vector<Child> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  std::size_t action_space() const {
    std::size_t n = 0;
    for (const auto& node : nodes) n = std::max(n, node.children.size());
    return n;
  }
  // Internal nodes plus terminal leaves.
  std::size_t total_nodes() const {
    std::size_t n = nodes.size();
    for (const auto& node : nodes) {
      for (const auto& c : node.children) n += c.node < 0 ? 1 : 0;
    }
    return n;
  }
};

class TreeDomain {
 public:
  using State = int;

  explicit TreeDomain(const TreeTable& table) : table_(table) {}

  Expansion expand(const int& s) {
    ++expansions;
    const TreeTable::Node& n = table_.nodes.at(static_cast<std::size_t>(s));
    Expansion e;
    e.owner = n.owner;
    e.value = n.value;
    for (std::size_t a = 0; a < n.children.size(); ++a) e.actions.push_back(a);
    e.priors = n.priors;
    return e;
  }

  std::variant<int, double> next(const int& s, std::size_t a) {
    const TreeTable::Child& c = table_.nodes.at(static_cast<std::size_t>(s)).children.at(a);
    if (c.node < 0) return c.reward;
    return c.node;
  }

  std::size_t action_space() const { return table_.action_space(); }

  std::size_t expansions = 0;

 private:
  const TreeTable& table_;
};

using TreeSearch = Mcts<TreeDomain>;

// Random tree with at most `max_nodes` nodes counting terminal leaves.
// Internal nodes have 1 to 4 actions; terminal rewards are +1 or -1.
inline TreeTable random_tree(std::mt19937_64& rng, std::size_t max_nodes,
                            double internal_prob = 0.5) {
  TreeTable t;
  std::uniform_real_distribution<double> value(-0.95, 0.95);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> arity(1, 4);
  auto new_node = [&] {
    TreeTable::Node n;
    n.owner = unit(rng) < 0.5 ? Player::kProver : Player::kAdversary;
    n.value = value(rng);
    t.nodes.push_back(n);
    return static_cast<int>(t.nodes.size() - 1);
  };
  new_node();
  // Every internal node still waiting for children may need up to 4 slots.
  std::size_t used = 1;
  std::vector<int> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int id = queue[qi];
    const int k = arity(rng);
    std::size_t pending = queue.size() - qi - 1;
    for (int a = 0; a < k; ++a) {
      TreeTable::Child c;
      const std::size_t reserve = used + 1 + 4 * (pending + 1) + (k - a - 1);
      if (reserve <= max_nodes && unit(rng) < internal_prob) {
        c.node = new_node();
        queue.push_back(c.node);
        ++pending;
      } else {
        c.reward = unit(rng) < 0.5 ? 1.0 : -1.0;
      }
      ++used;
      t.nodes[static_cast<std::size_t>(id)].children.push_back(c);
    }
    std::vector<double> p(static_cast<std::size_t>(k));
    double total = 0.0;
    for (double& x : p) total += (x = 0.05 + unit(rng));
    for (double& x : p) x /= total;
    t.nodes[static_cast<std::size_t>(id)].priors = std::move(p);
  }
  return t;
}

// Game value of node `id` with both players playing perfectly.
inline double minimax(const TreeTable& t, int id) {
  const TreeTable::Node& n = t.nodes.at(static_cast<std::size_t>(id));
  const bool prover = n.owner == Player::kProver;
  double best = prover ? -2.0 : 2.0;
  for (const auto& c : n.children) {
    double v = c.node < 0 ? c.reward : minimax(t, c.node);
    best = prover ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

struct RefStats {
  std::size_t size = 1;
  double v = 0.0;
  double v_c = 0.0;
  double lower = -1.0;
  double upper = 1.0;
};

// Evaluates the statistics of a search node from scratch, reading only which
// children exist and the values in the tree table. With cvp on:
//   N(n)   = 1 + sum of N(c)
//   v(n)   = (v_theta(n) + sum of v_c(c) * N(c)) / N(n)
//   bounds = terminal: (r, r); otherwise the owner's best child bound, with
//            the opponent-side bound left open until every action is tried
//   v_c(n) = max(lower, min(upper, v))
// With cvp off, children contribute v and v_c = v.
inline RefStats reference_stats(const TreeTable& table, const TreeSearch::Node& n,
                                bool cvp) {
  RefStats out;
  if (n.terminal) {
    out.v = out.v_c = out.lower = out.upper = n.reward;
    return out;
  }
  const TreeTable::Node& sn = table.nodes.at(static_cast<std::size_t>(*n.state));
  const bool prover = sn.owner == Player::kProver;
  double sum = sn.value;
  std::size_t tried = 0;
  std::vector<double> lows, highs;
  for (const auto& e : n.edges) {
    if (!e.child) continue;
    ++tried;
    RefStats c = reference_stats(table, *e.child, cvp);
    out.size += c.size;
    sum += (cvp ? c.v_c : c.v) * static_cast<double>(c.size);
    lows.push_back(c.lower);
    highs.push_back(c.upper);
  }
  out.v = sum / static_cast<double>(out.size);
  const bool all_tried = tried == sn.children.size();
  if (!lows.empty()) {
    if (prover) {
      out.lower = *std::max_element(lows.begin(), lows.end());
      out.upper = all_tried ? *std::max_element(highs.begin(), highs.end()) : 1.0;
    } else {
      out.upper = *std::min_element(highs.begin(), highs.end());
      out.lower = all_tried ? *std::min_element(lows.begin(), lows.end()) : -1.0;
    }
  }
  out.v_c = cvp ? std::max(out.lower, std::min(out.upper, out.v)) : out.v;
  return out;
}

// Compares every node of a search tree with reference_stats. Returns an
// empty string on agreement, otherwise a description of the first mismatch.
inline std::string check_against_reference(const TreeTable& table,
                                           const TreeSearch::Node& n, bool cvp,
                                           const std::string& path = "root") {
  RefStats r = reference_stats(table, n, cvp);
  auto bad = [&](const char* what, double got, double want) {
    return path + ": " + what + " " + std::to_string(got) + " != " +
           std::to_string(want);
  };
  if (n.size != r.size) return bad("N", static_cast<double>(n.size), static_cast<double>(r.size));
  if (n.v != r.v) return bad("v", n.v, r.v);
  if (n.v_c != r.v_c) return bad("v_c", n.v_c, r.v_c);
  if (n.lower != r.lower) return bad("lower", n.lower, r.lower);
  if (n.upper != r.upper) return bad("upper", n.upper, r.upper);
  if (n.lower > n.upper) return path + ": lower above upper";
  for (const auto& e : n.edges) {
    if (!e.child) continue;
    std::string sub = check_against_reference(table, *e.child, cvp,
                                              path + "/" + std::to_string(e.action));
    if (!sub.empty()) return sub;
  }
  return "";
}

// Checks lower = upper = minimax value at every node of a fully expanded tree.
inline std::string check_minimax(const TreeTable& table, const TreeSearch::Node& n,
                                 const std::string& path = "root") {
  const double want = n.terminal ? n.reward : minimax(table, *n.state);
  if (n.lower != want || n.upper != want) {
    return path + ": bounds (" + std::to_string(n.lower) + ", " +
           std::to_string(n.upper) + ") but minimax " + std::to_string(want);
  }
  if (n.v_c != std::max(n.lower, std::min(n.upper, n.v))) {
    return path + ": v_c is not the clamped v";
  }
  for (const auto& e : n.edges) {
    if (!e.child) return path + ": action " + std::to_string(e.action) + " unexpanded";
    std::string sub = check_minimax(table, *e.child, path + "/" + std::to_string(e.action));
    if (!sub.empty()) return sub;
  }
  return "";
}

// The standard small CVP example: an adversary root (v_theta 0.1)
// with a left child (v_theta -0.6) and a right prover child (v_theta 0.3)
// whose children are an ordinary node (v_theta 0.2) and a prover win.
// Nodes below the drawn ones exist so that nothing drawn is a leaf of the
// game itself.
inline TreeTable cvp_example_tree() {
  TreeTable t;
  auto node = [&](Player owner, double value, std::vector<TreeTable::Child> children) {
    TreeTable::Node n;
    n.owner = owner;
    n.value = value;
    n.children = std::move(children);
    n.priors.assign(n.children.size(), 1.0 / static_cast<double>(n.children.size()));
    t.nodes.push_back(std::move(n));
  };
  const TreeTable::Child lose{-1, -1.0}, win{-1, 1.0};
  node(Player::kAdversary, 0.1, {{1, 0}, {2, 0}});  // 0 root
  node(Player::kProver, -0.6, {lose, win});         // 1 left
  node(Player::kProver, 0.3, {{3, 0}, win});        // 2 right
  node(Player::kAdversary, 0.2, {lose, win});       // 3 right-left
  return t;
}

}  // namespace tcg::testing

#endif  // TCG_TESTS_SUPPORT_TREE_DOMAIN_HPP_
