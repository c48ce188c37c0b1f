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

// Syntactic graph of a game state, the input to every evaluator.
//
// Node 0 is a root marker labelled with the mover ("prover" or
// "adversary"). Goal i hangs below it with arg position i; in the
// construction phase the theorem hangs below it with arg position -1.
// Compound terms are expanded as trees; each distinct variable is a single
// node labelled "_" shared by all of its occurrences.

#ifndef TCG_GRAPH_HPP_
#define TCG_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcg/game.hpp"

namespace tcg {

enum class NodeKind : std::uint8_t { kSymbol, kVariable, kRoot };
const char* to_string(NodeKind k);

struct GraphNode {
  std::string label;
  NodeKind kind = NodeKind::kSymbol;
  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::uint32_t parent = 0;
  std::uint32_t child = 0;
  std::int32_t argpos = 0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct StateGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;  // in creation order, parents before children
  std::vector<std::uint32_t> goal_roots;
  std::optional<std::uint32_t> theorem_root;
  Player mover = Player::kProver;
  std::size_t action_space = 0;
  friend bool operator==(const StateGraph&, const StateGraph&) = default;
};

constexpr std::int32_t kTheoremArgpos = -1;

StateGraph encode_graph(const GameState& state);

// Wire form used by the external evaluator protocol.
std::string graph_to_json(const StateGraph& g);
// Throws std::invalid_argument on malformed input. action_space is not
// part of the wire form and is left 0.
StateGraph graph_from_json(std::string_view text);

}  // namespace tcg

#endif  // TCG_GRAPH_HPP_
