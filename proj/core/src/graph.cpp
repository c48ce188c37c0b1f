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

#include "tcg/graph.hpp"

#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "graph_json.hpp"

namespace tcg {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::kSymbol: return "symbol";
    case NodeKind::kVariable: return "variable";
    case NodeKind::kRoot: return "root";
  }
  return "?";
}

namespace {

class Encoder {
 public:
  explicit Encoder(StateGraph& g) : g_(g) {}

  std::uint32_t add(const Term& t) {
    if (t.is_variable()) {
      auto [it, inserted] = vars_.try_emplace(t.var(), 0);
      if (inserted) it->second = push("_", NodeKind::kVariable);
      return it->second;
    }
    std::uint32_t id = push(std::string(t.atom().name()), NodeKind::kSymbol);
    for (std::size_t i = 0; i < t.arity(); ++i) {
      std::uint32_t c = add(t.arg(i));
      g_.edges.push_back({id, c, static_cast<std::int32_t>(i)});
    }
    return id;
  }

  std::uint32_t push(std::string label, NodeKind kind) {
    g_.nodes.push_back({std::move(label), kind});
    return static_cast<std::uint32_t>(g_.nodes.size() - 1);
  }

 private:
  StateGraph& g_;
  std::unordered_map<VarId, std::uint32_t> vars_;
};

}  // namespace

StateGraph encode_graph(const GameState& state) {
  StateGraph g;
  g.mover = state.mover();
  g.action_space = state.logic ? state.logic->action_space() : 0;
  Encoder enc(g);
  enc.push(to_string(g.mover), NodeKind::kRoot);
  for (std::size_t i = 0; i < state.goals.size(); ++i) {
    std::uint32_t r = enc.add(state.goals[i]);
    g.goal_roots.push_back(r);
    g.edges.push_back({0, r, static_cast<std::int32_t>(i)});
  }
  if (state.phase == Phase::kConstruct) {
    std::uint32_t r = enc.add(state.theorem);
    g.theorem_root = r;
    g.edges.push_back({0, r, kTheoremArgpos});
  }
  return g;
}

nlohmann::json graph_to_json_value(const StateGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    nodes.push_back({{"id", i},
                     {"label", g.nodes[i].label},
                     {"kind", to_string(g.nodes[i].kind)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.parent, e.child, e.argpos});
  nlohmann::json j = {{"nodes", std::move(nodes)},
                      {"edges", std::move(edges)},
                      {"goal_roots", g.goal_roots},
                      {"mover", to_string(g.mover)}};
  j["theorem_root"] = g.theorem_root ? nlohmann::json(*g.theorem_root)
                                     : nlohmann::json(nullptr);
  return j;
}

StateGraph graph_from_json_value(const nlohmann::json& j) {
  StateGraph g;
  try {
    const auto& nodes = j.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (n.at("id").get<std::size_t>() != i) {
        throw std::invalid_argument("graph node ids must be 0..n-1 in order");
      }
      std::string kind = n.at("kind").get<std::string>();
      NodeKind k;
      if (kind == "symbol") k = NodeKind::kSymbol;
      else if (kind == "variable") k = NodeKind::kVariable;
      else if (kind == "root") k = NodeKind::kRoot;
      else throw std::invalid_argument("unknown node kind '" + kind + "'");
      g.nodes.push_back({n.at("label").get<std::string>(), k});
    }
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw std::invalid_argument("graph edge must be [parent, child, argpos]");
      }
      GraphEdge edge{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(),
                     e[2].get<std::int32_t>()};
      if (edge.parent >= g.nodes.size() || edge.child >= g.nodes.size()) {
        throw std::invalid_argument("graph edge refers to a missing node");
      }
      g.edges.push_back(edge);
    }
    g.goal_roots = j.at("goal_roots").get<std::vector<std::uint32_t>>();
    if (j.contains("theorem_root") && !j["theorem_root"].is_null()) {
      g.theorem_root = j["theorem_root"].get<std::uint32_t>();
    }
    std::string mover = j.at("mover").get<std::string>();
    if (mover == "prover") g.mover = Player::kProver;
    else if (mover == "adversary") g.mover = Player::kAdversary;
    else throw std::invalid_argument("unknown mover '" + mover + "'");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph: ") + e.what());
  }
  return g;
}

std::string graph_to_json(const StateGraph& g) {
  return graph_to_json_value(g).dump();
}

StateGraph graph_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("graph is not valid JSON");
  return graph_from_json_value(j);
}

}  // namespace tcg
