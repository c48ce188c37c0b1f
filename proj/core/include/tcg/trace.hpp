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

// Playout traces: a line-oriented record of every move of one game, with
// the goals and theorem after each move. Text form:
//
//   trace v1 logic=<name>
//   conjecture <term>                       (prove-only games)
//   init | <goal> ; <goal> ... | <theorem>
//   <construct|prove> <rule-index> <rule-name> | <goals> | <theorem>
//   handover | <goals> | <theorem>
//   outcome <prover|adversary> <reason>
//
// A game whose mover has no legal rule ends with an outcome line and no
// further move.
// A move that loses the game keeps the goals it was played against; the
// move completing a proof has none. Variables are written as _<id>, so a
// trace can be checked by replaying the moves and comparing text.

#ifndef TCG_TRACE_HPP_
#define TCG_TRACE_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tcg/game.hpp"

namespace tcg {

struct TraceRow {
  enum class Kind { kInit, kMove, kHandover };
  Kind kind = Kind::kMove;
  Phase phase = Phase::kConstruct;  // kMove only; default otherwise
  std::size_t rule = 0;             // kMove only
  std::string rule_name;            // kMove only
  std::vector<std::string> goals;
  std::string theorem;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct PlayoutTrace {
  std::string logic;
  std::optional<std::string> conjecture;
  std::vector<TraceRow> rows;
  std::optional<Outcome> outcome;

  // Rule indices of the moves, in order.
  std::vector<std::size_t> moves() const;
  friend bool operator==(const PlayoutTrace&, const PlayoutTrace&) = default;
};

// Plays a game while recording it. step() behaves like advance() on the
// current state.
class TraceRecorder {
 public:
  explicit TraceRecorder(const GameState& start);
  StepResult step(std::size_t rule);
  // Ends the game as a loss for the mover if no rule is legal in the
  // current state. Returns whether it did.
  bool end_if_stuck();
  // Precondition: the game has not ended.
  const GameState& state() const { return state_; }
  bool finished() const { return trace_.outcome.has_value(); }
  const PlayoutTrace& trace() const { return trace_; }
  PlayoutTrace take() { return std::move(trace_); }

 private:
  GameState state_;
  PlayoutTrace trace_;
};

TraceRow snapshot_row(const GameState& state, TraceRow::Kind kind);

std::string format_trace(const PlayoutTrace& trace);
void write_trace(std::ostream& os, const PlayoutTrace& trace);
// Throws ParseError on malformed input.
PlayoutTrace parse_trace(std::string_view text);

struct TraceCheck {
  bool ok = true;
  std::string message;  // first mismatch when !ok
};

// Replays the trace's moves on `logic` and compares every row and the
// outcome with what the engine produces.
TraceCheck verify_trace(const PlayoutTrace& trace,
                        std::shared_ptr<const LogicDef> logic,
                        const GameConfig& config);

}  // namespace tcg

#endif  // TCG_TRACE_HPP_
