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

#include "tcg/trace.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tcg {

namespace {

constexpr std::string_view kHeader = "trace v1 logic=";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

std::string join_goals(const std::vector<std::string>& goals) {
  std::string out;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i) out += " ; ";
    out += goals[i];
  }
  return out;
}

std::optional<Player> player_from(std::string_view s) {
  if (s == "prover") return Player::kProver;
  if (s == "adversary") return Player::kAdversary;
  return std::nullopt;
}

std::optional<OutcomeReason> reason_from(std::string_view s) {
  for (auto r : {OutcomeReason::kProofComplete, OutcomeReason::kUnificationFailed,
                 OutcomeReason::kMoveLimit, OutcomeReason::kConstructionFailed}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

std::string describe(const TraceRow& r) {
  std::ostringstream os;
  os << join_goals(r.goals) << " | " << r.theorem;
  return os.str();
}

}  // namespace

std::vector<std::size_t> PlayoutTrace::moves() const {
  std::vector<std::size_t> out;
  for (const auto& r : rows) {
    if (r.kind == TraceRow::Kind::kMove) out.push_back(r.rule);
  }
  return out;
}

TraceRow snapshot_row(const GameState& state, TraceRow::Kind kind) {
  TraceRow row;
  row.kind = kind;
  for (const Term& g : state.goals) row.goals.push_back(format_term(g));
  row.theorem = format_term(state.theorem);
  return row;
}

TraceRecorder::TraceRecorder(const GameState& start) : state_(start) {
  trace_.logic = start.logic->name;
  if (start.phase == Phase::kProve) {
    trace_.conjecture = format_term(start.theorem);
  }
  trace_.rows.push_back(snapshot_row(start, TraceRow::Kind::kInit));
}

StepResult TraceRecorder::step(std::size_t rule) {
  if (finished()) throw std::logic_error("step on a finished trace");
  const Phase phase = state_.phase;
  StepResult r = apply_action(state_, rule);
  if (const auto* o = std::get_if<Outcome>(&r)) {
    // A completed proof leaves no goals; a losing move leaves the state as
    // it was.
    TraceRow row = snapshot_row(state_, TraceRow::Kind::kMove);
    if (o->reason == OutcomeReason::kProofComplete) row.goals.clear();
    row.phase = phase;
    row.rule = rule;
    row.rule_name = state_.logic->rules[rule].name;
    trace_.rows.push_back(std::move(row));
    trace_.outcome = *o;
    return r;
  }
  GameState& next = std::get<GameState>(r);
  TraceRow row = snapshot_row(next, TraceRow::Kind::kMove);
  row.phase = phase;
  row.rule = rule;
  row.rule_name = state_.logic->rules[rule].name;
  trace_.rows.push_back(std::move(row));
  if (next.needs_handover()) {
    next = handover(next);
    trace_.rows.push_back(snapshot_row(next, TraceRow::Kind::kHandover));
  }
  state_ = next;
  return r;
}

bool TraceRecorder::end_if_stuck() {
  if (finished() || !legal_actions(state_).empty()) return false;
  trace_.outcome = Outcome{opponent(state_.mover()), OutcomeReason::kUnificationFailed};
  return true;
}

std::string format_trace(const PlayoutTrace& trace) {
  std::ostringstream os;
  write_trace(os, trace);
  return os.str();
}

void write_trace(std::ostream& os, const PlayoutTrace& trace) {
  os << kHeader << trace.logic << '\n';
  if (trace.conjecture) os << "conjecture " << *trace.conjecture << '\n';
  for (const TraceRow& r : trace.rows) {
    switch (r.kind) {
      case TraceRow::Kind::kInit: os << "init"; break;
      case TraceRow::Kind::kHandover: os << "handover"; break;
      case TraceRow::Kind::kMove:
        os << to_string(r.phase) << ' ' << r.rule << ' ' << r.rule_name;
        break;
    }
    os << " | " << join_goals(r.goals) << " | " << r.theorem << '\n';
  }
  if (trace.outcome) {
    os << "outcome " << to_string(trace.outcome->winner) << ' '
       << to_string(trace.outcome->reason) << '\n';
  }
}

PlayoutTrace parse_trace(std::string_view text) {
  PlayoutTrace trace;
  int line_no = 0;
  bool have_header = false;
  for (std::string_view line : split(text, "\n")) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw ParseError(what, line_no, 1);
    };
    if (!have_header) {
      if (line.substr(0, kHeader.size()) != kHeader) fail("expected trace header");
      trace.logic = std::string(trim(line.substr(kHeader.size())));
      have_header = true;
      continue;
    }
    if (trace.outcome) fail("content after outcome line");
    if (line.substr(0, 11) == "conjecture ") {
      trace.conjecture = std::string(trim(line.substr(11)));
      continue;
    }
    if (line.substr(0, 8) == "outcome ") {
      auto parts = split(trim(line.substr(8)), " ");
      if (parts.size() != 2) fail("outcome needs a winner and a reason");
      auto w = player_from(parts[0]);
      auto why = reason_from(parts[1]);
      if (!w || !why) fail("bad outcome line");
      trace.outcome = Outcome{*w, *why};
      continue;
    }
    auto fields = split(line, " | ");
    if (fields.size() != 3) fail("expected '<tag> | <goals> | <theorem>'");
    TraceRow row;
    auto tag = split(trim(fields[0]), " ");
    if (tag.size() == 1 && tag[0] == "init") {
      row.kind = TraceRow::Kind::kInit;
    } else if (tag.size() == 1 && tag[0] == "handover") {
      row.kind = TraceRow::Kind::kHandover;
    } else if (tag.size() == 3 && (tag[0] == "construct" || tag[0] == "prove")) {
      row.kind = TraceRow::Kind::kMove;
      row.phase = tag[0] == "construct" ? Phase::kConstruct : Phase::kProve;
      try {
        row.rule = std::stoul(std::string(tag[1]));
      } catch (const std::exception&) {
        fail("bad rule index");
      }
      row.rule_name = std::string(tag[2]);
    } else {
      fail("unknown row tag");
    }
    std::string_view goals = trim(fields[1]);
    if (!goals.empty()) {
      for (auto g : split(goals, " ; ")) row.goals.emplace_back(trim(g));
    }
    row.theorem = std::string(trim(fields[2]));
    if (trace.rows.empty() && row.kind != TraceRow::Kind::kInit) {
      fail("first row must be init");
    }
    trace.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("empty trace", line_no, 1);
  if (trace.rows.empty()) throw ParseError("trace has no init row", line_no, 1);
  return trace;
}

TraceCheck verify_trace(const PlayoutTrace& trace,
                        std::shared_ptr<const LogicDef> logic,
                        const GameConfig& config) {
  auto mismatch = [](std::string msg) { return TraceCheck{false, std::move(msg)}; };
  if (trace.logic != logic->name) {
    return mismatch("trace is for logic '" + trace.logic + "', not '" +
                    logic->name + "'");
  }
  GameState start;
  try {
    start = trace.conjecture
                ? start_from_conjecture(logic, parse_term(*trace.conjecture), config)
                : initial_state(logic, config);
  } catch (const std::exception& e) {
    return mismatch(std::string("cannot start game: ") + e.what());
  }
  TraceRecorder rec(start);
  for (std::size_t move : trace.moves()) {
    if (rec.finished()) return mismatch("moves after the game ended");
    if (move >= logic->action_space()) {
      return mismatch("rule index " + std::to_string(move) + " out of range");
    }
    rec.step(move);
  }
  if (trace.outcome) rec.end_if_stuck();
  const PlayoutTrace& got = rec.trace();
  if (got.rows.size() != trace.rows.size()) {
    return mismatch("replay has " + std::to_string(got.rows.size()) +
                    " rows, trace has " + std::to_string(trace.rows.size()));
  }
  for (std::size_t i = 0; i < got.rows.size(); ++i) {
    if (!(got.rows[i] == trace.rows[i])) {
      return mismatch("row " + std::to_string(i) + ": expected '" +
                      describe(got.rows[i]) + "', trace has '" +
                      describe(trace.rows[i]) + "'");
    }
  }
  if (got.outcome != trace.outcome) {
    return mismatch("outcome differs from replay");
  }
  return {};
}

}  // namespace tcg
