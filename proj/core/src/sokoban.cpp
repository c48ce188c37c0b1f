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

#include "tcg/sokoban.hpp"

#include <array>
#include <stdexcept>

namespace tcg {

namespace {

constexpr int kSize = 6;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

std::string row_of(const std::vector<std::string>& cells) {
  return "row(" + join(cells) + ")";
}

std::string board_of(const std::vector<std::string>& rows) {
  return "board(" + join(rows) + ")";
}

// Variable names for the cells of a row: prefix + column (1-based).
std::vector<std::string> row_vars(const std::string& prefix) {
  std::vector<std::string> out;
  for (int j = 1; j <= kSize; ++j) out.push_back(prefix + std::to_string(j));
  return out;
}

class RuleText {
 public:
  void add(const std::string& name, const std::string& head,
           const std::vector<std::string>& body = {}) {
    text_ += "rule " + name + ": " + head;
    if (!body.empty()) text_ += " <- " + join(body);
    text_ += " .\n";
  }
  std::string take() { return std::move(text_); }
  std::string& text() { return text_; }

 private:
  std::string text_;
};

constexpr std::array<const char*, 3> kFinished = {"wall", "floor", "boxt"};

SokobanCell cell_from_atom(std::string_view name) {
  if (name == "floor") return SokobanCell::kFloor;
  if (name == "target") return SokobanCell::kTarget;
  if (name == "box") return SokobanCell::kBox;
  if (name == "boxt") return SokobanCell::kBoxOnTarget;
  if (name == "player") return SokobanCell::kPlayer;
  if (name == "playert") return SokobanCell::kPlayerOnTarget;
  return SokobanCell::kWall;
}

const char* atom_from_cell(SokobanCell c) {
  switch (c) {
    case SokobanCell::kWall: return "wall";
    case SokobanCell::kFloor: return "floor";
    case SokobanCell::kTarget: return "target";
    case SokobanCell::kBox: return "box";
    case SokobanCell::kBoxOnTarget: return "boxt";
    case SokobanCell::kPlayer: return "player";
    case SokobanCell::kPlayerOnTarget: return "playert";
  }
  return "wall";
}

}  // namespace

LogicDef generate_sokoban_logic(int width, int height) {
  if (width != kSize || height != kSize) {
    throw std::invalid_argument("sokoban logic is generated for 6x6 boards only");
  }
  RuleText rules;
  rules.text() = "logic sokoban-6x6 occurs_check=on\ngoal solvable(B) .\n";

  rules.add("finish", "solvable(B)", {"done(B)"});
  rules.add("right", "solvable(B)",
            {"pick_row(B, R, B2, R2)", "right_in(R, R2)", "solvable(B2)"});
  rules.add("left", "solvable(B)",
            {"pick_row(B, R, B2, R2)", "left_in(R, R2)", "solvable(B2)"});
  rules.add("down", "solvable(B)",
            {"rows3(B, X, Y, Z, B2, X2, Y2, Z2)", "col_move(X, Y, Z, X2, Y2, Z2)",
             "solvable(B2)"});
  rules.add("up", "solvable(B)",
            {"rows3(B, X, Y, Z, B2, X2, Y2, Z2)", "col_move(Z, Y, X, Z2, Y2, X2)",
             "solvable(B2)"});

  for (int i = 1; i <= kSize; ++i) {
    std::vector<std::string> before, after;
    for (int k = 1; k <= kSize; ++k) {
      std::string r = "R" + std::to_string(k);
      before.push_back(k == i ? "R" : r);
      after.push_back(k == i ? "S" : r);
    }
    rules.add("pick_row_" + std::to_string(i),
              "pick_row(" + board_of(before) + ", R, " + board_of(after) + ", S)");
  }

  for (int i = 1; i + 2 <= kSize; ++i) {
    std::vector<std::string> before, after;
    for (int k = 1; k <= kSize; ++k) {
      std::string r = "R" + std::to_string(k);
      int off = k - i;
      before.push_back(off >= 0 && off < 3 ? std::string(1, "XYZ"[off]) : r);
      after.push_back(off >= 0 && off < 3 ? std::string(1, "XYZ"[off]) + "2" : r);
    }
    rules.add("rows3_" + std::to_string(i),
              "rows3(" + board_of(before) + ", X, Y, Z, " + board_of(after) +
                  ", X2, Y2, Z2)");
  }

  for (int dir = 0; dir < 2; ++dir) {
    const std::string pred = dir == 0 ? "right_in" : "left_in";
    for (int j = 1; j + 2 <= kSize; ++j) {
      std::vector<std::string> a = row_vars("A");
      std::vector<std::string> b = a;
      for (int k = j; k < j + 3; ++k) b[k - 1] = "B" + std::to_string(k);
      std::string move;
      auto s = [](int k) { return std::to_string(k); };
      if (dir == 0) {
        move = "move3(A" + s(j) + ", A" + s(j + 1) + ", A" + s(j + 2) + ", B" +
               s(j) + ", B" + s(j + 1) + ", B" + s(j + 2) + ")";
      } else {
        move = "move3(A" + s(j + 2) + ", A" + s(j + 1) + ", A" + s(j) + ", B" +
               s(j + 2) + ", B" + s(j + 1) + ", B" + s(j) + ")";
      }
      rules.add(pred + "_" + s(j), pred + "(" + row_of(a) + ", " + row_of(b) + ")",
                {move});
    }
  }

  for (int j = 1; j <= kSize; ++j) {
    std::vector<std::string> rows[6];
    const char* prefixes[3] = {"A", "B", "C"};
    for (int r = 0; r < 3; ++r) {
      rows[r] = row_vars(prefixes[r]);
      rows[r + 3] = rows[r];
      rows[r + 3][j - 1] = std::string(prefixes[r]) + "N";
    }
    std::string s = std::to_string(j);
    std::vector<std::string> head_rows;
    for (auto& r : rows) head_rows.push_back(row_of(r));
    rules.add("col_move_" + s, "col_move(" + join(head_rows) + ")",
              {"move3(A" + s + ", B" + s + ", C" + s + ", AN, BN, CN)"});
  }

  // move3(From, Next, Beyond, From2, Next2, Beyond2)
  const char* walkers[2][2] = {{"player", "floor"}, {"playert", "target"}};
  const char* ground[2][2] = {{"floor", "player"}, {"target", "playert"}};
  int n = 0;
  for (auto& from : walkers) {
    for (auto& to : ground) {
      rules.add("walk_" + std::to_string(++n),
                std::string("move3(") + from[0] + ", " + to[0] + ", Z, " +
                    from[1] + ", " + to[1] + ", Z)");
    }
  }
  const char* boxes[2][2] = {{"box", "player"}, {"boxt", "playert"}};
  const char* beyond[2][2] = {{"floor", "box"}, {"target", "boxt"}};
  n = 0;
  for (auto& from : walkers) {
    for (auto& bx : boxes) {
      for (auto& dst : beyond) {
        rules.add("push_" + std::to_string(++n),
                  std::string("move3(") + from[0] + ", " + bx[0] + ", " +
                      dst[0] + ", " + from[1] + ", " + bx[1] + ", " + dst[1] +
                      ")");
      }
    }
  }

  for (int i = 1; i <= kSize; ++i) {
    std::vector<std::string> rows, body;
    for (int k = 1; k <= kSize; ++k) {
      std::string r = "R" + std::to_string(k);
      rows.push_back(r);
      body.push_back((k == i ? "prow(" : "frow(") + r + ")");
    }
    rules.add("done_" + std::to_string(i), "done(" + board_of(rows) + ")", body);
  }

  for (int j = 1; j <= kSize; ++j) {
    std::vector<std::string> cells = row_vars("A");
    cells[j - 1] = "player";
    std::vector<std::string> others;
    for (int k = 1; k <= kSize; ++k) {
      if (k != j) others.push_back("A" + std::to_string(k));
    }
    rules.add("prow_" + std::to_string(j), "prow(" + row_of(cells) + ")",
              {"fin3(" + others[0] + ", " + others[1] + ", " + others[2] + ")",
               "fin2(" + others[3] + ", " + others[4] + ")"});
  }
  rules.add("frow", "frow(row(A, B, C, D, E, F))",
            {"fin3(A, B, C)", "fin3(D, E, F)"});

  for (const char* x : kFinished) {
    for (const char* y : kFinished) {
      for (const char* z : kFinished) {
        rules.add(std::string("fin3_") + x + "_" + y + "_" + z,
                  std::string("fin3(") + x + ", " + y + ", " + z + ")");
      }
    }
  }
  for (const char* x : kFinished) {
    for (const char* y : kFinished) {
      rules.add(std::string("fin2_") + x + "_" + y,
                std::string("fin2(") + x + ", " + y + ")");
    }
  }

  return parse_logic(rules.take());
}

SokobanBoard parse_sokoban_ascii(std::string_view text, int width, int height) {
  SokobanBoard board;
  board.width = width;
  board.height = height;
  board.cells.assign(static_cast<std::size_t>(width * height),
                     SokobanCell::kWall);
  int row = 0, col = 0;
  for (char c : text) {
    if (c == '\n' || c == '|') {
      ++row;
      col = 0;
      continue;
    }
    if (row >= height || col >= width) {
      throw std::invalid_argument("sokoban board exceeds its size");
    }
    switch (c) {
      case '#': case ' ': case '.': case '$': case '*': case '@': case '+':
        board.at(row, col++) = static_cast<SokobanCell>(c);
        break;
      case '-': case '_':
        board.at(row, col++) = SokobanCell::kFloor;
        break;
      default:
        throw std::invalid_argument(std::string("bad sokoban cell '") + c + "'");
    }
  }
  return board;
}

std::string format_sokoban_ascii(const SokobanBoard& board) {
  std::string out;
  for (int r = 0; r < board.height; ++r) {
    for (int c = 0; c < board.width; ++c) {
      out += static_cast<char>(board.at(r, c));
    }
    out += '\n';
  }
  return out;
}

Term sokoban_board_term(const SokobanBoard& board) {
  std::vector<Term> rows;
  for (int r = 0; r < board.height; ++r) {
    std::vector<Term> cells;
    for (int c = 0; c < board.width; ++c) {
      cells.push_back(Term::constant(atom_from_cell(board.at(r, c))));
    }
    rows.push_back(Term::compound("row", std::move(cells)));
  }
  return Term::compound("board", std::move(rows));
}

std::optional<SokobanBoard> sokoban_board_from_term(const Term& t) {
  if (!t.is_compound() || t.atom().name() != "board" || t.arity() != kSize) {
    return std::nullopt;
  }
  SokobanBoard board;
  board.cells.assign(kSize * kSize, SokobanCell::kWall);
  for (int r = 0; r < kSize; ++r) {
    const Term& row = t.arg(r);
    if (!row.is_compound() || row.atom().name() != "row" || row.arity() != kSize) {
      return std::nullopt;
    }
    for (int c = 0; c < kSize; ++c) {
      const Term& cell = row.arg(c);
      board.at(r, c) = cell.is_constant() ? cell_from_atom(cell.atom().name())
                                          : SokobanCell::kWall;
    }
  }
  return board;
}

}  // namespace tcg
