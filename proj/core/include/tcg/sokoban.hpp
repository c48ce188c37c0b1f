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

// Sokoban as a pseudo-logic. The goal is solvable(Board) where Board is
//
//   board(row(C11,...,C16), ..., row(C61,...,C66))
//
// and each cell is one of wall, floor, target, box, boxt (box on target),
// player, playert (player on target).
//
// Rule order (the action space):
//    0     finish   solvable(B) <- done(B)
//    1- 4  right, left, down, up: one player step or push
//    5-10  pick_row_1..6        select a row of the board
//   11-14  rows3_1..4           select three consecutive rows
//   15-18  right_in_1..4        rewrite cells j..j+2 of a row, moving right
//   19-22  left_in_1..4         same, moving left
//   23-28  col_move_1..6        rewrite column j of three rows
//   29-40  move3 axioms         walk (4) and push (8) cell triples
//   41-46  done_1..6            row i holds the player, the rest are finished
//   47-52  prow_1..6            player in column j, other cells finished
//   53     frow                 a row without player, every cell finished
//   54-80  fin3 axioms          three finished cells (wall, floor, boxt)
//   81-89  fin2 axioms          two finished cells
//
// A move is only expressible when the three cells it touches lie on the
// board, so walking onto the outermost ring needs a cell beyond it. Puzzles
// with a wall border are unaffected.

#ifndef TCG_SOKOBAN_HPP_
#define TCG_SOKOBAN_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcg/logic.hpp"
#include "tcg/term.hpp"

namespace tcg {

enum class SokobanCell : char {
  kWall = '#',
  kFloor = ' ',
  kTarget = '.',
  kBox = '$',
  kBoxOnTarget = '*',
  kPlayer = '@',
  kPlayerOnTarget = '+',
};

struct SokobanBoard {
  int width = 6;
  int height = 6;
  std::vector<SokobanCell> cells;  // row-major

  SokobanCell at(int row, int col) const { return cells[row * width + col]; }
  SokobanCell& at(int row, int col) { return cells[row * width + col]; }
  friend bool operator==(const SokobanBoard&, const SokobanBoard&) = default;
};

// Throws std::invalid_argument unless width == height == 6.
LogicDef generate_sokoban_logic(int width = 6, int height = 6);

// Rows separated by '\n' or '|', using the characters of SokobanCell. Short
// rows are padded with walls.
SokobanBoard parse_sokoban_ascii(std::string_view text, int width = 6,
                                 int height = 6);
std::string format_sokoban_ascii(const SokobanBoard& board);

Term sokoban_board_term(const SokobanBoard& board);
// Decodes a board(...) term. Cells holding anything other than the seven cell
// atoms (for instance constants introduced at handover) decode as walls.
// Returns nullopt if the shape is wrong.
std::optional<SokobanBoard> sokoban_board_from_term(const Term& t);

}  // namespace tcg

#endif  // TCG_SOKOBAN_HPP_
