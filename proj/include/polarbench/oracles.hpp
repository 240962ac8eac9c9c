#pragma once
// Ground-truth solvers. Each oracle is a brute-force search or an exact
// dynamic program over the lattice defined in topology.hpp; generators use
// them to compute answers and the validator re-runs them on emitted content.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polarbench/topology.hpp"

namespace polarbench {

/// Violated oracle precondition (attacking queens, non-monotone moves, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The instance does not pin down a unique answer.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State space too large for exhaustive search.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A required target cannot be reached.
class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Move {
  int d_major = 0;
  int d_minor = 0;
  bool wraps = true;  // may cross the minor-axis seam under Wrapping
  friend bool operator==(const Move&, const Move&) = default;
};

struct MoveSet {
  std::vector<Move> moves;

  static MoveSet right_down();
  static MoveSet right_down_diagonal();
  static MoveSet knight();
};

/// Shared side between two adjacent cells, stored with a < b.
struct CellEdge {
  CellRef a;
  CellRef b;
  friend auto operator<=>(const CellEdge&, const CellEdge&) = default;
};
CellEdge make_edge(const CellRef& x, const CellRef& y);
using WallSet = std::set<CellEdge>;

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t num, int64_t den = 1);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "p/q", or "p" when q == 1.
  std::string to_string() const;
  static Rational parse(const std::string& s);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

// ---- Combinatorics -------------------------------------------------------

/// Number of move sequences from start to end avoiding `blocked`; with a
/// checkpoint only sequences visiting it are counted. Moves must admit a
/// topological order (otherwise PreconditionError).
uint64_t count_monotone_paths(const GridSpec& spec, const MoveSet& moves, const CellRef& start, const CellRef& end,
                              const std::set<CellRef>& blocked = {},
                              const std::optional<CellRef>& checkpoint = std::nullopt);

/// Number of distinct cell sequences of exactly k moves from start to target.
/// Wrap-eligible moves wrap the minor axis when the spec wraps.
uint64_t count_fixed_length_walks(const GridSpec& spec, const MoveSet& moves, const CellRef& start,
                                  const CellRef& target, int k);

/// Cells reachable from `from` by one move of the set (ascending, distinct).
std::vector<CellRef> move_targets(const GridSpec& spec, const MoveSet& moves, const CellRef& from);

/// Probability that a uniform random neighbor walk from a, absorbed at b,
/// visits c at least once. Exact.
Rational walk_pass_probability(const GridSpec& spec, const CellRef& a, const CellRef& b, const CellRef& c);

// ---- Algorithmic -----------------------------------------------------------

/// Minimum number of contiguous strip flips turning `cells` into `target`;
/// std::nullopt when unreachable. Wrapping lets strips cross the seam.
std::optional<int> min_flip_moves(const std::vector<int>& cells, int strip_len, const std::vector<int>& target,
                                  Boundary boundary);

inline constexpr int kMaxFlipCells = 14;

struct SudokuBoard {
  int size = 9;  // N
  int box_rows = 3;
  int box_cols = 3;
  std::vector<int> cells;  // row-major, 0 = empty

  int at(int r, int c) const { return cells[static_cast<size_t>(r * size + c)]; }
  static SudokuBoard empty(int n);
};

/// Box shape used for each supported size: 4 -> 2x2, 6 -> 2x3, 9 -> 3x3.
std::pair<int, int> sudoku_box(int n);

/// Value of `cell` shared by every completion of the board. Throws
/// AmbiguityError when completions disagree, PreconditionError when none exists.
int solve_sudoku_cell(const SudokuBoard& board, const CellRef& cell);

/// Whether any completion exists.
bool sudoku_has_completion(const SudokuBoard& board);

struct QueenCount {
  uint64_t count = 0;
  std::vector<CellRef> example;  // one completion (queen per row), when count > 0
};

/// Completions of a partial N-queens placement. Wrapping evaluates attacks on
/// the torus (both diagonals wrap).
QueenCount count_queen_completions(int n, const std::set<CellRef>& fixed, Boundary boundary);

inline constexpr int kMaxQueens = 12;

// ---- Simulation ------------------------------------------------------------

enum class FollowOutcome { Stopped, Loop };

struct FollowResult {
  FollowOutcome outcome = FollowOutcome::Stopped;
  CellRef cell;
  int steps = 0;  // actions taken (moves + rotations)
};

/// Right-turning wall follower; walls block the shared side of two cells and
/// bounded grid edges always block.
FollowResult simulate_wall_follower(const GridSpec& spec, const WallSet& walls, const CellRef& start, Heading heading);

CellRef simulate_bouncing_point(const GridSpec& spec, const CellRef& start, std::pair<int, int> velocity, int n);

// ---- Navigation ------------------------------------------------------------

/// Walks (revisits allowed) over neighbors() whose letters spell `word`.
uint64_t count_word_paths(const GridSpec& spec, const std::map<CellRef, char>& letters, const std::string& word,
                          const CellRef& start);

using LabeledCells = std::vector<std::pair<std::string, CellRef>>;

/// Label of the unique entrance connected to `exit` through open sides.
std::string solve_maze_entrance(const GridSpec& spec, const WallSet& walls, const LabeledCells& entrances,
                                const CellRef& exit);

/// Cells connected to `from` through open sides.
std::set<CellRef> open_reachable(const GridSpec& spec, const WallSet& walls, const CellRef& from);

/// Label of the unique exit reachable from start by moving only to strictly
/// larger room values.
std::string solve_monotonic_exit(const GridSpec& spec, const std::map<CellRef, int>& room_values,
                                 const CellRef& start, const LabeledCells& exits);

std::set<CellRef> increasing_reachable(const GridSpec& spec, const std::map<CellRef, int>& room_values,
                                       const CellRef& start);

struct PathStep {
  CellRef cell;
  Heading heading = Heading::MinorPlus;
};

/// Letters in the cell to the right of the heading at each path cell, in
/// traversal order.
std::string collect_right_hand_letters(const GridSpec& spec, const std::vector<PathStep>& path,
                                       const std::map<CellRef, char>& letters);

// ---- Spatial ---------------------------------------------------------------

int connected_region_size(const GridSpec& spec, const std::set<CellRef>& shaded, const CellRef& seed);

/// Sizes of the color classes, descending. Every cell must be colored and
/// each class connected.
std::vector<int64_t> pipe_lengths(const GridSpec& spec, const std::map<CellRef, std::string>& coloring);

/// Cartesian: quarter turns clockwise about the grid center (square grids).
/// Polar: sector shift by quarter_turns * minor / 4 (minor divisible by 4).
std::map<CellRef, std::string> rotate_grid(const GridSpec& spec, const std::map<CellRef, std::string>& fills,
                                           int quarter_turns);

}  // namespace polarbench
