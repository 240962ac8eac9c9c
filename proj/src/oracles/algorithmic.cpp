#include <algorithm>
#include <bit>
#include <deque>

#include "polarbench/oracles.hpp"

namespace polarbench {

// ---- Minimum flips ---------------------------------------------------------

std::optional<int> min_flip_moves(const std::vector<int>& cells, int strip_len, const std::vector<int>& target,
                                  Boundary boundary) {
  const int n = static_cast<int>(cells.size());
  if (n > kMaxFlipCells) {
    throw SizeError("flip patterns are limited to " + std::to_string(kMaxFlipCells) + " cells, got " +
                    std::to_string(n));
  }
  if (strip_len < 1 || n < strip_len) throw PreconditionError("pattern shorter than the flip strip");
  if (target.size() != cells.size()) throw PreconditionError("target and pattern lengths differ");

  const auto to_mask = [](const std::vector<int>& v) {
    uint32_t m = 0;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0 && v[i] != 1) throw PreconditionError("flip patterns are binary");
      if (v[i]) m |= 1u << i;
    }
    return m;
  };
  const uint32_t from = to_mask(cells), goal = to_mask(target);

  std::vector<uint32_t> strips;
  const int starts = boundary == Boundary::Wrapping ? n : n - strip_len + 1;
  for (int s = 0; s < starts; ++s) {
    uint32_t m = 0;
    for (int k = 0; k < strip_len; ++k) m |= 1u << ((s + k) % n);
    strips.push_back(m);
  }
  std::sort(strips.begin(), strips.end());
  strips.erase(std::unique(strips.begin(), strips.end()), strips.end());

  std::vector<int> dist(size_t{1} << n, -1);
  std::deque<uint32_t> q{from};
  dist[from] = 0;
  while (!q.empty()) {
    const uint32_t cur = q.front();
    q.pop_front();
    if (cur == goal) return dist[cur];
    for (uint32_t s : strips) {
      const uint32_t nx = cur ^ s;
      if (dist[nx] < 0) {
        dist[nx] = dist[cur] + 1;
        q.push_back(nx);
      }
    }
  }
  return std::nullopt;
}

// ---- Sudoku ----------------------------------------------------------------

std::pair<int, int> sudoku_box(int n) {
  switch (n) {
    case 4: return {2, 2};
    case 6: return {2, 3};
    case 9: return {3, 3};
    default: throw PreconditionError("sudoku size must be 4, 6 or 9, got " + std::to_string(n));
  }
}

SudokuBoard SudokuBoard::empty(int n) {
  auto [br, bc] = sudoku_box(n);
  return {n, br, bc, std::vector<int>(static_cast<size_t>(n * n), 0)};
}

namespace {

class SudokuSearch {
 public:
  explicit SudokuSearch(const SudokuBoard& b) : b_(b), n_(b.size) {
    auto [br, bc] = sudoku_box(n_);
    if (br != b.box_rows || bc != b.box_cols) throw PreconditionError("unexpected box shape for sudoku size");
    if (b.cells.size() != static_cast<size_t>(n_ * n_)) throw PreconditionError("sudoku cell count mismatch");
    rows_.assign(static_cast<size_t>(n_), 0);
    cols_.assign(static_cast<size_t>(n_), 0);
    boxes_.assign(static_cast<size_t>(n_), 0);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        const int v = b.at(r, c);
        if (v == 0) continue;
        if (v < 0 || v > n_) throw PreconditionError("sudoku digit out of range");
        if (!place(r, c, v)) consistent_ = false;
      }
  }

  bool consistent() const { return consistent_; }

  uint32_t candidates(int r, int c) const {
    const uint32_t all = ((1u << n_) - 1u) << 1;
    return all & ~(rows_[r] | cols_[c] | boxes_[box(r, c)]);
  }

  bool place(int r, int c, int v) {
    const uint32_t bit = 1u << v;
    if ((rows_[r] | cols_[c] | boxes_[box(r, c)]) & bit) return false;
    rows_[r] |= bit;
    cols_[c] |= bit;
    boxes_[box(r, c)] |= bit;
    b_.cells[static_cast<size_t>(r * n_ + c)] = v;
    return true;
  }

  void unplace(int r, int c, int v) {
    const uint32_t bit = ~(1u << v);
    rows_[r] &= bit;
    cols_[c] &= bit;
    boxes_[box(r, c)] &= bit;
    b_.cells[static_cast<size_t>(r * n_ + c)] = 0;
  }

  bool solvable() {
    // Most constrained empty cell first.
    int best = -1, best_count = 99;
    uint32_t best_mask = 0;
    for (int i = 0; i < n_ * n_; ++i) {
      if (b_.cells[static_cast<size_t>(i)]) continue;
      const uint32_t m = candidates(i / n_, i % n_);
      const int cnt = std::popcount(m);
      if (cnt == 0) return false;
      if (cnt < best_count) {
        best = i;
        best_count = cnt;
        best_mask = m;
        if (cnt == 1) break;
      }
    }
    if (best < 0) return true;
    const int r = best / n_, c = best % n_;
    for (int v = 1; v <= n_; ++v) {
      if (!(best_mask & (1u << v))) continue;
      place(r, c, v);
      const bool ok = solvable();
      unplace(r, c, v);
      if (ok) return true;
    }
    return false;
  }

 private:
  int box(int r, int c) const { return (r / b_.box_rows) * (n_ / b_.box_cols) + c / b_.box_cols; }

  SudokuBoard b_;
  int n_;
  std::vector<uint32_t> rows_, cols_, boxes_;
  bool consistent_ = true;
};

}  // namespace

bool sudoku_has_completion(const SudokuBoard& board) {
  SudokuSearch s(board);
  return s.consistent() && s.solvable();
}

int solve_sudoku_cell(const SudokuBoard& board, const CellRef& cell) {
  SudokuSearch s(board);
  if (!s.consistent()) throw PreconditionError("sudoku givens conflict");
  if (cell.major < 0 || cell.minor < 0 || cell.major >= board.size || cell.minor >= board.size) {
    throw std::out_of_range("sudoku cell " + to_string(cell) + " out of range");
  }
  if (const int given = board.at(cell.major, cell.minor); given != 0) {
    if (!s.solvable()) throw PreconditionError("sudoku board has no completion");
    return given;
  }
  std::vector<int> feasible;
  const uint32_t mask = s.candidates(cell.major, cell.minor);
  for (int v = 1; v <= board.size; ++v) {
    if (!(mask & (1u << v))) continue;
    s.place(cell.major, cell.minor, v);
    if (s.solvable()) feasible.push_back(v);
    s.unplace(cell.major, cell.minor, v);
    if (feasible.size() > 1) {
      throw AmbiguityError("cell " + to_string(cell) + " admits both " + std::to_string(feasible[0]) + " and " +
                           std::to_string(feasible[1]));
    }
  }
  if (feasible.empty()) throw PreconditionError("sudoku board has no completion");
  return feasible.front();
}

// ---- N-queens --------------------------------------------------------------

namespace {

bool queens_attack(const CellRef& x, const CellRef& y, int n, Boundary boundary) {
  if (x.major == y.major || x.minor == y.minor) return true;
  if (boundary == Boundary::Wrapping) {
    const auto mod = [n](int v) { return ((v % n) + n) % n; };
    return mod(x.major + x.minor) == mod(y.major + y.minor) || mod(x.major - x.minor) == mod(y.major - y.minor);
  }
  return x.major + x.minor == y.major + y.minor || x.major - x.minor == y.major - y.minor;
}

struct QueenSearch {
  int n;
  Boundary boundary;
  std::vector<int> fixed_col;  // -1 when the row is free
  uint64_t cols = 0, diag = 0, anti = 0;
  std::vector<int> placed;
  QueenCount result;

  int diag_of(int r, int c) const { return boundary == Boundary::Wrapping ? (r + c) % n : r + c; }
  int anti_of(int r, int c) const {
    return boundary == Boundary::Wrapping ? ((r - c) % n + n) % n : r - c + n - 1;
  }

  void run(int r) {
    if (r == n) {
      if (result.count == 0) {
        for (int i = 0; i < n; ++i) result.example.push_back({i, placed[static_cast<size_t>(i)]});
      }
      ++result.count;
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (fixed_col[static_cast<size_t>(r)] >= 0 && fixed_col[static_cast<size_t>(r)] != c) continue;
      const uint64_t cb = 1ull << c, db = 1ull << diag_of(r, c), ab = 1ull << anti_of(r, c);
      if ((cols & cb) || (diag & db) || (anti & ab)) continue;
      cols |= cb;
      diag |= db;
      anti |= ab;
      placed[static_cast<size_t>(r)] = c;
      run(r + 1);
      cols &= ~cb;
      diag &= ~db;
      anti &= ~ab;
    }
  }
};

}  // namespace

QueenCount count_queen_completions(int n, const std::set<CellRef>& fixed, Boundary boundary) {
  if (n < 1 || n > kMaxQueens) {
    throw PreconditionError("board size must lie in 1.." + std::to_string(kMaxQueens) + ", got " + std::to_string(n));
  }
  std::vector<int> fixed_col(static_cast<size_t>(n), -1);
  for (const auto& q : fixed) {
    if (q.major < 0 || q.minor < 0 || q.major >= n || q.minor >= n) {
      throw std::out_of_range("queen " + to_string(q) + " off the board");
    }
    for (const auto& other : fixed) {
      if (other < q && queens_attack(q, other, n, boundary)) {
        throw PreconditionError("fixed queens " + to_string(other) + " and " + to_string(q) + " attack each other");
      }
    }
    fixed_col[static_cast<size_t>(q.major)] = q.minor;
  }
  QueenSearch s{n, boundary, fixed_col, 0, 0, 0, std::vector<int>(static_cast<size_t>(n), -1), {}};
  s.run(0);
  return s.result;
}

}  // namespace polarbench
