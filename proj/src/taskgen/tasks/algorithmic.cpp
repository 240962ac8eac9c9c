#include <algorithm>
#include <numeric>

#include "../generator.hpp"

namespace polarbench::gen {

namespace {

// ---- Sudoku ----------------------------------------------------------------

class Sudoku final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const auto& sr = ranges.at("size");
    std::vector<int> sizes;
    for (int n : {6, 9})
      if (n >= sr.lo && n <= sr.hi) sizes.push_back(n);
    if (sizes.empty()) throw Reject("no supported sudoku size in the configured range");
    const int n = rng.pick(sizes);
    const auto [br, bc] = sudoku_box(n);

    // Shuffled copy of the canonical pattern: digit relabeling plus row and
    // column permutations that keep bands and stacks intact.
    std::vector<int> digits(static_cast<size_t>(n));
    std::iota(digits.begin(), digits.end(), 1);
    rng.shuffle(digits);
    const auto band_perm = [&](int groups, int width) {
      std::vector<int> order(static_cast<size_t>(groups));
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      std::vector<int> out;
      for (int g : order) {
        std::vector<int> inner(static_cast<size_t>(width));
        std::iota(inner.begin(), inner.end(), g * width);
        rng.shuffle(inner);
        out.insert(out.end(), inner.begin(), inner.end());
      }
      return out;
    };
    const auto rows = band_perm(n / br, br);
    const auto cols = band_perm(n / bc, bc);
    std::vector<int> solution(static_cast<size_t>(n * n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const int rr = rows[static_cast<size_t>(r)], cc = cols[static_cast<size_t>(c)];
        solution[static_cast<size_t>(r * n + c)] = digits[static_cast<size_t>((bc * (rr % br) + rr / br + cc) % n)];
      }

    SudokuBoard board{n, br, bc, solution};
    const CellRef target{rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1)};
    board.cells[static_cast<size_t>(target.major * n + target.minor)] = 0;
    std::vector<int> order(static_cast<size_t>(n * n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    const int want = n * n * ranges.draw(rng, "blank_pct") / 100;
    int blanks = 1;
    for (int idx : order) {
      if (blanks >= want) break;
      auto& v = board.cells[static_cast<size_t>(idx)];
      if (v == 0) continue;
      const int keep = v;
      v = 0;
      try {
        solve_sudoku_cell(board, target);
        ++blanks;
      } catch (const AmbiguityError&) {
        v = keep;
      }
    }
    const int truth = solution[static_cast<size_t>(target.major * n + target.minor)];
    if (solve_sudoku_cell(board, target) != truth) throw std::logic_error("sudoku oracle disagrees with the source grid");

    std::vector<std::string> pool;
    for (int d = 1; d <= n; ++d)
      if (d != truth) pool.push_back(std::to_string(d));

    Draft d;
    d.major = d.minor = n;
    d.cartesian = {{"size", n}, {"box", {br, bc}}, {"cells", board.cells}, {"target", cell_json(target)}};
    d.polar = d.cartesian;
    d.construction = {{"solution", solution}, {"target_value", truth}, {"blanks", blanks}};
    d.options = build_options(rng, {std::to_string(truth)}, pool, 5);
    return d;
  }

  static SudokuBoard board_of(const json& p) {
    const int n = p.at("size").get<int>();
    auto b = SudokuBoard::empty(n);
    if (p.at("box").at(0).get<int>() != b.box_rows || p.at("box").at(1).get<int>() != b.box_cols) {
      throw PreconditionError("sudoku box shape does not match its size");
    }
    b.cells = p.at("cells").get<std::vector<int>>();
    return b;
  }

  Answer solve(const json& p, const GridSpec&, const std::vector<std::string>& options) const override {
    const int v = solve_sudoku_cell(board_of(p), cell_from(p.at("target")));
    return pick_option(options, std::to_string(v));
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    const auto b = board_of(p);
    const auto target = cell_from(p.at("target"));
    SceneSpec s;
    s.task_id = "sudoku";
    s.grid = grid;
    for (int r = 0; r < b.size; ++r)
      for (int c = 0; c < b.size; ++c) {
        if (const int v = b.at(r, c); v != 0) s.cell_glyphs[{r, c}] = std::to_string(v);
        if (r > 0 && r % b.box_rows == 0) s.overlays.push_back(EdgeLine{{r, c}, Heading::MajorMinus, 4.0});
        if (c > 0 && c % b.box_cols == 0) s.overlays.push_back(EdgeLine{{r, c}, Heading::MinorMinus, 4.0});
      }
    s.cell_fills[target] = kHighlight;
    s.cell_glyphs[target] = "?";
    return s;
  }

  std::string narrative(const json& p) const override {
    const int n = p.at("size").get<int>();
    const std::string box = p.at("box").at(0).dump() + "x" + p.at("box").at(1).dump();
    return "This is a Sudoku puzzle of size " + std::to_string(n) + ". When it is completed, every row or ring, every "
           "column or sector, and every outlined " + box + " box contains each digit from 1 to " + std::to_string(n) +
           " exactly once. Which digit belongs in the highlighted cell marked '?'?";
  }

  std::string layout_extra(const json&, const GridSpec& g) const override {
    if (g.topology != Topology::Polar) return {};
    return "Here each ring plays the role of a row and each sector the role of a column; boxes are outlined by thick "
           "lines.";
  }
};

// ---- N-Queens --------------------------------------------------------------

bool random_queens(Rng& rng, int n, int row, std::vector<int>& cols) {
  if (row == n) return true;
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (int c : order) {
    bool ok = true;
    for (int r = 0; r < row && ok; ++r) {
      const int oc = cols[static_cast<size_t>(r)];
      ok = oc != c && std::abs(oc - c) != row - r;
    }
    if (!ok) continue;
    cols[static_cast<size_t>(row)] = c;
    if (random_queens(rng, n, row + 1, cols)) return true;
  }
  return false;
}

class NQueens final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int n = ranges.draw(rng, "size");
    if (n < 5) throw Reject("board too small for five options");
    std::vector<int> cols(static_cast<size_t>(n), -1);
    if (!random_queens(rng, n, 0, cols)) throw Reject("no queen placement for this size");
    const int target_row = rng.uniform_int(0, n - 1);

    std::vector<int> rows;
    for (int r = 0; r < n; ++r)
      if (r != target_row) rows.push_back(r);
    rng.shuffle(rows);
    std::set<CellRef> fixed;
    size_t used = 0;
    const int start = rng.uniform_int(1, std::max(1, n / 2 - 1));
    for (; used < static_cast<size_t>(start); ++used) fixed.insert({rows[used], cols[static_cast<size_t>(rows[used])]});
    while (count_queen_completions(n, fixed, Boundary::Bounded).count != 1) {
      if (used == rows.size()) throw std::logic_error("full placement is not unique");
      fixed.insert({rows[used], cols[static_cast<size_t>(rows[used])]});
      ++used;
    }
    if (static_cast<int>(fixed.size()) > n - 2) throw Reject("too few queens left to place");

    const CellRef truth{target_row, cols[static_cast<size_t>(target_row)]};
    std::vector<std::string> pool;
    for (int c = 0; c < n; ++c)
      if (c != truth.minor) pool.push_back(coordinate_text({target_row, c}));

    Draft d;
    d.major = d.minor = n;
    d.cartesian = {{"size", n}, {"fixed", cells_json({fixed.begin(), fixed.end()})}, {"target_row", target_row}};
    d.polar = d.cartesian;
    d.construction = {{"solution", cols}, {"target", cell_json(truth)}};
    d.options = build_options(rng, {coordinate_text(truth)}, pool, 5);
    return d;
  }

  Answer solve(const json& p, const GridSpec&, const std::vector<std::string>& options) const override {
    const int n = p.at("size").get<int>();
    const auto fixed_v = cells_from(p.at("fixed"));
    const std::set<CellRef> fixed(fixed_v.begin(), fixed_v.end());
    const auto res = count_queen_completions(n, fixed, Boundary::Bounded);
    if (res.count != 1) throw AmbiguityError(std::to_string(res.count) + " completions; expected exactly one");
    const int row = p.at("target_row").get<int>();
    return pick_option(options, coordinate_text(res.example[static_cast<size_t>(row)]));
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "n_queens";
    s.grid = grid;
    const int row = p.at("target_row").get<int>();
    for (int c = 0; c < grid.minor; ++c) s.cell_fills[{row, c}] = kHighlight;
    for (const auto& q : cells_from(p.at("fixed"))) s.cell_glyphs[q] = "Q";
    s.axis_labels = true;
    return s;
  }

  std::string narrative(const json& p) const override {
    const int n = p.at("size").get<int>();
    return "Queens (Q) are partially placed on a " + std::to_string(n) + "x" + std::to_string(n) +
           " board. Place the missing queens so that there is exactly one queen in every row or ring and every "
           "column or sector, and no two queens share a diagonal. The completion is unique. In which cell does the "
           "queen of the highlighted row or ring go?";
  }

  std::string layout_extra(const json&, const GridSpec& g) const override {
    if (g.topology == Topology::Polar) {
      return "A diagonal steps one ring and one sector at a time (a spiral); diagonals stop at the seam and at the "
             "inner and outer circles. Options are written as (ring, sector).";
    }
    return "A diagonal steps one row and one column at a time. Options are written as (row, column).";
  }
};

// ---- Minimum flips ---------------------------------------------------------

std::optional<int> min_to_alternating(const std::vector<int>& cells, int strip, Boundary b) {
  std::optional<int> best;
  for (int phase : {0, 1}) {
    std::vector<int> target(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) target[i] = static_cast<int>((i + static_cast<size_t>(phase)) % 2);
    if (auto m = min_flip_moves(cells, strip, target, b); m && (!best || *m < *best)) best = m;
  }
  return best;
}

class MinimumFlips final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const auto& lr = ranges.at("length");
    std::vector<int> lengths;
    for (int n = lr.lo; n <= lr.hi; ++n)
      if (n % 2 == 0) lengths.push_back(n);
    if (lengths.empty()) throw Reject("no even length in the configured range");
    const int n = rng.pick(lengths);
    const int strip = ranges.draw(rng, "strip");
    if (strip >= n) throw Reject("strip longer than the pattern");
    std::vector<int> cells(static_cast<size_t>(n));
    for (auto& c : cells) c = rng.bernoulli(0.5) ? 1 : 0;
    const auto bounded = min_to_alternating(cells, strip, Boundary::Bounded);
    const auto wrapping = min_to_alternating(cells, strip, Boundary::Wrapping);
    if (!bounded || !wrapping) throw Reject("alternating pattern unreachable on one layout");
    if (*bounded == 0 || *wrapping == 0) throw Reject("pattern already alternates");

    std::vector<std::string> pool;
    for (int k = 1; k <= n; ++k) pool.push_back(std::to_string(k));
    Draft d;
    d.major = 1;
    d.minor = n;
    d.cartesian = {{"cells", cells}, {"strip", strip}};
    d.polar = d.cartesian;
    d.construction = {{"bounded_min", *bounded}, {"wrapping_min", *wrapping}};
    d.options = build_options(rng, {std::to_string(*bounded), std::to_string(*wrapping)}, pool, 5);
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>& options) const override {
    const auto cells = p.at("cells").get<std::vector<int>>();
    if (static_cast<int>(cells.size()) != grid.minor || grid.major != 1) throw PreconditionError("pattern size mismatch");
    const auto m = min_to_alternating(cells, p.at("strip").get<int>(), grid.boundary);
    if (!m) throw UnreachableError("no alternating pattern is reachable");
    return pick_option(options, std::to_string(*m));
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "minimum_flips";
    s.grid = grid;
    const auto cells = p.at("cells").get<std::vector<int>>();
    for (int i = 0; i < grid.minor; ++i) s.cell_fills[{0, i}] = cells[static_cast<size_t>(i)] ? "#212121" : "#ffffff";
    if (grid.topology == Topology::Cartesian) s.height = std::max(160, s.width / grid.minor + 40);
    return s;
  }

  std::string narrative(const json& p) const override {
    const auto strip = std::to_string(p.at("strip").get<int>());
    return "Each cell of the picture is black or white. One move flips the color of " + strip +
           " consecutive neighboring cells. What is the minimum number of moves needed to reach a pattern in which "
           "every two neighboring cells have different colors (either alternating pattern counts)?";
  }

  std::string layout_extra(const json& p, const GridSpec& g) const override {
    const auto strip = std::to_string(p.at("strip").get<int>());
    if (g.boundary == Boundary::Wrapping) {
      return "The " + strip + " flipped cells may run across the boundary between the last sector and sector 0, "
             "and the last and first cells count as neighbors.";
    }
    return "The " + strip + " flipped cells must lie inside the strip; the first and last cells are not neighbors.";
  }
};

// ---- Bouncing point --------------------------------------------------------

std::string step_words(int v, Heading plus, Heading minus, Topology t, const std::string& unit) {
  if (v == 0) return "0 " + unit + "s";
  return "1 " + unit + " " + heading_words(v > 0 ? plus : minus, t);
}

class BouncingPoint final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    if (cols < 3) throw Reject("too few sectors");
    int vi = 0, vj = 0;
    while (vi == 0 && vj == 0) {
      vi = rng.uniform_int(-1, 1);
      vj = rng.uniform_int(-1, 1);
    }
    const CellRef start{rng.uniform_int(0, rows - 1), rng.uniform_int(0, cols - 1)};
    const int steps = ranges.draw(rng, "steps");
    const GridSpec gc{Topology::Cartesian, rows, cols, Boundary::Bounded};
    const GridSpec gp{Topology::Polar, rows, cols, Boundary::Wrapping};
    const auto ec = simulate_bouncing_point(gc, start, {vi, vj}, steps);
    const auto ep = simulate_bouncing_point(gp, start, {vi, vj}, steps);
    if (ec == start && ep == start) throw Reject("point returns to its start on both layouts");

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"start", cell_json(start)}, {"velocity", {vi, vj}}, {"steps", steps}};
    d.polar = d.cartesian;
    d.construction = {{"bounded_end", cell_json(ec)}, {"wrapping_end", cell_json(ep)}};
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    const auto v = p.at("velocity");
    const auto end = simulate_bouncing_point(grid, cell_from(p.at("start")), {v.at(0).get<int>(), v.at(1).get<int>()},
                                             p.at("steps").get<int>());
    return Coordinate{end.major, end.minor};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "bouncing_point";
    s.grid = grid;
    const auto start = cell_from(p.at("start"));
    s.cell_fills[start] = kStartFill;
    s.overlays.push_back(Arrow{start, p.at("velocity").at(0).get<int>(), p.at("velocity").at(1).get<int>()});
    s.axis_labels = true;
    return s;
  }

  std::string narrative(const json& p) const override {
    return "A point starts in the green cell and, at every step, moves by the offset shown by the arrow. If a move "
           "would cross a wall, the component of the velocity that points into the wall reverses before the move "
           "(the point bounces). Where is the point after " + std::to_string(p.at("steps").get<int>()) + " steps?";
  }

  std::string layout_extra(const json& p, const GridSpec& g) const override {
    const int vi = p.at("velocity").at(0).get<int>(), vj = p.at("velocity").at(1).get<int>();
    const bool polar = g.topology == Topology::Polar;
    return "Initially each step moves " +
           step_words(vi, Heading::MajorPlus, Heading::MajorMinus, g.topology, polar ? "ring" : "row") + " and " +
           step_words(vj, Heading::MinorPlus, Heading::MinorMinus, g.topology, polar ? "sector" : "column") + ".";
  }
};

}  // namespace

std::unique_ptr<TaskGenerator> make_sudoku() { return std::make_unique<Sudoku>(); }
std::unique_ptr<TaskGenerator> make_n_queens() { return std::make_unique<NQueens>(); }
std::unique_ptr<TaskGenerator> make_minimum_flips() { return std::make_unique<MinimumFlips>(); }
std::unique_ptr<TaskGenerator> make_bouncing_point() { return std::make_unique<BouncingPoint>(); }

}  // namespace polarbench::gen
