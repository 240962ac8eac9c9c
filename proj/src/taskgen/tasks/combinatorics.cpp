#include <algorithm>

#include "../generator.hpp"

namespace polarbench::gen {

namespace {

std::vector<CellRef> distinct_cells(Rng& rng, const GridSpec& g, size_t k) {
  auto cells = all_cells(g);
  if (cells.size() < k) throw Reject("grid too small");
  rng.shuffle(cells);
  cells.resize(k);
  return cells;
}

// ---- Lattice paths ---------------------------------------------------------

class LatticePaths final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Bounded};
    const CellRef start{0, 0}, end{rows - 1, cols - 1};
    auto pool = all_cells(g);
    pool.erase(std::remove_if(pool.begin(), pool.end(), [&](const CellRef& c) { return c == start || c == end; }),
               pool.end());
    rng.shuffle(pool);
    const size_t k = std::min(pool.size(), static_cast<size_t>(ranges.draw(rng, "blocked")));
    const std::set<CellRef> blocked(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    const auto count = count_monotone_paths(g, MoveSet::right_down_diagonal(), start, end, blocked);
    if (count == 0) throw Reject("blocked cells cut every path");

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"start", cell_json(start)}, {"end", cell_json(end)},
                   {"blocked", cells_json({blocked.begin(), blocked.end()})}};
    d.polar = d.cartesian;
    d.construction = {{"count", count}};
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    const auto b = cells_from(p.at("blocked"));
    const auto n = count_monotone_paths(grid, MoveSet::right_down_diagonal(), cell_from(p.at("start")),
                                        cell_from(p.at("end")), std::set<CellRef>(b.begin(), b.end()));
    return Digit{static_cast<int64_t>(n)};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "lattice_paths";
    s.grid = grid;
    const auto start = cell_from(p.at("start")), end = cell_from(p.at("end"));
    s.cell_fills[start] = kStartFill;
    s.cell_glyphs[start] = "S";
    s.cell_fills[end] = kTargetFill;
    s.cell_glyphs[end] = "E";
    for (const auto& c : cells_from(p.at("blocked"))) s.cell_fills[c] = "#424242";
    return s;
  }

  std::string narrative(const json&) const override {
    return "Count the paths from the cell marked S to the cell marked E. Every move goes one cell forward along "
           "the row or ring, one cell forward along the column or sector, or one diagonal step doing both at once. "
           "Paths may not enter the dark cells. How many different paths are there?";
  }

  std::string layout_extra(const json&, const GridSpec& g) const override {
    if (g.topology == Topology::Polar) {
      return "The three allowed moves are: one sector clockwise, one ring outward, or one ring outward and one "
             "sector clockwise together. No move may cross the seam.";
    }
    return "The three allowed moves are: one column right, one row down, or one diagonal step down-right.";
  }
};

// ---- Knight paths ----------------------------------------------------------

class KnightPaths final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    if (cols < 3) throw Reject("too few sectors");
    const int k = ranges.draw(rng, "steps");
    const GridSpec gc{Topology::Cartesian, rows, cols, Boundary::Bounded};
    const GridSpec gp{Topology::Polar, rows, cols, Boundary::Wrapping};
    const auto pick = distinct_cells(rng, gc, 2);
    const auto nc = count_fixed_length_walks(gc, MoveSet::knight(), pick[0], pick[1], k);
    const auto np = count_fixed_length_walks(gp, MoveSet::knight(), pick[0], pick[1], k);
    if (nc == 0) throw Reject("target unreachable in exactly k moves on the bounded board");

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"start", cell_json(pick[0])}, {"target", cell_json(pick[1])}, {"steps", k}};
    d.polar = d.cartesian;
    d.construction = {{"bounded_count", nc}, {"wrapping_count", np}};
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    const auto n = count_fixed_length_walks(grid, MoveSet::knight(), cell_from(p.at("start")), cell_from(p.at("target")),
                                            p.at("steps").get<int>());
    return Digit{static_cast<int64_t>(n)};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "knight_paths";
    s.grid = grid;
    const auto a = cell_from(p.at("start")), b = cell_from(p.at("target"));
    s.cell_fills[a] = kStartFill;
    s.cell_glyphs[a] = "S";
    s.cell_fills[b] = kTargetFill;
    s.cell_glyphs[b] = "T";
    return s;
  }

  std::string narrative(const json& p) const override {
    return "A chess knight stands on the cell marked S. A knight move shifts it two cells along one axis and one "
           "cell along the other. How many different routes (sequences of visited cells) take the knight from S to "
           "the cell marked T in exactly " + std::to_string(p.at("steps").get<int>()) +
           " moves? Cells may be revisited.";
  }

  std::string layout_extra(const json&, const GridSpec& g) const override {
    if (g.topology == Topology::Polar) {
      return "A knight move changes the ring by 2 and the sector by 1, or the ring by 1 and the sector by 2. Sector "
             "changes may cross the seam; moves past the innermost or outermost ring are impossible.";
    }
    return "A knight move changes the row by 2 and the column by 1, or the row by 1 and the column by 2. Moves may "
           "not leave the board.";
  }
};

// ---- Random walk -----------------------------------------------------------

constexpr int64_t kMaxDenominator = 400;

class RandomWalk final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    if (cols < 3) throw Reject("too few sectors");
    const GridSpec gc{Topology::Cartesian, rows, cols, Boundary::Bounded};
    const GridSpec gp{Topology::Polar, rows, cols, Boundary::Wrapping};
    const auto abc = distinct_cells(rng, gc, 3);
    const auto pc = walk_pass_probability(gc, abc[0], abc[1], abc[2]);
    const auto pp = walk_pass_probability(gp, abc[0], abc[1], abc[2]);
    if (pc.den() > kMaxDenominator || pp.den() > kMaxDenominator) throw Reject("probability denominator too large");
    if (pc == Rational(1) || pc == Rational(0)) throw Reject("trivial probability");

    std::vector<std::string> pool;
    for (const auto& base : {pc, pp}) {
      const int64_t n = base.num(), q = base.den();
      for (const auto& r : {Rational(q - n, q), Rational(n, q + 1), Rational(n + 1, q + 1), Rational(n, 2 * q),
                            Rational(std::max<int64_t>(1, n - 1), q)}) {
        if (r > Rational(0) && r < Rational(1)) pool.push_back(r.to_string());
      }
    }
    for (int q = 2; q <= 9; ++q)
      for (int n = 1; n < q; ++n) pool.push_back(Rational(n, q).to_string());

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"a", cell_json(abc[0])}, {"b", cell_json(abc[1])}, {"c", cell_json(abc[2])}};
    d.polar = d.cartesian;
    d.construction = {{"bounded_probability", pc.to_string()}, {"wrapping_probability", pp.to_string()}};
    d.options = build_options(rng, {pc.to_string(), pp.to_string()}, pool, 5);
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>& options) const override {
    const auto r = walk_pass_probability(grid, cell_from(p.at("a")), cell_from(p.at("b")), cell_from(p.at("c")));
    return pick_option(options, r.to_string());
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "random_walk";
    s.grid = grid;
    const char* names[] = {"a", "b", "c"};
    const char* fills[] = {kStartFill, kTargetFill, kHighlight};
    for (int i = 0; i < 3; ++i) {
      const auto c = cell_from(p.at(names[i]));
      s.cell_fills[c] = fills[i];
      s.cell_glyphs[c] = std::string(1, static_cast<char>('A' + i));
    }
    return s;
  }

  std::string narrative(const json&) const override {
    return "A token starts in the cell marked A. At every step it moves to one of the cells sharing a side with its "
           "current cell, each with equal probability. The walk ends as soon as the token reaches the cell marked B. "
           "What is the probability that the token visits the cell marked C before the walk ends?";
  }
};

}  // namespace

std::unique_ptr<TaskGenerator> make_lattice_paths() { return std::make_unique<LatticePaths>(); }
std::unique_ptr<TaskGenerator> make_knight_paths() { return std::make_unique<KnightPaths>(); }
std::unique_ptr<TaskGenerator> make_random_walk() { return std::make_unique<RandomWalk>(); }

}  // namespace polarbench::gen
