#include <algorithm>
#include <numeric>

#include "../generator.hpp"

namespace polarbench::gen {

namespace {

/// Wall segments for rendering: one EdgeLine per wall, drawn on the side of
/// the first cell facing the second.
void draw_walls(SceneSpec& s, const WallSet& walls) {
  for (const auto& w : walls) s.overlays.push_back(EdgeLine{w.a, heading_between(w.a, w.b, s.grid), 4.0});
}

/// Every adjacent pair of a bounded grid.
std::vector<CellEdge> all_edges(const GridSpec& g) {
  std::vector<CellEdge> out;
  for (const auto& c : all_cells(g))
    for (const auto& n : neighbors(c, g))
      if (c < n) out.push_back({c, n});
  return out;
}

std::string exit_word(const std::string& label) { return "Exit " + label; }
std::string entrance_word(const std::string& label) { return "Entrance " + label; }

// ---- Maze ------------------------------------------------------------------

class Maze final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    const int k = ranges.draw(rng, "entrances");
    if (k > cols) throw Reject("more entrances than outer cells");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Bounded};

    // Depth-first carve of a spanning tree.
    std::set<CellEdge> open;
    std::set<CellRef> seen;
    std::vector<CellRef> stack{{rng.uniform_int(0, rows - 1), rng.uniform_int(0, cols - 1)}};
    seen.insert(stack.back());
    while (!stack.empty()) {
      const auto cur = stack.back();
      std::vector<CellRef> fresh;
      for (const auto& n : neighbors(cur, g))
        if (!seen.count(n)) fresh.push_back(n);
      if (fresh.empty()) {
        stack.pop_back();
        continue;
      }
      const auto next = rng.pick(fresh);
      open.insert(make_edge(cur, next));
      seen.insert(next);
      stack.push_back(next);
    }

    std::vector<int> entrance_cols(static_cast<size_t>(cols));
    std::iota(entrance_cols.begin(), entrance_cols.end(), 0);
    rng.shuffle(entrance_cols);
    entrance_cols.resize(static_cast<size_t>(k));
    std::sort(entrance_cols.begin(), entrance_cols.end());
    const CellRef exit{0, rng.uniform_int(0, cols - 1)};
    const int correct = rng.uniform_int(0, k - 1);

    // Tree parents toward the exit.
    std::map<CellRef, CellRef> parent;
    std::vector<CellRef> q{exit};
    parent[exit] = exit;
    for (size_t i = 0; i < q.size(); ++i)
      for (const auto& n : neighbors(q[i], g))
        if (open.count(make_edge(q[i], n)) && !parent.count(n)) {
          parent[n] = q[i];
          q.push_back(n);
        }
    const auto path_edges = [&](CellRef c) {
      std::vector<CellEdge> out;
      while (!(c == exit)) {
        out.push_back(make_edge(c, parent[c]));
        c = parent[c];
      }
      return out;
    };
    const auto good_path = path_edges({rows - 1, entrance_cols[static_cast<size_t>(correct)]});
    const std::set<CellEdge> good(good_path.begin(), good_path.end());
    for (int i = 0; i < k; ++i) {
      if (i == correct) continue;
      std::vector<CellEdge> cuttable;
      for (const auto& e : path_edges({rows - 1, entrance_cols[static_cast<size_t>(i)]})) {
        if (good.count(e)) break;
        cuttable.push_back(e);
      }
      if (cuttable.empty()) throw Reject("wrong entrance shares the solution corridor");
      open.erase(rng.pick(cuttable));
    }

    WallSet walls;
    for (const auto& e : all_edges(g))
      if (!open.count(e)) walls.insert(e);

    json entrances = json::array();
    for (int i = 0; i < k; ++i) {
      entrances.push_back({{"label", std::string(1, option_letter(static_cast<size_t>(i)))},
                           {"cell", cell_json({rows - 1, entrance_cols[static_cast<size_t>(i)]})}});
    }
    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"walls", walls_json(walls)}, {"entrances", entrances}, {"exit", cell_json(exit)}};
    d.polar = d.cartesian;
    const std::string label(1, option_letter(static_cast<size_t>(correct)));
    d.construction = {{"carved_entrance", label}};
    for (int i = 0; i < k; ++i) d.options.push_back(entrance_word(std::string(1, option_letter(static_cast<size_t>(i)))));
    if (solve(d.cartesian, g, d.options) != Answer{OptionLabel{label[0]}}) {
      throw std::logic_error("maze oracle disagrees with the carved entrance");
    }
    return d;
  }

  static LabeledCells labeled(const json& arr) {
    LabeledCells out;
    for (const auto& e : arr) out.push_back({e.at("label").get<std::string>(), cell_from(e.at("cell"))});
    return out;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>& options) const override {
    const auto label = solve_maze_entrance(grid, walls_from(p.at("walls")), labeled(p.at("entrances")),
                                           cell_from(p.at("exit")));
    return pick_option(options, entrance_word(label));
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "maze";
    s.grid = grid;
    draw_walls(s, walls_from(p.at("walls")));
    for (const auto& [label, cell] : labeled(p.at("entrances"))) s.overlays.push_back(EdgeLabel{cell, Heading::MajorPlus, label});
    s.cell_fills[cell_from(p.at("exit"))] = kTargetFill;
    return s;
  }

  std::string narrative(const json& p) const override {
    return "The picture shows a maze. Thick lines are walls; you may move between cells that share a side without "
           "a wall. The labeled cells on the outer edge are entrances and the red cell is the exit. Exactly one of "
           "the " + std::to_string(p.at("entrances").size()) + " entrances is connected to the exit. Which one?";
  }
};

// ---- Monotonic path --------------------------------------------------------

class MonotonicPath final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    constexpr int kExits = 6;
    if (cols < kExits) throw Reject("fewer outer cells than exits");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Wrapping};
    const int n = rows * cols;

    std::vector<int> exit_cols(static_cast<size_t>(cols));
    std::iota(exit_cols.begin(), exit_cols.end(), 0);
    rng.shuffle(exit_cols);
    exit_cols.resize(kExits);
    std::sort(exit_cols.begin(), exit_cols.end());
    const int correct = rng.uniform_int(0, kExits - 1);
    const CellRef start{0, rng.uniform_int(0, cols - 1)};
    const CellRef goal{rows - 1, exit_cols[static_cast<size_t>(correct)]};

    // Random simple path from start to goal.
    std::vector<CellRef> path{start};
    std::set<CellRef> on_path{start};
    while (!(path.back() == goal)) {
      std::vector<CellRef> options;
      for (const auto& nb : neighbors(path.back(), g)) {
        if (on_path.count(nb)) continue;
        if (nb.major == rows - 1 && !(nb == goal)) continue;
        options.push_back(nb);
      }
      if (options.empty() || path.size() > static_cast<size_t>(rows + cols)) throw Reject("planted path got stuck");
      // Lean outward so paths stay short.
      std::vector<CellRef> outward;
      for (const auto& o : options)
        if (o.major > path.back().major) outward.push_back(o);
      const auto& next = (!outward.empty() && rng.bernoulli(0.5)) ? rng.pick(outward) : rng.pick(options);
      path.push_back(next);
      on_path.insert(next);
    }

    std::vector<int> values(99);
    std::iota(values.begin(), values.end(), 1);
    rng.shuffle(values);
    values.resize(static_cast<size_t>(n));
    std::vector<int> path_values(values.end() - static_cast<std::ptrdiff_t>(path.size()), values.end());
    std::sort(path_values.begin(), path_values.end());
    std::map<CellRef, int> room;
    std::vector<int> rest(values.begin(), values.end() - static_cast<std::ptrdiff_t>(path.size()));
    size_t r = 0;
    for (size_t i = 0; i < path.size(); ++i) room[path[i]] = path_values[i];
    for (const auto& c : all_cells(g))
      if (!room.count(c)) room[c] = rest[r++];

    json exits = json::array();
    for (int i = 0; i < kExits; ++i) {
      exits.push_back({{"label", std::string(1, option_letter(static_cast<size_t>(i)))},
                       {"cell", cell_json({rows - 1, exit_cols[static_cast<size_t>(i)]})}});
    }
    json values_json = json::array();
    for (const auto& c : all_cells(g)) values_json.push_back(room[c]);

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"values", values_json}, {"start", cell_json(start)}, {"exits", exits}};
    d.polar = d.cartesian;
    const std::string label(1, option_letter(static_cast<size_t>(correct)));
    d.construction = {{"planted_exit", label}, {"planted_path", cells_json(path)}};
    for (int i = 0; i < kExits; ++i) d.options.push_back(exit_word(std::string(1, option_letter(static_cast<size_t>(i)))));
    if (solve(d.cartesian, g, d.options) != Answer{OptionLabel{label[0]}}) throw Reject("another exit is reachable");
    return d;
  }

  static std::map<CellRef, int> rooms(const json& p, const GridSpec& g) {
    const auto v = p.at("values").get<std::vector<int>>();
    if (static_cast<int>(v.size()) != g.cell_count()) throw PreconditionError("room value count mismatch");
    std::map<CellRef, int> out;
    for (int i = 0; i < g.cell_count(); ++i) out[cell_at(i, g)] = v[static_cast<size_t>(i)];
    return out;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>& options) const override {
    LabeledCells exits;
    for (const auto& e : p.at("exits")) exits.push_back({e.at("label").get<std::string>(), cell_from(e.at("cell"))});
    const auto label = solve_monotonic_exit(grid, rooms(p, grid), cell_from(p.at("start")), exits);
    return pick_option(options, exit_word(label));
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "monotonic_path";
    s.grid = grid;
    for (const auto& [c, v] : rooms(p, grid)) s.cell_glyphs[c] = std::to_string(v);
    s.cell_fills[cell_from(p.at("start"))] = kStartFill;
    for (const auto& e : p.at("exits"))
      s.overlays.push_back(EdgeLabel{cell_from(e.at("cell")), Heading::MajorPlus, e.at("label").get<std::string>()});
    return s;
  }

  std::string narrative(const json&) const override {
    return "Each cell is a room showing a number. You start in the green room (START). From a room you may move to a "
           "room sharing a side with it only if that room's number is strictly larger. The labeled rooms on the "
           "outer edge are exits. Exactly one exit can be reached. Which one?";
  }
};

// ---- Word search -----------------------------------------------------------

class WordSearch final : public TaskGenerator {
 public:
  bool supports_variants() const override { return true; }

  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    if (cols < 3) throw Reject("too few sectors");
    const int len = ranges.draw(rng, "word_length");
    std::vector<char> letters = {'A', 'C', 'E', 'H', 'K', 'M', 'N', 'R', 'S', 'T', 'W', 'Y'};
    rng.shuffle(letters);
    letters.resize(4);
    std::string word;
    while (static_cast<int>(word.size()) < len) {
      const char c = rng.pick(letters);
      if (word.empty() || word.back() != c) word += c;
    }
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Bounded};
    std::string grid_letters;
    for (int i = 0; i < g.cell_count(); ++i) grid_letters += rng.pick(letters);
    const CellRef start{rows / 2, cols / 2};
    grid_letters[static_cast<size_t>(linear_index(start, g))] = word[0];

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"letters", grid_letters}, {"word", word}, {"start", cell_json(start)}};
    d.polar = d.cartesian;
    const auto count = std::get<Digit>(solve(d.cartesian, g, {})).value;
    if (count == 0) throw Reject("word cannot be spelled");
    if (count > 40) throw Reject("too many paths to count by eye");
    d.construction = {{"count", count}};
    return d;
  }

  static std::map<CellRef, char> letters_of(const json& p, const GridSpec& g) {
    const auto s = p.at("letters").get<std::string>();
    if (static_cast<int>(s.size()) != g.cell_count()) throw PreconditionError("letter count mismatch");
    std::map<CellRef, char> out;
    for (int i = 0; i < g.cell_count(); ++i) out[cell_at(i, g)] = s[static_cast<size_t>(i)];
    return out;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    const auto n = count_word_paths(grid, letters_of(p, grid), p.at("word").get<std::string>(), cell_from(p.at("start")));
    return Digit{static_cast<int64_t>(n)};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "word_search";
    s.grid = grid;
    for (const auto& [c, ch] : letters_of(p, grid)) s.cell_glyphs[c] = std::string(1, ch);
    s.cell_fills[cell_from(p.at("start"))] = kHighlight;
    return s;
  }

  std::string narrative(const json& p) const override {
    const auto word = p.at("word").get<std::string>();
    return "Starting from the highlighted cell (letter " + word.substr(0, 1) + "), count the paths that spell the "
           "word \"" + word + "\": each next letter must be in a cell adjacent to the previous one. A cell may be "
           "used more than once. How many such paths are there?";
  }

  std::string layout_extra(const json&, const GridSpec& g) const override {
    if (g.topology == Topology::Cartesian || g.topology == Topology::Polar) {
      return "Cells are adjacent when they share a side; diagonal neighbors do not count.";
    }
    return {};
  }
};

// ---- Wall follower ---------------------------------------------------------

class WallFollower final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Bounded};
    const double p = ranges.draw(rng, "wall_pct") / 100.0;
    WallSet walls;
    for (const auto& e : all_edges(g))
      if (rng.bernoulli(p)) walls.insert(e);
    const CellRef start{rng.uniform_int(0, rows - 1), rng.uniform_int(0, cols - 1)};
    const Heading heading = rng.pick(std::vector<Heading>{Heading::MajorPlus, Heading::MajorMinus, Heading::MinorPlus,
                                                          Heading::MinorMinus});
    const auto res = simulate_wall_follower(g, walls, start, heading);
    if (res.steps < 6) throw Reject("robot stops almost immediately");
    const CellRef truth = res.cell;

    std::vector<std::string> required{coordinate_text(truth)};
    auto near = neighbors(truth, g);
    rng.shuffle(near);
    for (size_t i = 0; i < near.size() && i < 2; ++i) required.push_back(coordinate_text(near[i]));
    std::vector<std::string> pool;
    for (const auto& c : all_cells(g))
      if (!(c == truth)) pool.push_back(coordinate_text(c));

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"walls", walls_json(walls)}, {"start", cell_json(start)}, {"heading", std::string(to_string(heading))}};
    d.polar = d.cartesian;
    d.construction = {{"outcome", res.outcome == FollowOutcome::Loop ? "loop" : "stopped"}, {"steps", res.steps}};
    d.options = build_options(rng, required, pool, 5);
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>& options) const override {
    const auto res = simulate_wall_follower(grid, walls_from(p.at("walls")), cell_from(p.at("start")),
                                            heading_from_string(p.at("heading").get<std::string>()));
    pick_option(options, coordinate_text(res.cell));
    return Coordinate{res.cell.major, res.cell.minor};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "wall_follower";
    s.grid = grid;
    draw_walls(s, walls_from(p.at("walls")));
    const auto start = cell_from(p.at("start"));
    const auto [dm, dn] = offset(heading_from_string(p.at("heading").get<std::string>()));
    s.cell_fills[start] = kStartFill;
    s.overlays.push_back(Arrow{start, dm, dn});
    s.axis_labels = true;
    return s;
  }

  std::string narrative(const json&) const override {
    return "A robot starts in the green cell facing the direction of the arrow. At every step: if no wall is in "
           "front of it, it moves forward one cell; otherwise it turns right by 90 degrees without moving. The outer "
           "boundary counts as a wall. The robot halts when it has turned four times in a row without moving, or as "
           "soon as it is in a cell facing a direction it has already faced in that same cell (including its "
           "starting cell and direction). In which cell does it halt?";
  }

  std::string layout_extra(const json& p, const GridSpec& g) const override {
    return "The arrow points " + heading_words(heading_from_string(p.at("heading").get<std::string>()), g.topology) +
           ". " + right_turn_note(g.topology) + " Options are written as " +
           (g.topology == Topology::Polar ? "(ring, sector)." : "(row, column).");
  }
};

}  // namespace

std::unique_ptr<TaskGenerator> make_maze() { return std::make_unique<Maze>(); }
std::unique_ptr<TaskGenerator> make_monotonic_path() { return std::make_unique<MonotonicPath>(); }
std::unique_ptr<TaskGenerator> make_word_search() { return std::make_unique<WordSearch>(); }
std::unique_ptr<TaskGenerator> make_wall_follower() { return std::make_unique<WallFollower>(); }

}  // namespace polarbench::gen
