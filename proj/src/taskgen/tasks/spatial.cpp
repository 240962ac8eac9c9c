#include <algorithm>

#include "../generator.hpp"

namespace polarbench::gen {

namespace {

using Fills = std::map<CellRef, std::string>;

json fills_json(const Fills& f) {
  json out = json::array();
  for (const auto& [c, color] : f) out.push_back({c.major, c.minor, color});
  return out;
}

Fills fills_from(const json& j) {
  Fills out;
  for (const auto& e : j) out[{e.at(0).get<int>(), e.at(1).get<int>()}] = e.at(2).get<std::string>();
  return out;
}

// ---- Grid rotation ---------------------------------------------------------

Fills mirror(const GridSpec& g, const Fills& f) {
  Fills out;
  for (const auto& [c, color] : f) out[{c.major, g.minor - 1 - c.minor}] = color;
  return out;
}

std::string panel_word(size_t i) { return "Panel " + std::string(1, option_letter(i)); }

class GridRotation final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const auto& sr = ranges.at("size");
    std::vector<int> sizes;
    for (int n : {4, 8})
      if (n >= sr.lo && n <= sr.hi) sizes.push_back(n);
    if (sizes.empty()) throw Reject("no supported rotation size in the configured range");
    const int n = rng.pick(sizes);
    const double p = ranges.draw(rng, "filled_pct") / 100.0;
    const std::vector<std::string> colors = {palette()[0], palette()[2], palette()[3]};
    Fills fills;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (rng.bernoulli(p)) fills[{r, c}] = rng.pick(colors);
    if (fills.size() < 3) throw Reject("pattern too sparse");
    const int turns = rng.uniform_int(1, 3);
    const size_t answer = static_cast<size_t>(rng.uniform_int(0, 4));

    Draft d;
    d.major = d.minor = n;
    for (auto t : {Topology::Cartesian, Topology::Polar}) {
      const GridSpec g{t, n, n, Boundary::Bounded};
      const auto truth = rotate_grid(g, fills, turns);
      std::vector<Fills> wrong;
      for (int k = 1; k <= 3; ++k)
        if (k != turns) wrong.push_back(rotate_grid(g, fills, k));
      wrong.push_back(mirror(g, truth));
      // Truth with one colored cell moved to an empty cell.
      Fills moved = truth;
      auto it = std::next(moved.begin(), rng.uniform_int(0, static_cast<int>(moved.size()) - 1));
      const std::string color = it->second;
      moved.erase(it);
      std::vector<CellRef> empty;
      for (const auto& c : all_cells(g))
        if (!truth.count(c)) empty.push_back(c);
      if (empty.empty()) throw Reject("no room to perturb the pattern");
      moved[rng.pick(empty)] = color;
      wrong.push_back(moved);

      std::vector<Fills> panels(5);
      panels[answer] = truth;
      for (size_t i = 0, w = 0; i < 5; ++i)
        if (i != answer) panels[i] = wrong[w++];
      json pj = json::array();
      for (size_t i = 0; i < 5; ++i) {
        for (size_t j = 0; j < i; ++j)
          if (panels[i] == panels[j]) throw Reject("pattern symmetry makes two panels identical");
        pj.push_back(fills_json(panels[i]));
      }
      json& side = t == Topology::Cartesian ? d.cartesian : d.polar;
      side = json::object();
      side["fills"] = fills_json(fills);
      side["turns"] = turns;
      side["panels"] = std::move(pj);
    }
    for (size_t i = 0; i < 5; ++i) d.options.push_back(panel_word(i));
    d.construction = {{"answer_panel", std::string(1, option_letter(answer))}};
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>& options) const override {
    const auto rotated = rotate_grid(grid, fills_from(p.at("fills")), p.at("turns").get<int>());
    std::vector<size_t> hits;
    for (size_t i = 0; i < p.at("panels").size(); ++i)
      if (fills_from(p.at("panels")[i]) == rotated) hits.push_back(i);
    if (hits.size() != 1) throw AmbiguityError(std::to_string(hits.size()) + " panels match the rotation");
    return pick_option(options, panel_word(hits.front()));
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "grid_rotation";
    s.grid = grid;
    s.cell_fills = fills_from(p.at("fills"));
    for (size_t i = 0; i < p.at("panels").size(); ++i) {
      s.panels.push_back({std::string(1, option_letter(i)), fills_from(p.at("panels")[i])});
    }
    return s;
  }

  std::string narrative(const json& p) const override {
    const int turns = p.at("turns").get<int>();
    return "The large picture at the top shows a colored pattern. Which of the five small panels A to E shows the "
           "pattern after rotating the whole picture by " + std::to_string(90 * turns) + " degrees clockwise?";
  }
};

// ---- Area counting ---------------------------------------------------------

class AreaCounting final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Bounded};
    const int size = ranges.draw(rng, "region");
    if (size > g.cell_count() / 2) throw Reject("region larger than half the grid");
    const CellRef seed{rng.uniform_int(0, rows - 1), rng.uniform_int(0, cols - 1)};
    std::set<CellRef> region{seed};
    while (static_cast<int>(region.size()) < size) {
      std::vector<CellRef> frontier;
      for (const auto& c : region)
        for (const auto& n : neighbors(c, g))
          if (!region.count(n)) frontier.push_back(n);
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
      if (frontier.empty()) throw Reject("region cannot grow");
      region.insert(rng.pick(frontier));
    }
    // Separate distractor patches that never touch the counted region.
    std::set<CellRef> shaded = region;
    for (const auto& c : all_cells(g)) {
      if (region.count(c)) continue;
      const auto nb = neighbors(c, g);
      if (std::any_of(nb.begin(), nb.end(), [&](const CellRef& x) { return region.count(x) > 0; })) continue;
      if (rng.bernoulli(0.3)) shaded.insert(c);
    }

    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"shaded", cells_json({shaded.begin(), shaded.end()})}, {"seed", cell_json(seed)}};
    d.polar = d.cartesian;
    d.construction = {{"painted", size}};
    if (std::get<Digit>(solve(d.cartesian, g, {})).value != size) {
      throw std::logic_error("flood fill disagrees with the painted region");
    }
    return d;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    const auto v = cells_from(p.at("shaded"));
    return Digit{connected_region_size(grid, {v.begin(), v.end()}, cell_from(p.at("seed")))};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "area_counting";
    s.grid = grid;
    for (const auto& c : cells_from(p.at("shaded"))) s.cell_fills[c] = kShade;
    s.cell_glyphs[cell_from(p.at("seed"))] = "*";
    return s;
  }

  std::string narrative(const json&) const override {
    return "Some cells are shaded gray. Gray cells that share a side belong to the same region. How many gray cells "
           "are in the region that contains the cell marked with *?";
  }
};

// ---- Pipe lengths ----------------------------------------------------------

class PipeLengths final : public TaskGenerator {
 public:
  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Bounded};
    std::set<CellRef> free;
    for (const auto& c : all_cells(g)) free.insert(c);
    std::vector<std::vector<CellRef>> pipes;
    const auto free_degree = [&](const CellRef& c) {
      const auto nb = neighbors(c, g);
      return std::count_if(nb.begin(), nb.end(), [&](const CellRef& x) { return free.count(x) > 0; });
    };

    while (!free.empty()) {
      // Start where the free area is tightest so no cell gets stranded.
      std::vector<CellRef> cand(free.begin(), free.end());
      long best = 99;
      for (const auto& c : cand) best = std::min(best, static_cast<long>(free_degree(c)));
      std::vector<CellRef> tight;
      for (const auto& c : cand)
        if (free_degree(c) == best) tight.push_back(c);
      std::vector<CellRef> pipe{rng.pick(tight)};
      free.erase(pipe.back());
      const int want = rng.uniform_int(2, 6);
      while (static_cast<int>(pipe.size()) < want) {
        std::vector<CellRef> next;
        for (const auto& n : neighbors(pipe.back(), g))
          if (free.count(n)) next.push_back(n);
        if (next.empty()) break;
        pipe.push_back(rng.pick(next));
        free.erase(pipe.back());
      }
      if (pipe.size() == 1) {
        bool joined = false;
        for (auto& other : pipes) {
          if (adjacent(other.back(), pipe[0], g)) {
            other.push_back(pipe[0]);
            joined = true;
          } else if (adjacent(other.front(), pipe[0], g)) {
            other.insert(other.begin(), pipe[0]);
            joined = true;
          }
          if (joined) break;
        }
        if (!joined) throw Reject("stranded single cell");
        continue;
      }
      pipes.push_back(pipe);
    }
    if (pipes.size() > palette().size()) throw Reject("more pipes than colors");
    if (pipes.size() < 2) throw Reject("single pipe");

    std::vector<std::string> colors = palette();
    rng.shuffle(colors);
    json pj = json::array();
    std::vector<int64_t> sizes;
    for (size_t i = 0; i < pipes.size(); ++i) {
      pj.push_back({{"color", colors[i]}, {"cells", cells_json(pipes[i])}});
      sizes.push_back(static_cast<int64_t>(pipes[i].size()));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"pipes", pj}};
    d.polar = d.cartesian;
    d.construction = {{"sizes", sizes}};
    return d;
  }

  static Fills coloring(const json& p) {
    Fills out;
    for (const auto& pipe : p.at("pipes"))
      for (const auto& c : cells_from(pipe.at("cells"))) out[c] = pipe.at("color").get<std::string>();
    return out;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    return IntList{pipe_lengths(grid, coloring(p))};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "pipe_lengths";
    s.grid = grid;
    s.cell_fills = coloring(p);
    for (const auto& pipe : p.at("pipes")) s.overlays.push_back(PathTrace{cells_from(pipe.at("cells")), "#333333", 2.0});
    return s;
  }

  std::string narrative(const json&) const override {
    return "The layout is completely filled with colored pipes. Each pipe is a chain of same-colored cells joined "
           "through shared sides, and the thin line traces it. The length of a pipe is the number of cells it "
           "covers. List the lengths of all pipes in descending order.";
  }
};

}  // namespace

std::unique_ptr<TaskGenerator> make_grid_rotation() { return std::make_unique<GridRotation>(); }
std::unique_ptr<TaskGenerator> make_area_counting() { return std::make_unique<AreaCounting>(); }
std::unique_ptr<TaskGenerator> make_pipe_lengths() { return std::make_unique<PipeLengths>(); }

}  // namespace polarbench::gen
