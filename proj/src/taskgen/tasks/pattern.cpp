#include <algorithm>

#include "../generator.hpp"

namespace polarbench::gen {

namespace {

class LetterCollection final : public TaskGenerator {
 public:
  static std::vector<PathStep> steps_of(const std::vector<CellRef>& path, const GridSpec& g) {
    std::vector<PathStep> out;
    for (size_t i = 0; i < path.size(); ++i) {
      const Heading h = i + 1 < path.size() ? heading_between(path[i], path[i + 1], g)
                                            : heading_between(path[i - 1], path[i], g);
      out.push_back({path[i], h});
    }
    return out;
  }

  Draft draw(Rng& rng, const Ranges& ranges) const override {
    const int rows = ranges.draw(rng, "rows"), cols = ranges.draw(rng, "cols");
    const int len = ranges.draw(rng, "path");
    const int want = ranges.draw(rng, "letters");
    const GridSpec g{Topology::Cartesian, rows, cols, Boundary::Wrapping};

    std::vector<CellRef> path{{rng.uniform_int(0, rows - 1), rng.uniform_int(0, cols - 1)}};
    std::set<CellRef> on_path{path[0]};
    while (static_cast<int>(path.size()) < len) {
      std::vector<CellRef> next;
      for (const auto& n : neighbors(path.back(), g))
        if (!on_path.count(n)) next.push_back(n);
      if (next.empty()) throw Reject("path walked into a dead end");
      path.push_back(rng.pick(next));
      on_path.insert(path.back());
    }
    const auto steps = steps_of(path, g);

    // Cells that read differently depending on how a corner is taken, or that
    // sit on the right of several path cells, never hold letters.
    std::map<CellRef, int> right_uses;
    std::set<CellRef> ambiguous;
    for (size_t i = 0; i < steps.size(); ++i) {
      if (auto r = step(steps[i].cell, right_of(steps[i].heading), g)) ++right_uses[*r];
      if (i > 0 && steps[i - 1].heading != steps[i].heading) {
        if (auto r = step(steps[i].cell, right_of(steps[i - 1].heading), g)) ambiguous.insert(*r);
      }
    }
    std::vector<size_t> slots;
    for (size_t i = 0; i < steps.size(); ++i) {
      auto r = step(steps[i].cell, right_of(steps[i].heading), g);
      if (r && !on_path.count(*r) && right_uses[*r] == 1 && !ambiguous.count(*r)) slots.push_back(i);
    }
    if (static_cast<int>(slots.size()) < want) throw Reject("not enough right-hand cells for the letters");
    rng.shuffle(slots);
    slots.resize(static_cast<size_t>(want));
    std::sort(slots.begin(), slots.end());

    static const std::string alphabet = "ABCDEFGHJKLMNPRSTUVWXYZ";
    std::map<CellRef, char> letters;
    std::string planted;
    for (size_t i : slots) {
      const char ch = alphabet[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(alphabet.size()) - 1))];
      letters[*step(steps[i].cell, right_of(steps[i].heading), g)] = ch;
      planted += ch;
    }
    // Decoys on the left-hand side.
    for (const auto& s : steps) {
      auto l = step(s.cell, turn_left(s.heading), g);
      if (!l || on_path.count(*l) || right_uses.count(*l) || ambiguous.count(*l) || letters.count(*l)) continue;
      if (rng.bernoulli(0.35)) {
        letters[*l] = alphabet[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(alphabet.size()) - 1))];
      }
    }

    json lj = json::array();
    for (const auto& [c, ch] : letters) lj.push_back({c.major, c.minor, std::string(1, ch)});
    Draft d;
    d.major = rows;
    d.minor = cols;
    d.cartesian = {{"path", cells_json(path)}, {"letters", lj}};
    d.polar = d.cartesian;
    d.construction = {{"planted", planted}};
    if (std::get<Str>(solve(d.cartesian, g, {})).text != planted) {
      throw std::logic_error("collected letters disagree with the planted string");
    }
    return d;
  }

  static std::map<CellRef, char> letters_of(const json& p) {
    std::map<CellRef, char> out;
    for (const auto& e : p.at("letters")) {
      const auto s = e.at(2).get<std::string>();
      if (s.size() != 1) throw PreconditionError("letters must be single characters");
      out[{e.at(0).get<int>(), e.at(1).get<int>()}] = s[0];
    }
    return out;
  }

  Answer solve(const json& p, const GridSpec& grid, const std::vector<std::string>&) const override {
    const auto path = cells_from(p.at("path"));
    if (path.size() < 2) throw PreconditionError("path needs at least two cells");
    return Str{collect_right_hand_letters(grid, steps_of(path, grid), letters_of(p))};
  }

  SceneSpec scene(const json& p, const GridSpec& grid) const override {
    SceneSpec s;
    s.task_id = "letter_collection";
    s.grid = grid;
    const auto path = cells_from(p.at("path"));
    s.cell_fills[path.front()] = kStartFill;
    s.cell_fills[path.back()] = kTargetFill;
    s.overlays.push_back(PathTrace{path, "#1f77b4", 3.0});
    const auto [dm, dn] = offset(heading_between(path[0], path[1], grid));
    s.overlays.push_back(Arrow{path.front(), dm, dn});
    for (const auto& [c, ch] : letters_of(p)) s.cell_glyphs[c] = std::string(1, ch);
    return s;
  }

  std::string narrative(const json&) const override {
    return "Walk along the blue path from the green start cell to the red end cell. At each cell of the path, look "
           "at the cell immediately on your right, judged by the direction in which you leave that cell (at the "
           "last cell, the direction in which you arrived). Collect the letters found in those cells, in the order "
           "you pass them. Letters elsewhere are ignored. What string do you collect?";
  }

  std::string layout_extra(const json&, const GridSpec& g) const override { return right_turn_note(g.topology); }
};

}  // namespace

std::unique_ptr<TaskGenerator> make_letter_collection() { return std::make_unique<LetterCollection>(); }

}  // namespace polarbench::gen
