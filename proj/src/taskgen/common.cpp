#include <algorithm>

#include "generator.hpp"

namespace polarbench::gen {

int Ranges::draw(Rng& rng, const std::string& name) const {
  const auto& r = at(name);
  return rng.uniform_int(r.lo, r.hi);
}

const ParamRange& Ranges::at(const std::string& name) const {
  auto it = r_.find(name);
  if (it == r_.end()) throw std::logic_error("missing parameter range '" + name + "'");
  return it->second;
}

json cell_json(const CellRef& c) { return json::array({c.major, c.minor}); }

CellRef cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("cell must be a [major, minor] pair");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

json cells_json(const std::vector<CellRef>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(cell_json(c));
  return out;
}

std::vector<CellRef> cells_from(const json& j) {
  std::vector<CellRef> out;
  for (const auto& e : j) out.push_back(cell_from(e));
  return out;
}

json walls_json(const WallSet& walls) {
  json out = json::array();
  for (const auto& w : walls) out.push_back(json::array({cell_json(w.a), cell_json(w.b)}));
  return out;
}

WallSet walls_from(const json& j) {
  WallSet out;
  for (const auto& e : j) out.insert(make_edge(cell_from(e.at(0)), cell_from(e.at(1))));
  return out;
}

std::string coordinate_text(const CellRef& c) {
  return "(" + std::to_string(c.major) + ", " + std::to_string(c.minor) + ")";
}

std::string layout_note(const GridSpec& g) {
  const std::string R = std::to_string(g.major), C = std::to_string(g.minor);
  const bool wraps = g.boundary == Boundary::Wrapping;
  switch (g.topology) {
    case Topology::Cartesian:
      return "Layout: a rectangular grid with " + R + " rows and " + C +
             " columns. Rows are numbered from 0 at the top to " + std::to_string(g.major - 1) +
             " at the bottom; columns from 0 at the left to " + std::to_string(g.minor - 1) + " at the right. " +
             (wraps ? "The left and right edges are joined: moving right from the last column enters column 0 "
                      "of the same row, and vice versa. The top and bottom edges are walls."
                    : "All four outer edges are walls.");
    case Topology::Polar:
      return "Layout: a circular grid with " + R + " rings and " + C +
             " sectors. Rings are numbered from 0 (innermost) to " + std::to_string(g.major - 1) +
             " (outermost); sectors from 0, which starts at 12 o'clock, increasing clockwise to " +
             std::to_string(g.minor - 1) + ". " +
             (wraps ? "Sectors wrap around: moving clockwise from the last sector enters sector 0 of the same ring, "
                      "and vice versa. The innermost and outermost circles are walls."
                    : "The radial seam between the last sector and sector 0 is a solid wall, as are the innermost "
                      "and outermost circles.");
    case Topology::Hexagonal:
      return "Layout: a field of " + std::to_string(g.cell_count()) +
             " hexagonal cells. Cells that share a side are adjacent (up to six neighbors).";
    case Topology::Octagonal:
      return "Layout: a field of " + std::to_string(g.cell_count()) +
             " octagonal cells separated by small diamonds. Octagons that touch along a side, straight or "
             "diagonal, are adjacent (up to eight neighbors); the diamonds are not cells.";
  }
  return {};
}

std::string format_instruction(AnswerType type, const GridSpec& grid) {
  switch (type) {
    case AnswerType::OptionLabel:
      return "Give the letter of the correct option on the last line, formatted as 'Answer: B'.";
    case AnswerType::Digit: return "Give a single integer on the last line, formatted as 'Answer: 12'.";
    case AnswerType::Coordinate:
      return grid.topology == Topology::Polar
                 ? "Give the cell as (ring, sector) on the last line, formatted as 'Answer: (2, 5)'."
                 : "Give the cell as (row, column) on the last line, formatted as 'Answer: (2, 5)'.";
    case AnswerType::Str: return "Give the letters as one word on the last line, formatted as 'Answer: CAT'.";
    case AnswerType::IntList:
      return "Give the numbers as a bracketed list in descending order on the last line, formatted as "
             "'Answer: [5, 3, 2]'.";
  }
  return {};
}

std::string options_block(const std::vector<std::string>& options) {
  std::string out = "Options:";
  for (size_t i = 0; i < options.size(); ++i) out += "\n(" + std::string(1, option_letter(i)) + ") " + options[i];
  return out;
}

std::string heading_words(Heading h, Topology t) {
  const bool polar = t == Topology::Polar;
  switch (h) {
    case Heading::MajorPlus: return polar ? "outward" : "down";
    case Heading::MajorMinus: return polar ? "inward" : "up";
    case Heading::MinorPlus: return polar ? "clockwise" : "right";
    case Heading::MinorMinus: return polar ? "counterclockwise" : "left";
  }
  return {};
}

std::string right_turn_note(Topology t) {
  if (t == Topology::Polar) {
    return "On this circular grid a right turn follows the cycle inward -> clockwise -> outward -> "
           "counterclockwise -> inward, and the cell on your right is the next one along that cycle from your "
           "heading (heading clockwise, it is the cell one ring outward).";
  }
  return "A right turn follows the cycle up -> right -> down -> left -> up, and the cell on your right is the "
         "next one along that cycle from your heading (heading right, it is the cell below).";
}

OptionLabel pick_option(const std::vector<std::string>& options, const std::string& value) {
  std::vector<size_t> hits;
  for (size_t i = 0; i < options.size(); ++i)
    if (options[i] == value) hits.push_back(i);
  if (hits.size() != 1) {
    throw AmbiguityError(std::to_string(hits.size()) + " options equal the oracle value '" + value + "'");
  }
  return {option_letter(hits.front())};
}

std::vector<std::string> build_options(Rng& rng, const std::vector<std::string>& required,
                                       std::vector<std::string> pool, size_t count) {
  std::vector<std::string> out;
  for (const auto& r : required)
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  rng.shuffle(pool);
  for (const auto& p : pool) {
    if (out.size() >= count) break;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  if (out.size() != count) throw Reject("not enough distinct distractors");
  rng.shuffle(out);
  return out;
}

const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
                                             "#f032e6", "#bfef45", "#fabed4", "#469990", "#dcbeff", "#9a6324"};
  return p;
}

std::string color_name(const std::string& hex) {
  static const std::map<std::string, std::string> names = {
      {"#e6194b", "red"},      {"#3cb44b", "green"},    {"#4363d8", "blue"},      {"#f58231", "orange"},
      {"#911eb4", "purple"},   {"#42d4f4", "cyan"},     {"#f032e6", "magenta"},   {"#bfef45", "lime"},
      {"#fabed4", "pink"},     {"#469990", "teal"},     {"#dcbeff", "lavender"},  {"#9a6324", "brown"},
      {kShade, "gray"},        {kHighlight, "yellow"},  {kStartFill, "light green"}, {kTargetFill, "light red"}};
  auto it = names.find(hex);
  return it == names.end() ? hex : it->second;
}

}  // namespace polarbench::gen
