#include <algorithm>
#include <deque>
#include <functional>

#include "polarbench/oracles.hpp"

namespace polarbench {

namespace {

std::set<CellRef> component(const GridSpec& spec, const std::set<CellRef>& members, const CellRef& seed) {
  std::set<CellRef> seen{seed};
  std::deque<CellRef> q{seed};
  while (!q.empty()) {
    const auto cur = q.front();
    q.pop_front();
    for (const auto& nb : neighbors(cur, spec))
      if (members.count(nb) && seen.insert(nb).second) q.push_back(nb);
  }
  return seen;
}

}  // namespace

int connected_region_size(const GridSpec& spec, const std::set<CellRef>& shaded, const CellRef& seed) {
  validate(spec);
  require_in_range(seed, spec);
  if (!shaded.count(seed)) throw PreconditionError("seed cell is not shaded");
  return static_cast<int>(component(spec, shaded, seed).size());
}

std::vector<int64_t> pipe_lengths(const GridSpec& spec, const std::map<CellRef, std::string>& coloring) {
  validate(spec);
  std::map<std::string, std::set<CellRef>> classes;
  for (const auto& c : all_cells(spec)) {
    auto it = coloring.find(c);
    if (it == coloring.end()) throw PreconditionError("cell " + to_string(c) + " has no color");
    classes[it->second].insert(c);
  }
  if (coloring.size() != static_cast<size_t>(spec.cell_count())) throw PreconditionError("coloring has extra cells");
  std::vector<int64_t> out;
  for (const auto& [color, cells] : classes) {
    if (component(spec, cells, *cells.begin()).size() != cells.size()) {
      throw PreconditionError("pipe '" + color + "' is disconnected");
    }
    out.push_back(static_cast<int64_t>(cells.size()));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::map<CellRef, std::string> rotate_grid(const GridSpec& spec, const std::map<CellRef, std::string>& fills,
                                           int quarter_turns) {
  validate(spec);
  const int q = ((quarter_turns % 4) + 4) % 4;
  std::function<CellRef(const CellRef&)> turn;
  switch (spec.topology) {
    case Topology::Cartesian:
      if (spec.major != spec.minor) throw PreconditionError("Cartesian rotation needs a square grid");
      turn = [n = spec.major](const CellRef& c) { return CellRef{c.minor, n - 1 - c.major}; };
      break;
    case Topology::Polar:
      if (spec.minor % 4 != 0) throw PreconditionError("Polar rotation needs a sector count divisible by 4");
      turn = [m = spec.minor](const CellRef& c) { return CellRef{c.major, (c.minor + m / 4) % m}; };
      break;
    default: throw PreconditionError("rotation is defined for Cartesian and Polar grids only");
  }
  std::map<CellRef, std::string> out;
  for (const auto& [cell, color] : fills) {
    require_in_range(cell, spec);
    CellRef c = cell;
    for (int k = 0; k < q; ++k) c = turn(c);
    out[c] = color;
  }
  return out;
}

}  // namespace polarbench
