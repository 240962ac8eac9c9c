#include "polarbench/topology.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace polarbench {

void validate(const GridSpec& spec) {
  if (spec.major < 1 || spec.minor < 1) {
    throw std::invalid_argument("grid dimensions must be positive, got " + std::to_string(spec.major) + "x" +
                                std::to_string(spec.minor));
  }
  if (spec.topology == Topology::Polar && spec.minor < 3) {
    throw std::invalid_argument("polar grids need at least 3 sectors, got " + std::to_string(spec.minor));
  }
  if ((spec.topology == Topology::Hexagonal || spec.topology == Topology::Octagonal) &&
      spec.boundary == Boundary::Wrapping) {
    throw std::invalid_argument("hexagonal and octagonal layouts are bounded only");
  }
  if (!(spec.inner_radius_ratio > 0.0 && spec.inner_radius_ratio < 1.0)) {
    throw std::invalid_argument("inner_radius_ratio must lie in (0,1)");
  }
}

bool in_range(const CellRef& cell, const GridSpec& spec) {
  return cell.major >= 0 && cell.minor >= 0 && cell.major < spec.major && cell.minor < spec.minor;
}

void require_in_range(const CellRef& cell, const GridSpec& spec) {
  if (!in_range(cell, spec)) {
    throw std::out_of_range("cell " + to_string(cell) + " outside " + std::to_string(spec.major) + "x" +
                            std::to_string(spec.minor) + " grid");
  }
}

int linear_index(const CellRef& cell, const GridSpec& spec) { return cell.major * spec.minor + cell.minor; }

CellRef cell_at(int index, const GridSpec& spec) { return {index / spec.minor, index % spec.minor}; }

std::vector<CellRef> all_cells(const GridSpec& spec) {
  std::vector<CellRef> out;
  out.reserve(static_cast<size_t>(spec.cell_count()));
  for (int i = 0; i < spec.major; ++i)
    for (int j = 0; j < spec.minor; ++j) out.push_back({i, j});
  return out;
}

CellRef map_cell(const CellRef& cell, const GridSpec& spec) {
  if (spec.topology != Topology::Cartesian && spec.topology != Topology::Polar) {
    throw std::invalid_argument("map_cell is defined between Cartesian and Polar layouts only");
  }
  require_in_range(cell, spec);
  return cell;
}

GridSpec mapped_spec(const GridSpec& spec) {
  GridSpec out = spec;
  switch (spec.topology) {
    case Topology::Cartesian: out.topology = Topology::Polar; break;
    case Topology::Polar: out.topology = Topology::Cartesian; break;
    default: throw std::invalid_argument("mapped_spec is defined between Cartesian and Polar layouts only");
  }
  return out;
}

namespace {

void push_if(std::vector<CellRef>& out, const CellRef& c, const CellRef& self, const GridSpec& spec) {
  if (in_range(c, spec) && c != self) out.push_back(c);
}

std::vector<CellRef> hex_neighbors(const CellRef& cell, const GridSpec& spec) {
  // odd-q offset -> axial
  const int q = cell.minor;
  const int r = cell.major - (q - (q & 1)) / 2;
  static constexpr std::array<std::pair<int, int>, 6> kAxial{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};
  std::vector<CellRef> out;
  for (auto [dq, dr] : kAxial) {
    const int nq = q + dq;
    const int nr = r + dr;
    const int row = nr + (nq - (nq & 1)) / 2;
    push_if(out, {row, nq}, cell, spec);
  }
  return out;
}

}  // namespace

std::vector<CellRef> neighbors(const CellRef& cell, const GridSpec& spec) {
  require_in_range(cell, spec);
  std::vector<CellRef> out;
  switch (spec.topology) {
    case Topology::Cartesian:
    case Topology::Polar: {
      push_if(out, {cell.major - 1, cell.minor}, cell, spec);
      push_if(out, {cell.major + 1, cell.minor}, cell, spec);
      if (spec.boundary == Boundary::Wrapping) {
        push_if(out, {cell.major, (cell.minor + spec.minor - 1) % spec.minor}, cell, spec);
        push_if(out, {cell.major, (cell.minor + 1) % spec.minor}, cell, spec);
      } else {
        push_if(out, {cell.major, cell.minor - 1}, cell, spec);
        push_if(out, {cell.major, cell.minor + 1}, cell, spec);
      }
      break;
    }
    case Topology::Hexagonal: out = hex_neighbors(cell, spec); break;
    case Topology::Octagonal:
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if (di != 0 || dj != 0) push_if(out, {cell.major + di, cell.minor + dj}, cell, spec);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool adjacent(const CellRef& a, const CellRef& b, const GridSpec& spec) {
  const auto n = neighbors(a, spec);
  return std::binary_search(n.begin(), n.end(), b);
}

std::pair<int, int> offset(Heading h) {
  switch (h) {
    case Heading::MajorPlus: return {1, 0};
    case Heading::MajorMinus: return {-1, 0};
    case Heading::MinorPlus: return {0, 1};
    case Heading::MinorMinus: return {0, -1};
  }
  return {0, 0};
}

std::optional<CellRef> step(const CellRef& cell, Heading h, const GridSpec& spec) {
  if (spec.topology != Topology::Cartesian && spec.topology != Topology::Polar) {
    throw std::invalid_argument("step is defined for Cartesian and Polar layouts only");
  }
  require_in_range(cell, spec);
  auto [di, dj] = offset(h);
  CellRef next{cell.major + di, cell.minor + dj};
  if (spec.boundary == Boundary::Wrapping && dj != 0) next.minor = (next.minor + spec.minor) % spec.minor;
  if (!in_range(next, spec) || next == cell) return std::nullopt;
  return next;
}

Heading turn_right(Heading h) {
  switch (h) {
    case Heading::MajorMinus: return Heading::MinorPlus;
    case Heading::MinorPlus: return Heading::MajorPlus;
    case Heading::MajorPlus: return Heading::MinorMinus;
    case Heading::MinorMinus: return Heading::MajorMinus;
  }
  return h;
}

Heading turn_left(Heading h) { return turn_right(turn_right(turn_right(h))); }
Heading reverse(Heading h) { return turn_right(turn_right(h)); }

Heading heading_between(const CellRef& from, const CellRef& to, const GridSpec& spec) {
  for (Heading h : {Heading::MajorPlus, Heading::MajorMinus, Heading::MinorPlus, Heading::MinorMinus}) {
    if (auto n = step(from, h, spec); n && *n == to) return h;
  }
  throw std::invalid_argument("cells " + to_string(from) + " and " + to_string(to) + " are not adjacent");
}

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::Cartesian: return "cartesian";
    case Topology::Polar: return "polar";
    case Topology::Hexagonal: return "hexagonal";
    case Topology::Octagonal: return "octagonal";
  }
  return "?";
}

std::string_view to_string(Boundary b) { return b == Boundary::Bounded ? "bounded" : "wrapping"; }

std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::MajorPlus: return "major_plus";
    case Heading::MajorMinus: return "major_minus";
    case Heading::MinorPlus: return "minor_plus";
    case Heading::MinorMinus: return "minor_minus";
  }
  return "?";
}

Topology topology_from_string(std::string_view s) {
  for (Topology t : {Topology::Cartesian, Topology::Polar, Topology::Hexagonal, Topology::Octagonal})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown topology '" + std::string(s) + "'");
}

Boundary boundary_from_string(std::string_view s) {
  if (s == "bounded") return Boundary::Bounded;
  if (s == "wrapping") return Boundary::Wrapping;
  throw std::invalid_argument("unknown boundary '" + std::string(s) + "'");
}

Heading heading_from_string(std::string_view s) {
  for (Heading h : {Heading::MajorPlus, Heading::MajorMinus, Heading::MinorPlus, Heading::MinorMinus})
    if (to_string(h) == s) return h;
  throw std::invalid_argument("unknown heading '" + std::string(s) + "'");
}

std::string to_string(const CellRef& c) {
  return "(" + std::to_string(c.major) + ", " + std::to_string(c.minor) + ")";
}

}  // namespace polarbench
