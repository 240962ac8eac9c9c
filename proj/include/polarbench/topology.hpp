#pragma once
// Dual-topology lattice: cell indexing, adjacency and single-step moves for
// Cartesian, Polar, Hexagonal and Octagonal layouts.
//
// Cells are addressed by (major, minor). In Cartesian layouts major is the
// row (0 at the top) and minor the column (0 at the left). In Polar layouts
// major is the ring (0 innermost) and minor the sector (0 starts at 12
// o'clock, increasing clockwise). Hexagonal layouts store flat-top hexes in
// odd-column offset order; Octagonal layouts are the octagon cells of a
// truncated-square tiling.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarbench {

enum class Topology { Cartesian, Polar, Hexagonal, Octagonal };
enum class Boundary { Bounded, Wrapping };

struct GridSpec {
  Topology topology = Topology::Cartesian;
  int major = 1;
  int minor = 1;
  Boundary boundary = Boundary::Bounded;
  double inner_radius_ratio = 0.25;  // Polar rendering only

  int cell_count() const { return major * minor; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct CellRef {
  int major = 0;
  int minor = 0;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

enum class Heading { MajorPlus, MajorMinus, MinorPlus, MinorMinus };

/// Throws std::invalid_argument when the spec breaks a lattice invariant.
void validate(const GridSpec& spec);

bool in_range(const CellRef& cell, const GridSpec& spec);

/// Throws std::out_of_range naming the cell and the grid dimensions.
void require_in_range(const CellRef& cell, const GridSpec& spec);

/// Row-major index of a cell; the inverse is cell_at.
int linear_index(const CellRef& cell, const GridSpec& spec);
CellRef cell_at(int index, const GridSpec& spec);

/// All cells in row-major order.
std::vector<CellRef> all_cells(const GridSpec& spec);

/// Maps a Cartesian cell to its Polar image (row -> ring, column -> sector)
/// and a Polar cell back to Cartesian. Indices are preserved.
CellRef map_cell(const CellRef& cell, const GridSpec& spec);

/// The spec of the counterpart layout (Cartesian <-> Polar), same dimensions
/// and boundary.
GridSpec mapped_spec(const GridSpec& spec);

/// Neighbors in ascending order, without duplicates and never the cell
/// itself.
std::vector<CellRef> neighbors(const CellRef& cell, const GridSpec& spec);

bool adjacent(const CellRef& a, const CellRef& b, const GridSpec& spec);

/// One-cell move; std::nullopt means the move is blocked by a bounded edge.
/// Defined for Cartesian and Polar layouts only.
std::optional<CellRef> step(const CellRef& cell, Heading h, const GridSpec& spec);

/// Clockwise quarter turn: MajorMinus -> MinorPlus -> MajorPlus -> MinorMinus.
Heading turn_right(Heading h);
Heading turn_left(Heading h);
Heading reverse(Heading h);

/// Index-convention right-hand side of a heading (right of MinorPlus is
/// MajorPlus, right of MajorPlus is MinorMinus).
inline Heading right_of(Heading h) { return turn_right(h); }

/// (d_major, d_minor) unit offset of a heading.
std::pair<int, int> offset(Heading h);

/// Heading that moves from `from` to the adjacent cell `to` (wrapping the
/// minor axis when the spec wraps). Throws std::invalid_argument otherwise.
Heading heading_between(const CellRef& from, const CellRef& to, const GridSpec& spec);

std::string_view to_string(Topology t);
std::string_view to_string(Boundary b);
std::string_view to_string(Heading h);
Topology topology_from_string(std::string_view s);
Boundary boundary_from_string(std::string_view s);
Heading heading_from_string(std::string_view s);

std::string to_string(const CellRef& c);

}  // namespace polarbench
