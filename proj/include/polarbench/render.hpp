#pragma once
// Deterministic SVG rendering of task scenes.
//
// Polar cell (ring i, sector j) is the annular sector between radii
// r0 + i*dr and r0 + (i+1)*dr, spanning angles 90 - j*w down to 90 - (j+1)*w
// degrees (w = 360/minor), i.e. clockwise from 12 o'clock. Glyphs sit upright
// at the mid-radius, mid-angle point of each cell.

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polarbench/topology.hpp"

namespace polarbench {

/// A thick segment along one side of a cell (walls, box borders).
struct EdgeLine {
  CellRef cell;
  Heading side = Heading::MajorMinus;
  double width = 4.0;
  std::string color = "#000000";
};

/// Arrow from the cell anchor pointing along (d_major, d_minor).
struct Arrow {
  CellRef cell;
  int d_major = 0;
  int d_minor = 0;
  std::string color = "#d62728";
};

/// Polyline through consecutive cell anchors.
struct PathTrace {
  std::vector<CellRef> cells;
  std::string color = "#1f77b4";
  double width = 3.0;
};

/// Text placed just outside a cell side (entrance and exit labels).
struct EdgeLabel {
  CellRef cell;
  Heading side = Heading::MajorPlus;
  std::string text;
};

using Overlay = std::variant<EdgeLine, Arrow, PathTrace, EdgeLabel>;

/// Small captioned copy of the grid drawn below the main one (visual options).
struct Panel {
  std::string caption;
  std::map<CellRef, std::string> fills;
};

struct SceneSpec {
  std::string task_id;
  GridSpec grid;
  std::map<CellRef, std::string> cell_fills;   // CSS color tokens
  std::map<CellRef, std::string> cell_glyphs;  // short UTF-8 labels
  std::vector<Overlay> overlays;
  std::vector<Panel> panels;
  int width = 640;
  int height = 640;
  double font_px = 20.0;
  double collision_factor = 1.0;
  bool axis_labels = false;
};

struct SvgDoc {
  std::string bytes;
};

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SvgDoc render_cartesian(const SceneSpec& scene);
SvgDoc render_polar(const SceneSpec& scene);
SvgDoc render_tiling(const SceneSpec& scene);

/// Dispatches on scene.grid.topology.
SvgDoc render(const SceneSpec& scene);

/// Smallest distance between neighboring glyph anchors around `cell`, in px;
/// the anti-collision rule requires font_px * collision_factor to fit in it.
double anchor_spacing(const SceneSpec& scene, const CellRef& cell);

/// Largest font that passes the anti-collision rule for every cell of the
/// scene's grid (independent of which cells carry glyphs).
double max_font_px(const SceneSpec& scene);

/// Formats a coordinate with two decimals, locale independent.
std::string format_px(double v);

}  // namespace polarbench
