#include <cmath>

#include "doctest.h"
#include "polarbench/render.hpp"
#include "polarbench/rng.hpp"
#include "polarbench/taskgen.hpp"
#include "testing.hpp"

using namespace polarbench;
using testing::count_substr;
using testing::svg_group;
using testing::svg_texts;

namespace {

SceneSpec scene(Topology t, int major, int minor, Boundary b = Boundary::Bounded) {
  SceneSpec s;
  s.task_id = t == Topology::Hexagonal || t == Topology::Octagonal ? "word_search" : "test";
  s.grid.topology = t;
  s.grid.major = major;
  s.grid.minor = minor;
  s.grid.boundary = b;
  return s;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("smallest cartesian scene") {
  auto s = scene(Topology::Cartesian, 1, 1);
  s.cell_glyphs[{0, 0}] = "A";
  const auto svg = render(s).bytes;
  CHECK(count_substr(svg, "<rect") == 1u);
  CHECK(count_substr(svg, "<text") == 1u);
  CHECK(svg_texts(svg).at(0).body == "A");
}

TEST_CASE("render is deterministic") {
  auto s = scene(Topology::Polar, 3, 8, Boundary::Wrapping);
  s.cell_glyphs[{1, 2}] = "Q";
  s.cell_fills[{0, 0}] = "#ff0000";
  s.overlays.push_back(Arrow{{2, 3}, 0, 1});
  s.overlays.push_back(PathTrace{{{0, 0}, {0, 1}, {1, 1}}});
  s.axis_labels = true;
  CHECK(render(s).bytes == render(s).bytes);
  const auto copy = s;
  CHECK(render(copy).bytes == render(s).bytes);
}

TEST_CASE("cartesian fills are emitted row-major") {
  auto s = scene(Topology::Cartesian, 3, 4);
  for (const auto& c : all_cells(s.grid)) s.cell_fills[c] = c.minor % 2 ? "#cccccc" : "#333333";
  const auto cells = svg_group(render(s).bytes, "cells");
  CHECK(count_substr(cells, "<rect") == 12u);
  size_t pos = 0;
  double last_key = -1;
  const std::regex re(R"re(<rect x="([0-9.]+)" y="([0-9.]+)")re");
  for (std::sregex_iterator it(cells.begin(), cells.end(), re), end; it != end; ++it) {
    const double key = std::stod((*it)[2]) * 10000 + std::stod((*it)[1]);
    CHECK(key > last_key);
    last_key = key;
    ++pos;
  }
  CHECK(pos == 12u);
}

TEST_CASE("one ring of four sectors gives four closed arc paths") {
  const auto svg = render(scene(Topology::Polar, 1, 4)).bytes;
  const auto cells = svg_group(svg, "cells");
  CHECK(count_substr(cells, "<path") == 4u);
  CHECK(count_substr(cells, " Z\"") == 4u);
  CHECK(count_substr(cells, "A") >= 8u);
  CHECK(count_substr(svg, "<text") == 0u);
}

TEST_CASE("same inner radius ratio renders identically") {
  auto a = scene(Topology::Polar, 2, 6);
  auto b = a;
  a.grid.inner_radius_ratio = 0.3;
  b.grid.inner_radius_ratio = 0.3;
  CHECK(render(a).bytes == render(b).bytes);
  b.grid.inner_radius_ratio = 0.35;
  CHECK(render(a).bytes != render(b).bytes);
}

TEST_CASE("polar glyph sits at the analytic centroid of its cell") {
  auto s = scene(Topology::Polar, 4, 12);
  s.font_px = 10;
  s.cell_glyphs[{0, 0}] = "X";
  const auto svg = render(s).bytes;

  // Radii from the arc commands of cell (0,0): outer arc first, inner second.
  const std::regex arc_re(R"re(A([0-9.]+),([0-9.]+) )re");
  const auto cells = svg_group(svg, "cells");
  const auto first_path = cells.substr(0, cells.find("/>"));
  std::vector<double> radii;
  for (std::sregex_iterator it(first_path.begin(), first_path.end(), arc_re), end; it != end; ++it)
    radii.push_back(std::stod((*it)[1]));
  REQUIRE(radii.size() == 2u);
  const double r1 = radii[0], r0 = radii[1];
  const double dr = r1 - r0;
  // The bounded seam is a radial line at 12 o'clock from r0 to the outer radius.
  const std::regex line_re(R"re(<line x1="([0-9.]+)" y1="([0-9.]+)" x2="([0-9.]+)" y2="([0-9.]+)")re");
  const auto frame = svg_group(svg, "frame");
  std::smatch m;
  REQUIRE(std::regex_search(frame, m, line_re));
  const double cx = std::stod(m[1]);
  const double cy = std::stod(m[2]) + r0;
  const double outer = cy - std::stod(m[4]);
  CHECK(std::stod(m[3]) == doctest::Approx(cx));
  CHECK(r0 / outer == doctest::Approx(s.grid.inner_radius_ratio).epsilon(1e-3));
  CHECK(r0 + 4 * dr == doctest::Approx(outer).epsilon(1e-3));

  const double radius = r0 + 0.5 * dr;
  const double angle = (90.0 - 0.5 * (360.0 / 12)) * kPi / 180.0;
  const auto texts = svg_texts(svg_group(svg, "glyphs"));
  REQUIRE(texts.size() == 1u);
  CHECK(texts[0].x == doctest::Approx(cx + radius * std::cos(angle)).epsilon(1e-4));
  CHECK(texts[0].y == doctest::Approx(cy - radius * std::sin(angle)).epsilon(1e-4));
  // Clockwise from 12 o'clock: sector 0 lies right of the vertical axis, above center.
  CHECK(texts[0].x > cx);
  CHECK(texts[0].y < cy);
}

TEST_CASE("single hexagon with one glyph") {
  auto s = scene(Topology::Hexagonal, 1, 1);
  s.cell_glyphs[{0, 0}] = "W";
  const auto svg = render(s).bytes;
  CHECK(count_substr(svg_group(svg, "cells"), "<path") == 1u);
  CHECK(count_substr(svg, "<text") == 1u);
  CHECK(render(s).bytes == svg);
}

TEST_CASE("hex flower neighbors are equidistant from the center") {
  auto s = scene(Topology::Hexagonal, 3, 3);
  s.font_px = 12;
  const CellRef center{1, 1};
  s.cell_glyphs[center] = "C";
  const auto nb = neighbors(center, s.grid);
  REQUIRE(nb.size() == 6u);
  for (const auto& n : nb) s.cell_glyphs[n] = "N";
  const auto texts = svg_texts(svg_group(render(s).bytes, "glyphs"));
  REQUIRE(texts.size() == 7u);
  const auto c = std::find_if(texts.begin(), texts.end(), [](const auto& t) { return t.body == "C"; });
  REQUIRE(c != texts.end());
  std::vector<double> dist;
  for (const auto& t : texts)
    if (t.body == "N") dist.push_back(std::hypot(t.x - c->x, t.y - c->y));
  for (double d : dist) CHECK(d == doctest::Approx(dist[0]).epsilon(1e-3));

  // Cells that are not neighbors are farther away.
  const auto svg_all = [&] {
    auto all = s;
    all.cell_glyphs.clear();
    for (const auto& cell : all_cells(all.grid)) all.cell_glyphs[cell] = cell == center ? "C" : "N";
    return svg_texts(svg_group(render(all).bytes, "glyphs"));
  }();
  int near = 0;
  for (const auto& t : svg_all)
    if (t.body == "N" && std::hypot(t.x - c->x, t.y - c->y) < dist[0] * 1.01) ++near;
  CHECK(near == 6);
}

TEST_CASE("octagon tiling renders gap squares between octagons") {
  auto s = scene(Topology::Octagonal, 3, 4);
  const auto cells = svg_group(render(s).bytes, "cells");
  CHECK(count_substr(cells, "<path") == 12u + 2u * 3u);
}

TEST_CASE("anti-collision rule") {
  auto s = scene(Topology::Polar, 6, 12);
  s.cell_glyphs[{0, 0}] = "M";
  s.font_px = max_font_px(s) + 0.5;
  CHECK_THROWS_WITH_AS(render(s), doctest::Contains("inner_radius_ratio"), RenderError);
  s.font_px = max_font_px(s);
  CHECK_NOTHROW(render(s));
  // Larger inner radius leaves more room near the center when sectors are narrow.
  auto narrow = scene(Topology::Polar, 2, 24);
  auto roomy = narrow;
  roomy.grid.inner_radius_ratio = 0.4;
  CHECK(anchor_spacing(roomy, {0, 0}) > anchor_spacing(narrow, {0, 0}));
}

TEST_CASE("adjacent glyph anchors never closer than the font allows") {
  polarbench::Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Topology t = rng.pick(std::vector<Topology>{Topology::Cartesian, Topology::Polar});
    auto s = scene(t, rng.uniform_int(2, 8), rng.uniform_int(4, 12));
    s.grid.inner_radius_ratio = 0.2 + 0.05 * rng.uniform_int(0, 4);
    s.font_px = std::floor(max_font_px(s) * 2) / 2;
    for (const auto& c : all_cells(s.grid)) s.cell_glyphs[c] = "W";
    const auto texts = svg_texts(svg_group(render(s).bytes, "glyphs"));
    REQUIRE(texts.size() == static_cast<size_t>(s.grid.cell_count()));
    double nearest = 1e9;
    for (size_t i = 0; i < texts.size(); ++i)
      for (size_t j = i + 1; j < texts.size(); ++j)
        nearest = std::min(nearest, std::hypot(texts[i].x - texts[j].x, texts[i].y - texts[j].y));
    CHECK(nearest >= 0.8 * s.font_px);
  }
}

TEST_CASE("generated pairs share one glyph size across layouts") {
  GenConfig cfg;
  for (const char* id : {"word_search", "letter_collection", "sudoku", "monotonic_path"}) {
    for (uint64_t seed = 0; seed < 4; ++seed) {
      const auto pair = generate_pair(find_task(id), seed, cfg);
      const auto c = svg_texts(svg_group(pair.cartesian.svg, "glyphs"));
      const auto p = svg_texts(svg_group(pair.polar.svg, "glyphs"));
      REQUIRE_FALSE(c.empty());
      REQUIRE_FALSE(p.empty());
      CHECK(c[0].font == p[0].font);
      CHECK(c[0].font >= 9.0);
      for (const auto& t : p) CHECK(t.font == p[0].font);
    }
  }
}

TEST_CASE("format_px is fixed two-decimal") {
  CHECK(format_px(1.0) == "1.00");
  CHECK(format_px(-0.004) == "0.00");
  CHECK(format_px(12.346) == "12.35");
}
