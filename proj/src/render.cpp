#include "polarbench/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace polarbench {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kFontFamily = "DejaVu Sans, Arial, sans-serif";

struct Point {
  double x = 0;
  double y = 0;
};

struct Region {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string pt(const Point& p) { return format_px(p.x) + "," + format_px(p.y); }

/// Cell geometry for one grid drawn inside a region of the canvas.
class Layout {
 public:
  explicit Layout(const GridSpec& g) : grid_(g) {}
  virtual ~Layout() = default;

  virtual Point anchor(const CellRef& c) const = 0;
  /// A complete SVG element for the cell outline.
  virtual std::string outline(const CellRef& c, const std::string& fill) const = 0;
  /// Path data for one side of a cell.
  virtual std::string side(const CellRef& c, Heading h) const = 0;
  virtual double spacing(const CellRef& c) const = 0;
  /// Point just outside a cell side, `gap` px away.
  virtual Point outside(const CellRef& c, Heading h, double gap) const = 0;
  /// Anchor displaced toward (d_major, d_minor) by `frac` of a cell.
  virtual Point toward(const CellRef& c, int d_major, int d_minor, double frac) const = 0;
  /// Path data connecting two consecutive trace cells.
  virtual std::string link(const CellRef& a, const CellRef& b) const {
    return "M" + pt(anchor(a)) + " L" + pt(anchor(b));
  }
  virtual void frame(std::ostringstream&) const {}
  virtual void axis_labels(std::ostringstream&, double) const {}

 protected:
  GridSpec grid_;
};

class CartesianLayout final : public Layout {
 public:
  CartesianLayout(const GridSpec& g, const Region& r) : Layout(g) {
    cell_ = std::min(r.w / g.minor, r.h / g.major);
    x0_ = r.x + (r.w - cell_ * g.minor) / 2;
    y0_ = r.y + (r.h - cell_ * g.major) / 2;
  }

  Point anchor(const CellRef& c) const override {
    return {x0_ + (c.minor + 0.5) * cell_, y0_ + (c.major + 0.5) * cell_};
  }

  std::string outline(const CellRef& c, const std::string& fill) const override {
    return "<rect x=\"" + format_px(x0_ + c.minor * cell_) + "\" y=\"" + format_px(y0_ + c.major * cell_) +
           "\" width=\"" + format_px(cell_) + "\" height=\"" + format_px(cell_) + "\" fill=\"" + xml_escape(fill) +
           "\" stroke=\"#444444\" stroke-width=\"1\"/>";
  }

  std::string side(const CellRef& c, Heading h) const override {
    const double l = x0_ + c.minor * cell_, t = y0_ + c.major * cell_, r = l + cell_, b = t + cell_;
    switch (h) {
      case Heading::MajorMinus: return "M" + pt({l, t}) + " L" + pt({r, t});
      case Heading::MajorPlus: return "M" + pt({l, b}) + " L" + pt({r, b});
      case Heading::MinorMinus: return "M" + pt({l, t}) + " L" + pt({l, b});
      case Heading::MinorPlus: return "M" + pt({r, t}) + " L" + pt({r, b});
    }
    return {};
  }

  double spacing(const CellRef&) const override { return cell_; }

  Point outside(const CellRef& c, Heading h, double gap) const override {
    auto [di, dj] = offset(h);
    Point a = anchor(c);
    return {a.x + dj * (cell_ / 2 + gap), a.y + di * (cell_ / 2 + gap)};
  }

  Point toward(const CellRef& c, int d_major, int d_minor, double frac) const override {
    Point a = anchor(c);
    return {a.x + d_minor * frac * cell_, a.y + d_major * frac * cell_};
  }

  std::string link(const CellRef& a, const CellRef& b) const override {
    // A wrapping step leaves through one side edge and re-enters at the other.
    if (a.major == b.major && std::abs(a.minor - b.minor) > 1) {
      const int dir = b.minor < a.minor ? 1 : -1;
      const Point pa = anchor(a), pb = anchor(b);
      const double right = x0_ + grid_.minor * cell_;
      const Point exit{dir > 0 ? right : x0_, pa.y};
      const Point entry{dir > 0 ? x0_ : right, pb.y};
      return "M" + pt(pa) + " L" + pt(exit) + " M" + pt(entry) + " L" + pt(pb);
    }
    return Layout::link(a, b);
  }

  void frame(std::ostringstream& os) const override {
    if (grid_.boundary != Boundary::Wrapping) return;
    // Dashed side edges mark the cyclic column axis.
    const double top = y0_ - 6, bottom = y0_ + grid_.major * cell_ + 6;
    for (double x : {x0_, x0_ + grid_.minor * cell_}) {
      os << "<line x1=\"" << format_px(x) << "\" y1=\"" << format_px(top) << "\" x2=\"" << format_px(x)
         << "\" y2=\"" << format_px(bottom) << "\" stroke=\"#2ca02c\" stroke-width=\"3\" stroke-dasharray=\"6,4\"/>\n";
    }
  }

  void axis_labels(std::ostringstream& os, double font) const override {
    for (int i = 0; i < grid_.major; ++i) {
      Point p = outside({i, 0}, Heading::MinorMinus, font * 0.9);
      os << text(p, std::to_string(i), font);
    }
    for (int j = 0; j < grid_.minor; ++j) {
      Point p = outside({0, j}, Heading::MajorMinus, font * 0.9);
      os << text(p, std::to_string(j), font);
    }
  }

  static std::string text(const Point& p, const std::string& s, double font) {
    return "<text x=\"" + format_px(p.x) + "\" y=\"" + format_px(p.y) + "\" font-size=\"" + format_px(font) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"" + kFontFamily +
           "\" fill=\"#555555\">" + xml_escape(s) + "</text>\n";
  }

 private:
  double cell_ = 0, x0_ = 0, y0_ = 0;
};

class PolarLayout final : public Layout {
 public:
  PolarLayout(const GridSpec& g, const Region& r) : Layout(g) {
    cx_ = r.x + r.w / 2;
    cy_ = r.y + r.h / 2;
    outer_ = std::min(r.w, r.h) / 2;
    inner_ = g.inner_radius_ratio * outer_;
    dr_ = (outer_ - inner_) / g.major;
    sweep_ = 360.0 / g.minor;
  }

  double radius(int ring) const { return inner_ + ring * dr_; }
  double start_angle(int sector) const { return 90.0 - sector * sweep_; }

  Point polar(double r, double deg) const {
    const double t = deg * kPi / 180.0;
    return {cx_ + r * std::cos(t), cy_ - r * std::sin(t)};
  }

  Point anchor(const CellRef& c) const override {
    return polar(inner_ + (c.major + 0.5) * dr_, start_angle(c.minor) - 0.5 * sweep_);
  }

  std::string arc(double r, double from_deg, double to_deg, bool clockwise) const {
    const Point p = polar(r, to_deg);
    const bool large = std::abs(to_deg - from_deg) > 180.0;
    return "A" + format_px(r) + "," + format_px(r) + " 0 " + (large ? "1" : "0") + "," + (clockwise ? "1" : "0") +
           " " + pt(p);
  }

  std::string outline(const CellRef& c, const std::string& fill) const override {
    const double r_in = radius(c.major), r_out = radius(c.major + 1);
    const double a0 = start_angle(c.minor), a1 = start_angle(c.minor + 1);
    std::string d = "M" + pt(polar(r_out, a0)) + " " + arc(r_out, a0, a1, true) + " L" + pt(polar(r_in, a1)) + " " +
                    arc(r_in, a1, a0, false) + " Z";
    return "<path d=\"" + d + "\" fill=\"" + xml_escape(fill) + "\" stroke=\"#444444\" stroke-width=\"1\"/>";
  }

  std::string side(const CellRef& c, Heading h) const override {
    const double r_in = radius(c.major), r_out = radius(c.major + 1);
    const double a0 = start_angle(c.minor), a1 = start_angle(c.minor + 1);
    switch (h) {
      case Heading::MajorMinus: return "M" + pt(polar(r_in, a0)) + " " + arc(r_in, a0, a1, true);
      case Heading::MajorPlus: return "M" + pt(polar(r_out, a0)) + " " + arc(r_out, a0, a1, true);
      case Heading::MinorMinus: return "M" + pt(polar(r_in, a0)) + " L" + pt(polar(r_out, a0));
      case Heading::MinorPlus: return "M" + pt(polar(r_in, a1)) + " L" + pt(polar(r_out, a1));
    }
    return {};
  }

  double spacing(const CellRef& c) const override {
    const double r_mid = inner_ + (c.major + 0.5) * dr_;
    return std::min(dr_, r_mid * sweep_ * kPi / 180.0);
  }

  Point outside(const CellRef& c, Heading h, double gap) const override {
    const double r_mid = inner_ + (c.major + 0.5) * dr_;
    const double a_mid = start_angle(c.minor) - 0.5 * sweep_;
    switch (h) {
      case Heading::MajorPlus: return polar(radius(c.major + 1) + gap, a_mid);
      case Heading::MajorMinus: return polar(std::max(0.0, radius(c.major) - gap), a_mid);
      case Heading::MinorMinus: return polar(r_mid, start_angle(c.minor) + gap / r_mid * 180.0 / kPi);
      case Heading::MinorPlus: return polar(r_mid, start_angle(c.minor + 1) - gap / r_mid * 180.0 / kPi);
    }
    return anchor(c);
  }

  Point toward(const CellRef& c, int d_major, int d_minor, double frac) const override {
    const double r_mid = inner_ + (c.major + 0.5) * dr_ + d_major * frac * dr_;
    const double a_mid = start_angle(c.minor) - (0.5 + d_minor * frac) * sweep_;
    return polar(r_mid, a_mid);
  }

  std::string link(const CellRef& a, const CellRef& b) const override {
    if (a.major != b.major) return Layout::link(a, b);
    // Angular step: follow the ring along its mid radius.
    int delta = b.minor - a.minor;
    if (delta > grid_.minor / 2) delta -= grid_.minor;
    if (delta < -grid_.minor / 2) delta += grid_.minor;
    const double r_mid = inner_ + (a.major + 0.5) * dr_;
    const double from = start_angle(a.minor) - 0.5 * sweep_;
    const double to = from - delta * sweep_;
    return "M" + pt(anchor(a)) + " " + arc(r_mid, from, to, delta > 0);
  }

  void frame(std::ostringstream& os) const override {
    if (grid_.boundary != Boundary::Bounded) return;
    // The 12 o'clock seam is a barrier under the bounded condition.
    const Point a = polar(inner_, 90.0), b = polar(outer_, 90.0);
    os << "<line x1=\"" << format_px(a.x) << "\" y1=\"" << format_px(a.y) << "\" x2=\"" << format_px(b.x)
       << "\" y2=\"" << format_px(b.y) << "\" stroke=\"#000000\" stroke-width=\"5\"/>\n";
  }

  void axis_labels(std::ostringstream& os, double font) const override {
    for (int j = 0; j < grid_.minor; ++j) {
      os << CartesianLayout::text(polar(outer_ + font * 0.9, start_angle(j) - 0.5 * sweep_), std::to_string(j), font);
    }
    for (int i = 0; i < grid_.major; ++i) {
      const Point p = polar(inner_ + (i + 0.5) * dr_, 90.0);
      os << CartesianLayout::text({p.x - font * 0.7, p.y}, std::to_string(i), font);
    }
  }

 private:
  double cx_ = 0, cy_ = 0, outer_ = 0, inner_ = 0, dr_ = 0, sweep_ = 0;
};

class HexLayout final : public Layout {
 public:
  HexLayout(const GridSpec& g, const Region& r) : Layout(g) {
    const double w_units = 1.5 * (g.minor - 1) + 2.0;
    const double h_units = std::sqrt(3.0) * (g.major + (g.minor > 1 ? 0.5 : 0.0));
    size_ = std::min(r.w / w_units, r.h / h_units);
    x0_ = r.x + (r.w - size_ * w_units) / 2 + size_;
    y0_ = r.y + (r.h - size_ * h_units) / 2 + size_ * std::sqrt(3.0) / 2;
  }

  Point anchor(const CellRef& c) const override {
    return {x0_ + size_ * 1.5 * c.minor, y0_ + size_ * std::sqrt(3.0) * (c.major + 0.5 * (c.minor & 1))};
  }

  std::string outline(const CellRef& c, const std::string& fill) const override {
    const Point a = anchor(c);
    std::string d;
    for (int k = 0; k < 6; ++k) {
      const double t = k * kPi / 3.0;
      d += (k == 0 ? "M" : " L") + pt({a.x + size_ * std::cos(t), a.y + size_ * std::sin(t)});
    }
    return "<path d=\"" + d + " Z\" fill=\"" + xml_escape(fill) + "\" stroke=\"#444444\" stroke-width=\"1\"/>";
  }

  std::string side(const CellRef&, Heading) const override { return {}; }
  double spacing(const CellRef&) const override { return size_ * std::sqrt(3.0); }
  Point outside(const CellRef& c, Heading, double) const override { return anchor(c); }
  Point toward(const CellRef& c, int, int, double) const override { return anchor(c); }

 private:
  double size_ = 0, x0_ = 0, y0_ = 0;
};

class OctLayout final : public Layout {
 public:
  OctLayout(const GridSpec& g, const Region& r) : Layout(g) {
    pitch_ = std::min(r.w / g.minor, r.h / g.major);
    side_ = pitch_ / (1.0 + std::sqrt(2.0));
    x0_ = r.x + (r.w - pitch_ * g.minor) / 2;
    y0_ = r.y + (r.h - pitch_ * g.major) / 2;
  }

  Point anchor(const CellRef& c) const override {
    return {x0_ + (c.minor + 0.5) * pitch_, y0_ + (c.major + 0.5) * pitch_};
  }

  std::string outline(const CellRef& c, const std::string& fill) const override {
    const Point a = anchor(c);
    const double h = pitch_ / 2, s = side_ / 2;
    const Point v[8] = {{a.x - s, a.y - h}, {a.x + s, a.y - h}, {a.x + h, a.y - s}, {a.x + h, a.y + s},
                        {a.x + s, a.y + h}, {a.x - s, a.y + h}, {a.x - h, a.y + s}, {a.x - h, a.y - s}};
    std::string d;
    for (int k = 0; k < 8; ++k) d += (k == 0 ? "M" : " L") + pt(v[k]);
    return "<path d=\"" + d + " Z\" fill=\"" + xml_escape(fill) + "\" stroke=\"#444444\" stroke-width=\"1\"/>";
  }

  /// Small square filling the gap where four octagons meet.
  std::string gap_square(int i, int j) const {
    const Point p{x0_ + (j + 1) * pitch_, y0_ + (i + 1) * pitch_};
    const double c = (pitch_ - side_) / 2;
    return "<path d=\"M" + pt({p.x - c, p.y}) + " L" + pt({p.x, p.y - c}) + " L" + pt({p.x + c, p.y}) + " L" +
           pt({p.x, p.y + c}) + " Z\" fill=\"#dddddd\" stroke=\"#444444\" stroke-width=\"1\"/>";
  }

  std::string side(const CellRef&, Heading) const override { return {}; }
  double spacing(const CellRef&) const override { return pitch_; }
  Point outside(const CellRef& c, Heading, double) const override { return anchor(c); }
  Point toward(const CellRef& c, int, int, double) const override { return anchor(c); }

 private:
  double pitch_ = 0, side_ = 0, x0_ = 0, y0_ = 0;
};

std::unique_ptr<Layout> make_layout(const GridSpec& g, const Region& r) {
  switch (g.topology) {
    case Topology::Cartesian: return std::make_unique<CartesianLayout>(g, r);
    case Topology::Polar: return std::make_unique<PolarLayout>(g, r);
    case Topology::Hexagonal: return std::make_unique<HexLayout>(g, r);
    case Topology::Octagonal: return std::make_unique<OctLayout>(g, r);
  }
  throw std::invalid_argument("unknown topology");
}

bool needs_outer_margin(const SceneSpec& s) {
  if (s.axis_labels) return true;
  return std::any_of(s.overlays.begin(), s.overlays.end(),
                     [](const Overlay& o) { return std::holds_alternative<EdgeLabel>(o); });
}

Region main_region(const SceneSpec& s) {
  const double margin = needs_outer_margin(s) ? std::max(36.0, s.font_px * 1.8) : 12.0;
  const double h = s.panels.empty() ? s.height : s.height * 0.62;
  return {margin, margin, s.width - 2 * margin, h - 2 * margin};
}

std::string text_element(const Point& p, const std::string& s, double font, const std::string& fill = "#000000") {
  return "<text x=\"" + format_px(p.x) + "\" y=\"" + format_px(p.y) + "\" font-size=\"" + format_px(font) +
         "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"" + kFontFamily + "\" fill=\"" +
         fill + "\">" + xml_escape(s) + "</text>\n";
}

void check_scene(const SceneSpec& s) {
  validate(s.grid);
  if (s.width <= 0 || s.height <= 0) throw std::invalid_argument("canvas must be positive");
  if (!(s.font_px > 0) || !(s.collision_factor > 0)) throw std::invalid_argument("font and collision factor must be positive");
  for (const auto& [c, _] : s.cell_fills) require_in_range(c, s.grid);
  for (const auto& [c, _] : s.cell_glyphs) require_in_range(c, s.grid);
}

SvgDoc emit(const SceneSpec& s) {
  check_scene(s);
  const auto layout = make_layout(s.grid, main_region(s));

  for (const auto& [cell, glyph] : s.cell_glyphs) {
    if (glyph.empty()) continue;
    const double room = layout->spacing(cell);
    if (s.font_px * s.collision_factor > room) {
      std::string msg = "glyph at cell " + to_string(cell) + " needs " + format_px(s.font_px * s.collision_factor) +
                        " px but only " + format_px(room) + " px are available";
      if (s.grid.topology == Topology::Polar) msg += "; increase inner_radius_ratio or reduce font_px";
      throw RenderError(msg);
    }
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << s.width << "\" height=\"" << s.height
     << "\" viewBox=\"0 0 " << s.width << " " << s.height << "\" style=\"background-color:#ffffff\">\n";

  const bool has_arrows = std::any_of(s.overlays.begin(), s.overlays.end(),
                                      [](const Overlay& o) { return std::holds_alternative<Arrow>(o); });
  if (has_arrows) {
    os << "<defs><marker id=\"arrowhead\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" "
          "orient=\"auto\"><polygon points=\"0,0 8,4 0,8\" fill=\"context-stroke\"/></marker></defs>\n";
  }

  os << "<g id=\"cells\">\n";
  for (const auto& c : all_cells(s.grid)) {
    auto it = s.cell_fills.find(c);
    os << layout->outline(c, it == s.cell_fills.end() ? "#ffffff" : it->second) << "\n";
  }
  if (s.grid.topology == Topology::Octagonal) {
    const auto* oct = static_cast<const OctLayout*>(layout.get());
    for (int i = 0; i + 1 < s.grid.major; ++i)
      for (int j = 0; j + 1 < s.grid.minor; ++j) os << oct->gap_square(i, j) << "\n";
  }
  os << "</g>\n";

  os << "<g id=\"frame\">\n";
  layout->frame(os);
  os << "</g>\n";

  if (!s.overlays.empty()) {
    os << "<g id=\"overlays\">\n";
    for (const auto& o : s.overlays) {
      if (const auto* e = std::get_if<EdgeLine>(&o)) {
        require_in_range(e->cell, s.grid);
        os << "<path d=\"" << layout->side(e->cell, e->side) << "\" fill=\"none\" stroke=\"" << xml_escape(e->color)
           << "\" stroke-width=\"" << format_px(e->width) << "\" stroke-linecap=\"round\"/>\n";
      } else if (const auto* a = std::get_if<Arrow>(&o)) {
        require_in_range(a->cell, s.grid);
        const Point from = layout->toward(a->cell, a->d_major, a->d_minor, -0.25);
        const Point to = layout->toward(a->cell, a->d_major, a->d_minor, 0.3);
        os << "<line x1=\"" << format_px(from.x) << "\" y1=\"" << format_px(from.y) << "\" x2=\"" << format_px(to.x)
           << "\" y2=\"" << format_px(to.y) << "\" stroke=\"" << xml_escape(a->color)
           << "\" stroke-width=\"3\" marker-end=\"url(#arrowhead)\"/>\n";
      } else if (const auto* p = std::get_if<PathTrace>(&o)) {
        std::string d;
        for (size_t k = 0; k + 1 < p->cells.size(); ++k) {
          require_in_range(p->cells[k], s.grid);
          require_in_range(p->cells[k + 1], s.grid);
          d += (d.empty() ? "" : " ") + layout->link(p->cells[k], p->cells[k + 1]);
        }
        if (!d.empty()) {
          os << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << xml_escape(p->color) << "\" stroke-width=\""
             << format_px(p->width) << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" opacity=\"0.8\"/>\n";
        }
      } else if (const auto* l = std::get_if<EdgeLabel>(&o)) {
        require_in_range(l->cell, s.grid);
        os << text_element(layout->outside(l->cell, l->side, s.font_px * 0.8), l->text, s.font_px, "#9467bd");
      }
    }
    os << "</g>\n";
  }

  os << "<g id=\"glyphs\">\n";
  for (const auto& [cell, glyph] : s.cell_glyphs) {
    if (!glyph.empty()) os << text_element(layout->anchor(cell), glyph, s.font_px);
  }
  os << "</g>\n";

  if (s.axis_labels) {
    os << "<g id=\"axes\">\n";
    layout->axis_labels(os, std::max(10.0, std::min(14.0, s.font_px * 0.7)));
    os << "</g>\n";
  }

  if (!s.panels.empty()) {
    os << "<g id=\"panels\">\n";
    const double top = s.height * 0.62;
    const double pw = static_cast<double>(s.width) / static_cast<double>(s.panels.size());
    const double caption = std::min(24.0, s.height * 0.05);
    for (size_t k = 0; k < s.panels.size(); ++k) {
      const Region r{k * pw + 8, top + 4, pw - 16, s.height - top - caption - 16};
      const auto pl = make_layout(s.grid, r);
      for (const auto& c : all_cells(s.grid)) {
        auto it = s.panels[k].fills.find(c);
        os << pl->outline(c, it == s.panels[k].fills.end() ? "#ffffff" : it->second) << "\n";
      }
      pl->frame(os);
      os << text_element({k * pw + pw / 2, s.height - caption / 2 - 6}, s.panels[k].caption, caption);
    }
    os << "</g>\n";
  }

  os << "</svg>\n";
  return {os.str()};
}

}  // namespace

std::string format_px(double v) {
  if (!std::isfinite(v)) throw RenderError("non-finite coordinate");
  double r = std::round(v * 100.0) / 100.0;
  if (r == 0.0) r = 0.0;  // no "-0.00"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, r, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

SvgDoc render_cartesian(const SceneSpec& scene) {
  if (scene.grid.topology != Topology::Cartesian) throw std::invalid_argument("render_cartesian needs a Cartesian grid");
  return emit(scene);
}

SvgDoc render_polar(const SceneSpec& scene) {
  if (scene.grid.topology != Topology::Polar) throw std::invalid_argument("render_polar needs a Polar grid");
  return emit(scene);
}

SvgDoc render_tiling(const SceneSpec& scene) {
  if (scene.grid.topology != Topology::Hexagonal && scene.grid.topology != Topology::Octagonal) {
    throw std::invalid_argument("render_tiling needs a Hexagonal or Octagonal grid");
  }
  if (scene.task_id != "word_search") {
    throw RenderError("unsupported layout: " + std::string(to_string(scene.grid.topology)) +
                      " tilings are only available for word_search, not '" + scene.task_id + "'");
  }
  return emit(scene);
}

SvgDoc render(const SceneSpec& scene) {
  switch (scene.grid.topology) {
    case Topology::Cartesian: return render_cartesian(scene);
    case Topology::Polar: return render_polar(scene);
    default: return render_tiling(scene);
  }
}

double anchor_spacing(const SceneSpec& scene, const CellRef& cell) {
  validate(scene.grid);
  require_in_range(cell, scene.grid);
  return make_layout(scene.grid, main_region(scene))->spacing(cell);
}

double max_font_px(const SceneSpec& scene) {
  validate(scene.grid);
  const auto layout = make_layout(scene.grid, main_region(scene));
  double room = 1e9;
  for (const auto& c : all_cells(scene.grid)) room = std::min(room, layout->spacing(c));
  return room / scene.collision_factor;
}

}  // namespace polarbench
