#include "sysw/render.hpp"

#include "sysw/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace sysw {

namespace {

const char* const kPalette[] = {"#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#117a65"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  void add(Vec2 p) {
    x0 = std::min(x0, p.x), y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x), y1 = std::max(y1, p.y);
  }
};

// Maps developed coordinates into a panel, y pointing up.
struct Panel {
  double ox, oy, scale;
  Box box;
  Vec2 at(Vec2 p) const { return {ox + (p.x - box.x0) * scale, oy + (box.y1 - p.y) * scale}; }
};

Box development_box(const ConeSurface& s) {
  Box b;
  const auto& dev = s.tree_development();
  for (int t = 0; t < s.num_triangles(); t++)
    for (Vec2 c : s.chart(t)) b.add(dev[t].apply(c));
  return b;
}

Panel fit(const Box& box, double ox, double oy, double size) {
  double span = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-12});
  return {ox, oy, size / span, box};
}

void draw_triangles(std::string& out, const ConeSurface& s, const Panel& p, const char* stroke) {
  const auto& dev = s.tree_development();
  for (int t = 0; t < s.num_triangles(); t++) {
    out += "<polygon fill=\"#f4f6f7\" stroke=\"";
    out += stroke;
    out += "\" stroke-width=\"0.5\" points=\"";
    for (int k = 0; k < 3; k++) {
      Vec2 q = p.at(dev[t].apply(s.chart(t)[k]));
      out += num(q.x) + "," + num(q.y) + (k < 2 ? " " : "");
    }
    out += "\"/>\n";
  }
}

void draw_marks(std::string& out, const ConeSurface& s, const Panel& p) {
  const auto& dev = s.tree_development();
  for (int i = 0; i < static_cast<int>(s.marked_corners().size()); i++) {
    CornerRef c = s.marked_corners()[i];
    Vec2 q = p.at(dev[c.tri].apply(s.chart(c.tri)[c.corner]));
    out += "<circle cx=\"" + num(q.x) + "\" cy=\"" + num(q.y) + "\" r=\"3\" fill=\"#17202a\"/>\n";
    out += "<text x=\"" + num(q.x + 4) + "\" y=\"" + num(q.y - 4) + "\" font-size=\"10\">x" + std::to_string(i + 1) +
           "</text>\n";
  }
}

void draw_path(std::string& out, const ConeSurface& s, const Panel& p, const GeodesicPath& path, const char* color) {
  const auto& dev = s.tree_development();
  for (const PathSegment& seg : path.segments) {
    Vec2 a = p.at(dev[seg.tri].apply(seg.entry)), b = p.at(dev[seg.tri].apply(seg.exit));
    out += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
           "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
  }
}

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

} // namespace

std::string development_svg(const ConeSurface& s, const std::vector<GeodesicPath>& paths, double width) {
  if (!(width > 0.)) throw InputError("development_svg: width must be positive");
  const double margin = 16.;
  Box box = development_box(s);
  Panel p = fit(box, margin, margin, width - 2. * margin);
  double height = (box.y1 - box.y0) * p.scale + 2. * margin;
  std::string out = header(width, height);
  draw_triangles(out, s, p, "#aab7b8");
  for (size_t k = 0; k < paths.size(); k++) draw_path(out, s, p, paths[k], kPalette[k % 6]);
  draw_marks(out, s, p);
  return out + "</svg>\n";
}

std::string sweepout_svg(const ConeSurface& sphere, const SweepOut& sweepout, int max_frames, double panel_width) {
  if (max_frames < 1 || !(panel_width > 0.)) throw InputError("sweepout_svg: need at least one frame of positive width");
  const int n = static_cast<int>(sweepout.frames.size());
  std::vector<int> picks;
  if (n <= max_frames) {
    for (int k = 0; k < n; k++) picks.push_back(k);
  } else {
    for (int k = 0; k < max_frames; k++) picks.push_back(max_frames == 1 ? 0 : static_cast<int>(std::lround(k * (n - 1.) / (max_frames - 1.))));
  }
  const double margin = 12., label = 18.;
  Box box = development_box(sphere);
  double inner = panel_width - 2. * margin;
  double panel_height = (box.y1 - box.y0) / std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-12}) * inner + 2. * margin + label;
  double width = panel_width * std::max<size_t>(picks.size(), 1);
  std::string out = header(width, panel_height + label);
  out += "<text x=\"" + num(margin) + "\" y=\"" + num(label - 4) + "\" font-size=\"12\">minimax " +
         num(sweepout.minimax) + ", " + std::to_string(n) + " frames</text>\n";
  for (size_t i = 0; i < picks.size(); i++) {
    const Cycle& c = sweepout.frames[picks[i]];
    Panel p = fit(box, i * panel_width + margin, label + margin, inner);
    draw_triangles(out, sphere, p, "#d5dbdb");
    for (size_t k = 0; k < c.loops.size(); k++) draw_path(out, sphere, p, c.loops[k], kPalette[k % 6]);
    draw_marks(out, sphere, p);
    out += "<text x=\"" + num(i * panel_width + margin) + "\" y=\"" + num(panel_height + label - 6) +
           "\" font-size=\"10\">frame " + std::to_string(picks[i]) + " mass " + num(c.mass) + "</text>\n";
  }
  return out + "</svg>\n";
}

} // namespace sysw
