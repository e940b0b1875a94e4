#pragma once

// Loop builders shared by the shortening tests and the acceptance run.

#include "sysw/birkhoff.hpp"
#include "test_support.hpp"

#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

namespace sysw::testing {

// Closed polygon in a flat disk or torus: straight sides traced from `start` along the given
// developed vectors.
inline GeodesicPath polygon(const ConeSurface& s, const SurfacePoint& start, const std::vector<Vec2>& sides) {
  GeodesicPath out;
  SurfacePoint p = start;
  for (Vec2 side : sides) {
    Vec2 dir = s.tree_development()[p.tri].inverse().apply_dir(side);
    GeodesicPath g = trace(s, p, dir, side.norm());
    if (g.terminal != Terminal::LengthExhausted) throw std::runtime_error("polygon side does not fit on the surface");
    out = out.empty() ? g : concatenate(out, g);
    p = g.end();
  }
  out = normalized(s, out);
  out.total_length = path_length(s, out);
  out.terminal = Terminal::Endpoint;
  return out;
}

inline std::vector<Vec2> regular_sides(int k, double side, double phase = 0.) {
  std::vector<Vec2> out;
  for (int j = 0; j < k; j++) out.push_back(unit_at_angle(phase + 2 * std::numbers::pi * j / k) * side);
  return out;
}

inline ConeSurface equilateral_torus() {
  const double r3 = std::sqrt(3.);
  return build_flat_torus_surface(Lattice2D::make({r3, 0.}, unit_at_angle(std::numbers::pi / 3) * r3));
}

inline GeodesicPath straight_loop(const ConeSurface& torus, const SurfacePoint& start, Vec2 translation) {
  Vec2 dir = torus.tree_development()[start.tri].inverse().apply_dir(translation);
  return trace(torus, start, dir, translation.norm());
}

inline bool non_increasing(const std::vector<double>& v, double tol) {
  for (size_t k = 1; k < v.size(); k++)
    if (v[k] > v[k - 1] + tol) return false;
  return true;
}

// Loop through 5 to 9 random marks near a random triangle center, joined by shortest arcs.
inline std::optional<MarkedLoop> random_marked_loop(const ConeSurface& s, GeodesicEngine& engine, std::mt19937_64& rng) {
  SurfacePoint c = s.point_from_barycentric(static_cast<int>(rng() % s.num_triangles()), {1., 1., 1.});
  int n = 5 + static_cast<int>(rng() % 5);
  MarkedLoop loop;
  loop.surface = &s;
  for (int j = 0; j < n; j++) {
    Vec2 dir = unit_at_angle(uniform(rng, 0., 2 * std::numbers::pi));
    GeodesicPath g = trace(s, c, dir, uniform(rng, 0.02, 0.3));
    loop.marks.push_back(g.end());
  }
  for (int j = 0; j < n; j++) {
    auto arc = engine.shortest_path(loop.marks[j], loop.marks[(j + 1) % n], 2.);
    if (!arc) return std::nullopt;
    loop.arcs.push_back(*arc);
    loop.length += arc->total_length;
  }
  return loop;
}

} // namespace sysw::testing
