#pragma once

// Shared generators and brute-force oracles for the test suites.

#include "sysw/minkowski.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace sysw::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Counterclockwise convex hull with collinear points removed (monotone chain).
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Vec2> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); i++) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-12) k--;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; i--) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 1e-12) k--;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

// Random centrally symmetric convex polygon: hull of a symmetric random point cloud.
inline Norm2D random_polygon_norm(std::mt19937_64& rng, int points = 6) {
  for (;;) {
    std::vector<Vec2> pts;
    for (int i = 0; i < points; i++) {
      Vec2 p{uniform(rng, -1., 1.), uniform(rng, -1., 1.)};
      pts.push_back(p);
      pts.push_back(-p);
    }
    auto hull = convex_hull(pts);
    if (hull.size() < 4) continue;
    try {
      return Norm2D::polygon(hull);
    } catch (const std::exception&) {
      continue;
    }
  }
}

inline Norm2D random_parallelogram_norm(std::mt19937_64& rng) {
  for (;;) {
    Vec2 u{uniform(rng, -1., 1.), uniform(rng, -1., 1.)};
    Vec2 v{uniform(rng, -1., 1.), uniform(rng, -1., 1.)};
    double c = cross(u, v);
    if (std::abs(c) < 0.05) continue;
    if (c < 0) std::swap(u, v);
    return Norm2D::parallelogram(u, v);
  }
}

inline Norm2D random_quadratic_norm(std::mt19937_64& rng) {
  double t = uniform(rng, 0., 3.14159);
  double l1 = uniform(rng, 0.2, 3.), l2 = uniform(rng, 0.2, 3.);
  double c = std::cos(t), s = std::sin(t);
  return Norm2D::quadratic({c * c * l1 + s * s * l2, c * s * (l1 - l2), s * s * l1 + c * c * l2});
}

// Gauge of the convex hull of `verts` at v, by enumerating all vertex pairs of the linear program
// min sum(lambda) s.t. v = sum(lambda_i verts_i), lambda >= 0.
inline double gauge_by_vertex_pairs(const std::vector<Vec2>& verts, Vec2 v) {
  double best = std::numeric_limits<double>::infinity();
  if (v.norm() == 0.) return 0.;
  for (size_t i = 0; i < verts.size(); i++) {
    // single vertex, collinear case
    if (std::abs(cross(verts[i], v)) < 1e-14 && dot(verts[i], v) > 0) best = std::min(best, v.norm() / verts[i].norm());
    for (size_t j = i + 1; j < verts.size(); j++) {
      double d = cross(verts[i], verts[j]);
      if (std::abs(d) < 1e-14) continue;
      double li = cross(v, verts[j]) / d;
      double lj = cross(verts[i], v) / d;
      if (li >= -1e-15 && lj >= -1e-15) best = std::min(best, li + lj);
    }
  }
  return best;
}

} // namespace sysw::testing

#include "sysw/cone_surface.hpp"

#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace sysw::testing {

// Shortest based loop of nonzero homology class in the edge graph of a torus augmented with the
// diagonals of every pair of adjacent triangles (lengths measured in the unfolded pair). Graph
// lengths bound the geodesic value from above and converge under refinement.
inline double graph_noncontractible_loop(const ConeSurface& torus, int base, const std::set<int>& forbidden,
                                         double bound) {
  struct Arc {
    int to;
    double len;
    HomologyClass cls;
  };
  std::vector<std::vector<Arc>> adj(torus.num_vertices());
  for (int t = 0; t < torus.num_triangles(); t++) {
    const auto& P = torus.chart(t);
    for (int c = 0; c < 3; c++) {
      int c2 = (c + 1) % 3;
      CornerRef a{t, c}, b{t, c2};
      adj[torus.vertex(a)].push_back(
          {torus.vertex(b), torus.length(t, c), torus.corner_class(a) - torus.corner_class(b)});
      adj[torus.vertex(b)].push_back(
          {torus.vertex(a), torus.length(t, c), torus.corner_class(b) - torus.corner_class(a)});
      EdgeRef n = torus.neighbor({t, c});
      CornerRef far{n.tri, (n.edge + 2) % 3};
      CornerRef near{t, (c + 2) % 3};
      Vec2 far_here = torus.gluing_map({t, c}).inverse().apply(torus.chart(n.tri)[far.corner]);
      double len = distance(P[near.corner], far_here);
      adj[torus.vertex(near)].push_back({torus.vertex(far), len,
                                         torus.corner_class(near) + torus.crossing_class({t, c}) -
                                             torus.corner_class(far)});
    }
  }
  using State = std::tuple<int, long, long>;
  std::map<State, double> dist;
  using Item = std::pair<double, State>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  dist[{base, 0, 0}] = 0.;
  q.push({0., {base, 0, 0}});
  while (!q.empty()) {
    auto [d, st] = q.top();
    q.pop();
    if (d > dist[st]) continue;
    auto [v, c0, c1] = st;
    if (v == base && (c0 || c1)) return d;
    if (d > bound) break;
    if (forbidden.count(v)) continue;
    for (const Arc& a : adj[v]) {
      State n{a.to, c0 + a.cls[0], c1 + a.cls[1]};
      double nd = d + a.len;
      auto it = dist.find(n);
      if (it == dist.end() || nd < it->second) {
        dist[n] = nd;
        q.push({nd, n});
      }
    }
  }
  return std::numeric_limits<double>::infinity();
}

} // namespace sysw::testing
