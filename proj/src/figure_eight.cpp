#include "sysw/geodesic.hpp"

#include "sysw/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace sysw {

namespace {

constexpr double kTwoPi = 2. * std::numbers::pi;

double tri_scale(const ConeSurface& s, int tri) { return std::max({s.length(tri, 0), s.length(tri, 1), s.length(tri, 2)}); }

double fan_coordinate(const ConeSurface& s, CornerRef c, Vec2 dir) {
  const auto& P = s.chart(c.tri);
  Vec2 e = P[(c.corner + 1) % 3] - P[c.corner];
  double a = std::clamp(std::atan2(cross(e, dir), dot(e, dir)), 0., s.corner_angle(c.tri, c.corner));
  return s.corner_angle_offset(c) + a;
}

struct SegInfo {
  int tri;
  Vec2 a, b;
  double t0, len;
};

std::vector<SegInfo> seg_infos(const ConeSurface& s, const GeodesicPath& loop) {
  std::vector<SegInfo> out;
  double acc = 0.;
  for (const auto& seg : loop.segments) {
    double len = segment_length(s, seg);
    out.push_back({seg.tri, seg.entry, seg.exit, acc, len});
    acc += len;
  }
  return out;
}

bool loop_starts_at_vertex(const GeodesicPath& loop) {
  return loop.segments.front().entry_corner >= 0 && loop.segments.back().exit_corner >= 0;
}

struct VertexPass {
  int vertex;
  double in, out; // fan coordinates of the arriving (backwards) and leaving directions
  double t;
  SurfacePoint where;
};

std::vector<VertexPass> passes_of(const ConeSurface& s, const GeodesicPath& loop, const std::vector<SegInfo>& info) {
  std::vector<VertexPass> out;
  const auto& segs = loop.segments;
  auto add = [&](size_t k, size_t next, double t) {
    const auto& a = segs[k];
    const auto& b = segs[next];
    if (a.exit_corner < 0 || b.entry_corner < 0) return;
    CornerRef ca{a.tri, a.exit_corner}, cb{b.tri, b.entry_corner};
    out.push_back({s.vertex(ca), fan_coordinate(s, ca, a.entry - a.exit), fan_coordinate(s, cb, b.exit - b.entry), t,
                   {a.tri, a.exit}});
  };
  for (size_t k = 0; k + 1 < segs.size(); k++)
    if (segs[k].exit_edge < 0) add(k, k + 1, info[k].t0 + info[k].len);
  if (loop_starts_at_vertex(loop)) add(segs.size() - 1, 0, 0.);
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

namespace {

std::vector<SelfIntersection> raw_self_intersections(const ConeSurface& s, const GeodesicPath& loop) {
  std::vector<SelfIntersection> out;
  auto info = seg_infos(s, loop);
  const double eps = 1e-9;
  // crossings inside triangles
  for (size_t i = 0; i < info.size(); i++) {
    for (size_t j = i + 1; j < info.size(); j++) {
      if (info[i].tri != info[j].tri) continue;
      Vec2 p = info[i].a, r = info[i].b - info[i].a;
      Vec2 q = info[j].a, u = info[j].b - info[j].a;
      double den = cross(r, u);
      if (std::abs(den) <= 1e-12 * r.norm() * u.norm()) continue;
      double a = cross(q - p, u) / den, b = cross(q - p, r) / den;
      if (a <= eps || a >= 1. - eps || b <= eps || b >= 1. - eps) continue;
      out.push_back({info[i].t0 + a * info[i].len, info[j].t0 + b * info[j].len, {info[i].tri, p + r * a}});
    }
  }
  // crossings on edges
  struct EdgeCross {
    double param;
    Vec2 dir;
    double t;
    SurfacePoint where;
  };
  std::map<int, std::vector<EdgeCross>> by_gluing;
  for (size_t k = 0; k < loop.segments.size(); k++) {
    const auto& seg = loop.segments[k];
    if (seg.exit_edge < 0) continue;
    EdgeRef e{seg.tri, seg.exit_edge};
    int g = s.gluing_index(e);
    EdgeRef side = s.gluings()[g].a;
    Vec2 x = seg.exit, d = seg.exit - seg.entry;
    if (!(side == e)) {
      Rigid m = s.gluing_map(e);
      x = m.apply(x);
      d = m.apply_dir(d);
    }
    const auto& P = s.chart(side.tri);
    Vec2 A = P[side.edge], B = P[(side.edge + 1) % 3];
    double param = dot(x - A, B - A) / (B - A).norm2();
    by_gluing[g].push_back({param, d.normalized(), info[k].t0 + info[k].len, {seg.tri, seg.exit}});
  }
  for (auto& [g, list] : by_gluing)
    for (size_t i = 0; i < list.size(); i++)
      for (size_t j = i + 1; j < list.size(); j++) {
        if (std::abs(list[i].param - list[j].param) > 1e-9) continue;
        if (std::abs(cross(list[i].dir, list[j].dir)) < 1e-9) continue;
        double t0 = std::min(list[i].t, list[j].t), t1 = std::max(list[i].t, list[j].t);
        out.push_back({t0, t1, list[i].where});
      }
  // crossings at vertex passes
  auto passes = passes_of(s, loop, info);
  for (size_t i = 0; i < passes.size(); i++)
    for (size_t j = i + 1; j < passes.size(); j++) {
      if (passes[i].vertex != passes[j].vertex) continue;
      double theta = s.cone_angle(passes[i].vertex);
      auto rel = [&](double x) { return std::fmod(x - passes[i].in + 2 * theta, theta); };
      double o1 = rel(passes[i].out), a = rel(passes[j].in), b = rel(passes[j].out);
      bool a_in = a > 1e-9 && a < o1 - 1e-9, b_in = b > 1e-9 && b < o1 - 1e-9;
      if (a_in != b_in) {
        double t0 = std::min(passes[i].t, passes[j].t), t1 = std::max(passes[i].t, passes[j].t);
        out.push_back({t0, t1, passes[i].where});
      }
    }
  return out;
}

bool is_closed(const ConeSurface& s, const GeodesicPath& loop);

} // namespace

std::vector<SelfIntersection> self_intersections(const ConeSurface& s, const GeodesicPath& path) {
  std::vector<SelfIntersection> out;
  if (path.empty()) return out;
  GeodesicPath loop = normalized(s, path);
  if (loop_starts_at_vertex(loop) || !is_closed(s, loop)) {
    out = raw_self_intersections(s, loop);
  } else {
    // restart at the middle of the longest segment so the closing point is not special
    auto info = seg_infos(s, loop);
    auto it = std::max_element(info.begin(), info.end(), [](const auto& a, const auto& b) { return a.len < b.len; });
    double L = path_length(s, loop), shift = it->t0 + 0.5 * it->len;
    GeodesicPath rotated = normalized(s, concatenate(subpath(s, loop, shift, L), subpath(s, loop, 0., shift)));
    for (auto x : raw_self_intersections(s, rotated)) {
      double a = std::fmod(x.t0 + shift, L), b = std::fmod(x.t1 + shift, L);
      out.push_back({std::min(a, b), std::max(a, b), x.where});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return std::tie(x.t0, x.t1) < std::tie(y.t0, y.t1); });
  return out;
}

ComplementRegions complement_regions(const ConeSurface& s, const GeodesicPath& loop) {
  const int F = s.num_triangles();
  std::vector<std::vector<std::pair<Vec2, Vec2>>> chords(F);
  for (const auto& seg : loop.segments)
    if (distance(seg.entry, seg.exit) > 0.) chords[seg.tri].push_back({seg.entry, seg.exit});

  UnionFind uf;
  std::vector<std::map<std::vector<int>, int>> cells(F);
  auto cell_at = [&](int tri, Vec2 x) -> int {
    std::vector<int> key;
    for (const auto& [a, b] : chords[tri]) {
      double c = cross(b - a, x - a);
      key.push_back(c > 0. ? 1 : -1);
    }
    auto it = cells[tri].find(key);
    if (it != cells[tri].end()) return it->second;
    int id = uf.make();
    cells[tri][key] = id;
    return id;
  };
  auto clearance = [&](int tri, Vec2 x) {
    double d = 1e-3 * tri_scale(s, tri);
    for (const auto& [a, b] : chords[tri]) {
      Vec2 ab = b - a;
      double dist = std::abs(cross(ab, x - a)) / ab.norm();
      if (dist > 0.) d = std::min(d, dist);
    }
    return 0.5 * d;
  };
  for (int t = 0; t < F; t++) {
    const auto& P = s.chart(t);
    Vec2 centroid = (P[0] + P[1] + P[2]) / 3.;
    for (int k = 0; k < 3; k++) {
      Vec2 A = P[k], B = P[(k + 1) % 3];
      std::vector<double> cuts{0., 1.};
      for (const auto& [a, b] : chords[t])
        for (Vec2 x : {a, b}) {
          double along = dot(x - A, B - A) / (B - A).norm2();
          double off = std::abs(cross(B - A, x - A)) / (B - A).norm();
          if (off < 1e-9 * tri_scale(s, t) && along > 0. && along < 1.) cuts.push_back(along);
        }
      std::sort(cuts.begin(), cuts.end());
      Vec2 inward = (B - A).perp().normalized();
      for (size_t i = 0; i + 1 < cuts.size(); i++) {
        if (cuts[i + 1] - cuts[i] < 1e-12) continue;
        Vec2 m = A + (B - A) * (0.5 * (cuts[i] + cuts[i + 1]));
        int here = cell_at(t, m + inward * clearance(t, m));
        EdgeRef n = s.neighbor({t, k});
        if (!n.valid()) continue;
        Vec2 m2 = s.gluing_map({t, k}).apply(m);
        const auto& Q = s.chart(n.tri);
        Vec2 in2 = (Q[(n.edge + 1) % 3] - Q[n.edge]).perp().normalized();
        uf.unite(here, cell_at(n.tri, m2 + in2 * clearance(n.tri, m2)));
      }
    }
    // cells bounded by chords alone
    for (size_t i = 0; i < chords[t].size(); i++)
      for (size_t j = i + 1; j < chords[t].size(); j++) {
        auto [p, p2] = chords[t][i];
        auto [q, q2] = chords[t][j];
        Vec2 r = p2 - p, u = q2 - q;
        double den = cross(r, u);
        if (std::abs(den) <= 1e-12 * r.norm() * u.norm()) continue;
        double a = cross(q - p, u) / den;
        Vec2 x = p + r * a;
        double eps = 1e-3 * tri_scale(s, t);
        for (size_t k = 0; k < chords[t].size(); k++) {
          if (k == i || k == j) continue;
          auto [c, c2] = chords[t][k];
          double dist = std::abs(cross(c2 - c, x - c)) / (c2 - c).norm();
          if (dist > 0.) eps = std::min(eps, 0.25 * dist);
        }
        for (Vec2 e : {P[0], P[1], P[2]}) eps = std::min(eps, 0.25 * distance(x, e));
        for (int sa : {-1, 1})
          for (int sb : {-1, 1}) {
            Vec2 y = x + r.normalized() * (sa * eps) + u.normalized() * (sb * eps);
            if (s.contains(t, y, 0.)) cell_at(t, y);
          }
      }
    (void)centroid;
  }
  std::map<int, int> region_of_root;
  for (int t = 0; t < F; t++)
    for (auto& [key, id] : cells[t]) {
      int r = uf.find(id);
      if (!region_of_root.count(r)) region_of_root[r] = static_cast<int>(region_of_root.size());
    }
  ComplementRegions out;
  out.count = static_cast<int>(region_of_root.size());
  out.marked.assign(out.count, {});
  std::set<int> on_loop;
  for (const auto& seg : loop.segments) {
    for (Vec2 x : {seg.entry, seg.exit})
      if (auto v = s.vertex_at({seg.tri, x})) on_loop.insert(*v);
  }
  auto marked = s.marked_vertices();
  for (size_t i = 0; i < marked.size(); i++) {
    if (on_loop.count(marked[i])) continue;
    CornerRef c = s.vertex_corners(marked[i]).front();
    const auto& P = s.chart(c.tri);
    Vec2 x = P[c.corner];
    Vec2 bis = ((P[(c.corner + 1) % 3] - x).normalized() + (P[(c.corner + 2) % 3] - x).normalized()).normalized();
    double eps = 1e-3 * tri_scale(s, c.tri);
    for (const auto& [a, b] : chords[c.tri]) {
      double dist = std::abs(cross(b - a, x - a)) / (b - a).norm();
      if (dist > 0.) eps = std::min(eps, 0.25 * dist);
    }
    int id = cell_at(c.tri, x + bis * eps);
    int r = uf.find(id);
    if (!region_of_root.count(r)) continue; // on the loop itself
    out.marked[region_of_root[r]].push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

bool same_point(const ConeSurface& s, const SurfacePoint& p, const SurfacePoint& q, double tol) {
  if (p.tri == q.tri) return distance(p.pos, q.pos) <= tol;
  for (int k = 0; k < 3; k++) {
    EdgeRef n = s.neighbor({p.tri, k});
    if (n.valid() && n.tri == q.tri && distance(s.gluing_map({p.tri, k}).apply(p.pos), q.pos) <= tol) {
      const auto& P = s.chart(p.tri);
      Vec2 A = P[k], B = P[(k + 1) % 3];
      if (std::abs(cross(B - A, p.pos - A)) / (B - A).norm() <= tol) return true;
    }
  }
  if (auto v = s.vertex_at(p, 1e-9))
    if (auto w = s.vertex_at(q, 1e-9)) return *v == *w;
  return false;
}

bool is_closed(const ConeSurface& s, const GeodesicPath& loop) {
  if (loop.empty()) return false;
  return same_point(s, loop.start(), loop.end(), 1e-9 * std::max(1., loop.total_length));
}

} // namespace

Classification classify_systolic_projection(const CoverMap& cover, const GeodesicPath& torus_loop) {
  const ConeSurface& T = cover.torus();
  const ConeSurface& S = cover.sphere();
  Classification out;
  if (!is_closed(T, torus_loop)) throw InputError("classify_systolic_projection: loop is not closed");
  const auto& ram = cover.ramification_points();
  std::vector<int> touched = vertex_passes(T, torus_loop);
  if (auto v = T.vertex_at(torus_loop.start(), 1e-9)) touched.insert(touched.begin(), *v);
  for (size_t k = 0; k < torus_loop.segments.size(); k++) {
    const auto& seg = torus_loop.segments[k];
    if (seg.exit_corner >= 0) touched.push_back(T.vertex(seg.tri, seg.exit_corner));
  }
  for (int v : touched)
    for (int i = 0; i < 3; i++)
      if (v == ram[i]) {
        out.kind = Classification::Kind::ThroughRamification;
        out.ramification_index = i;
        return out;
      }

  double L = path_length(T, torus_loop);
  GeodesicPath sphere_loop = project(cover, torus_loop);
  auto crossings = self_intersections(S, sphere_loop);
  if (crossings.size() != 1) {
    out.diagnostic = "projection has " + std::to_string(crossings.size()) + " transverse self-intersections";
    return out;
  }
  ComplementRegions regions = complement_regions(S, sphere_loop);
  if (regions.count != 3) {
    out.diagnostic = "projection complement has " + std::to_string(regions.count) + " regions";
    return out;
  }
  for (const auto& r : regions.marked)
    if (r.size() != 1) {
      out.diagnostic = "a complementary region does not contain exactly one marked vertex";
      return out;
    }

  FigureEight fig;
  const SelfIntersection& x = crossings.front();
  GeodesicPath head = subpath(T, torus_loop, x.t0, L), tail = subpath(T, torus_loop, 0., x.t0);
  fig.torus_loop = tail.empty() || tail.total_length <= 0. ? head : concatenate(head, tail);
  fig.torus_loop.total_length = path_length(T, fig.torus_loop);
  fig.torus_loop.terminal = Terminal::Endpoint;
  fig.crossing = {0., x.t1 - x.t0, x.where};
  SurfacePoint q1 = fig.torus_loop.start();
  SurfacePoint q2 = point_at(T, fig.torus_loop, fig.crossing.t1);
  for (int e = 1; e <= 2; e++)
    if (same_point(T, cover.deck(q1, e), q2, 1e-7)) fig.deck_power = e;
  if (fig.deck_power == 0) {
    out.diagnostic = "preimages of the crossing are not related by the deck map";
    return out;
  }
  fig.loop = project(cover, fig.torus_loop);
  fig.regions = regions;
  out.kind = Classification::Kind::FigureEight;
  out.figure_eight = std::move(fig);
  (void)kTwoPi;
  return out;
}

} // namespace sysw
