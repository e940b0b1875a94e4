#include "sysw/geodesic.hpp"

#include "sysw/errors.hpp"

#include <cmath>
#include <numbers>

namespace sysw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2. * kPi;

double scale_of(const ConeSurface& s, int tri) {
  return std::max({s.length(tri, 0), s.length(tri, 1), s.length(tri, 2)});
}

// Angular coordinate around the vertex of corner c of a direction leaving the vertex into the
// corner's wedge.
double fan_angle(const ConeSurface& s, CornerRef c, Vec2 dir) {
  const auto& P = s.chart(c.tri);
  Vec2 e = P[(c.corner + 1) % 3] - P[c.corner];
  double a = std::atan2(cross(e, dir), dot(e, dir));
  a = std::clamp(a, 0., s.corner_angle(c.tri, c.corner));
  return s.corner_angle_offset(c) + a;
}

struct Exit {
  double u = 0.;
  int edge = -1;
  int corner = -1;
};

// Exit of the ray p + u d from triangle tri (p inside or on the boundary).
std::optional<Exit> find_exit(const ConeSurface& s, int tri, Vec2 p, Vec2 d) {
  const auto& P = s.chart(tri);
  std::optional<Exit> best;
  for (int k = 0; k < 3; k++) {
    Vec2 A = P[k], B = P[(k + 1) % 3];
    Vec2 edge = B - A;
    double den = cross(d, edge);
    if (den <= 1e-15 * edge.norm() * d.norm()) continue; // not leaving through this edge
    double u = cross(A - p, edge) / den;
    if (!best || u < best->u) best = Exit{std::max(u, 0.), k, -1};
  }
  if (!best) return std::nullopt;
  Vec2 x = p + d * best->u;
  double tol = 1e-9 * scale_of(s, tri);
  for (int j = 0; j < 3; j++)
    if (distance(x, P[j]) < tol) {
      best->corner = j;
      best->u = dot(P[j] - p, d) / d.norm2();
    }
  return best;
}

} // namespace

double segment_length(const ConeSurface& s, const PathSegment& seg) { return s.chart_length(seg.tri, seg.exit - seg.entry); }

double path_length(const ConeSurface& s, const GeodesicPath& path) {
  double total = 0.;
  for (const auto& seg : path.segments) total += segment_length(s, seg);
  return total;
}

HomologyClass path_class(const ConeSurface& s, const GeodesicPath& path) {
  HomologyClass c{0, 0};
  if (s.homology_rank() == 0 || path.empty()) return c;
  const auto& segs = path.segments;
  if (segs.front().entry_corner >= 0) c = c + s.corner_class({segs.front().tri, segs.front().entry_corner});
  for (size_t k = 0; k < segs.size(); k++) {
    const auto& seg = segs[k];
    if (seg.exit_edge >= 0) {
      c = c + s.crossing_class({seg.tri, seg.exit_edge});
    } else if (seg.exit_corner >= 0 && k + 1 < segs.size()) {
      const auto& next = segs[k + 1];
      if (next.entry_corner < 0) throw InputError("path_class: vertex join without a corner");
      c = c + s.corner_class({next.tri, next.entry_corner}) - s.corner_class({seg.tri, seg.exit_corner});
    }
  }
  if (segs.back().exit_corner >= 0) c = c - s.corner_class({segs.back().tri, segs.back().exit_corner});
  return c;
}

std::vector<int> vertex_passes(const ConeSurface& s, const GeodesicPath& path) {
  std::vector<int> out;
  for (size_t k = 0; k + 1 < path.segments.size(); k++) {
    const auto& seg = path.segments[k];
    if (seg.exit_edge < 0 && seg.exit_corner >= 0) out.push_back(s.vertex(seg.tri, seg.exit_corner));
  }
  return out;
}

GeodesicPath reversed(const ConeSurface& s, const GeodesicPath& path) {
  GeodesicPath out;
  out.total_length = path.total_length;
  out.terminal = Terminal::Endpoint;
  const auto& segs = path.segments;
  const size_t m = segs.size();
  for (size_t k = 0; k < m; k++) {
    const auto& orig = segs[m - 1 - k];
    PathSegment r{orig.tri, orig.exit, orig.entry, orig.exit_corner, orig.entry_corner, -1};
    if (k + 1 < m) {
      const auto& prev = segs[m - 2 - k];
      if (prev.exit_edge >= 0) r.exit_edge = s.neighbor({prev.tri, prev.exit_edge}).edge;
    }
    out.segments.push_back(r);
  }
  return out;
}

GeodesicPath concatenate(const GeodesicPath& a, const GeodesicPath& b) {
  GeodesicPath out = a;
  out.segments.insert(out.segments.end(), b.segments.begin(), b.segments.end());
  out.total_length = a.total_length + b.total_length;
  out.terminal = b.terminal;
  out.terminal_vertex = b.terminal_vertex;
  return out;
}

GeodesicPath normalized(const ConeSurface& s, const GeodesicPath& path) {
  GeodesicPath out = path;
  auto& segs = out.segments;
  std::vector<PathSegment> merged;
  for (size_t k = 0; k < segs.size(); k++) {
    PathSegment seg = segs[k];
    if (distance(seg.entry, seg.exit) <= 0. && segs.size() > 1) continue;
    if (!merged.empty()) {
      PathSegment& prev = merged.back();
      if (prev.tri == seg.tri && prev.exit_edge < 0 && prev.exit_corner < 0 &&
          std::abs(cross(prev.exit - prev.entry, seg.exit - seg.entry)) <=
              1e-12 * (prev.exit - prev.entry).norm() * (seg.exit - seg.entry).norm() &&
          dot(prev.exit - prev.entry, seg.exit - seg.entry) > 0.) {
        prev.exit = seg.exit;
        prev.exit_corner = seg.exit_corner;
        prev.exit_edge = seg.exit_edge;
        continue;
      }
    }
    merged.push_back(seg);
  }
  for (size_t k = 0; k + 1 < merged.size(); k++) {
    PathSegment& seg = merged[k];
    const PathSegment& next = merged[k + 1];
    if (seg.exit_edge >= 0 || seg.tri == next.tri) continue;
    const auto& P = s.chart(seg.tri);
    double scale = std::max({s.length(seg.tri, 0), s.length(seg.tri, 1), s.length(seg.tri, 2)});
    for (int c = 0; c < 3; c++)
      if (distance(seg.exit, P[c]) <= 1e-9 * scale) seg.exit_corner = c;
    if (seg.exit_corner >= 0) continue;
    for (int e = 0; e < 3; e++) {
      Vec2 A = P[e], B = P[(e + 1) % 3];
      EdgeRef n = s.neighbor({seg.tri, e});
      if (n.valid() && n.tri == next.tri && std::abs(cross(B - A, seg.exit - A)) / (B - A).norm() <= 1e-9 * scale)
        seg.exit_edge = e;
    }
  }
  segs = std::move(merged);
  return out;
}

SurfacePoint point_at(const ConeSurface& s, const GeodesicPath& path, double t) {
  if (path.empty()) throw InputError("point_at: empty path");
  double acc = 0.;
  for (const auto& seg : path.segments) {
    double len = segment_length(s, seg);
    if (t <= acc + len && len > 0.) {
      double f = std::clamp((t - acc) / len, 0., 1.);
      return {seg.tri, seg.entry + (seg.exit - seg.entry) * f};
    }
    acc += len;
  }
  return path.end();
}

GeodesicPath subpath(const ConeSurface& s, const GeodesicPath& path, double t0, double t1) {
  GeodesicPath out;
  out.terminal = Terminal::Endpoint;
  double acc = 0.;
  const double eps = 1e-13 * std::max(1., path.total_length);
  for (const auto& seg : path.segments) {
    double len = segment_length(s, seg);
    double a = acc, b = acc + len;
    acc = b;
    if (b < t0 - eps || a > t1 + eps || (out.segments.empty() && b <= t0 + eps && b < t1 - eps)) continue;
    PathSegment piece = seg;
    if (t0 > a + eps && len > 0.) {
      piece.entry = seg.entry + (seg.exit - seg.entry) * ((t0 - a) / len);
      piece.entry_corner = -1;
    }
    if (t1 < b - eps && len > 0.) {
      piece.exit = seg.entry + (seg.exit - seg.entry) * ((t1 - a) / len);
      piece.exit_corner = -1;
      piece.exit_edge = -1;
    }
    out.segments.push_back(piece);
    if (t1 <= b + eps) break;
  }
  if (!out.segments.empty()) {
    out.segments.back().exit_edge = -1;
    if (out.segments.back().exit_corner < 0) out.segments.back().exit_corner = -1;
  }
  out.total_length = path_length(s, out);
  return out;
}

double straightness_defect(const ConeSurface& s, const GeodesicPath& path) {
  double worst = 0.;
  const auto& segs = path.segments;
  for (size_t k = 0; k + 1 < segs.size(); k++) {
    const auto& a = segs[k];
    const auto& b = segs[k + 1];
    Vec2 da = a.exit - a.entry, db = b.exit - b.entry;
    if (da.norm() == 0. || db.norm() == 0.) continue;
    if (a.exit_edge >= 0) {
      Rigid g = s.gluing_map({a.tri, a.exit_edge});
      worst = std::max(worst, distance(g.apply(a.exit), b.entry) / scale_of(s, b.tri));
      Vec2 ga = g.apply_dir(da).normalized();
      worst = std::max(worst, std::abs(std::atan2(cross(ga, db.normalized()), dot(ga, db.normalized()))));
    } else if (a.exit_corner >= 0 && b.entry_corner >= 0) {
      int v = s.vertex(a.tri, a.exit_corner);
      double theta = s.cone_angle(v);
      double in = fan_angle(s, {a.tri, a.exit_corner}, a.entry - a.exit);
      double out = fan_angle(s, {b.tri, b.entry_corner}, db);
      double delta = std::fmod(out - in + 2 * theta, theta);
      if (std::abs(theta - kTwoPi) < 1e-9) {
        worst = std::max(worst, std::abs(delta - kPi));
      } else {
        worst = std::max(worst, std::max(0., kPi - std::min(delta, theta - delta)));
      }
    }
  }
  return worst;
}

GeodesicPath trace(const ConeSurface& s, const SurfacePoint& start, Vec2 direction, double max_length) {
  if (!(max_length > 0.)) throw InputError("trace: max_length must be positive");
  if (start.tri < 0 || start.tri >= s.num_triangles()) throw InputError("trace: start triangle out of range");
  if (!s.contains(start.tri, start.pos, 1e-9)) throw InputError("trace: start point outside its triangle");
  if (s.vertex_at(start)) throw InputError("trace: start point is a cone point");
  if (direction.norm() == 0.) throw InputError("trace: zero direction");

  GeodesicPath path;
  int tri = start.tri;
  Vec2 p = start.pos;
  Vec2 d = direction.normalized();
  int entry_corner = -1;
  double remaining = max_length;
  for (int step = 0; step < 10'000'000; step++) {
    auto ex = find_exit(s, tri, p, d);
    if (!ex) throw InputError("trace: ray does not leave the triangle (degenerate chart)");
    Vec2 x = p + d * ex->u;
    PathSegment seg{tri, p, x, entry_corner, -1, -1};
    double len = segment_length(s, seg);
    if (len >= remaining) {
      seg.exit = p + (x - p) * (len > 0. ? remaining / len : 0.);
      path.segments.push_back(seg);
      path.terminal = Terminal::LengthExhausted;
      path.total_length = max_length;
      return path;
    }
    remaining -= len;
    if (ex->corner >= 0) {
      seg.exit = s.chart(tri)[ex->corner];
      seg.exit_corner = ex->corner;
      path.segments.push_back(seg);
      int v = s.vertex(tri, ex->corner);
      if (s.is_boundary_vertex(v) || std::abs(s.cone_angle(v) - kTwoPi) > 1e-9) {
        path.terminal = Terminal::ConePointHit;
        path.terminal_vertex = v;
        path.total_length = max_length - remaining;
        return path;
      }
      double target = std::fmod(fan_angle(s, {tri, ex->corner}, -d) + kPi, s.cone_angle(v));
      CornerRef next{};
      for (CornerRef c : s.vertex_corners(v)) {
        double lo = s.corner_angle_offset(c);
        if (target >= lo - 1e-15 && target < lo + s.corner_angle(c.tri, c.corner)) next = c;
      }
      if (next.tri < 0) next = s.vertex_corners(v).back();
      const auto& Q = s.chart(next.tri);
      Vec2 e = (Q[(next.corner + 1) % 3] - Q[next.corner]).normalized();
      d = rotate(e, unit_at_angle(target - s.corner_angle_offset(next)));
      tri = next.tri;
      p = Q[next.corner];
      entry_corner = next.corner;
      continue;
    }
    seg.exit_edge = ex->edge;
    path.segments.push_back(seg);
    EdgeRef n = s.neighbor({tri, ex->edge});
    if (!n.valid()) {
      path.terminal = Terminal::BoundaryHit;
      path.total_length = max_length - remaining;
      return path;
    }
    Rigid g = s.gluing_map({tri, ex->edge});
    p = g.apply(x);
    d = g.apply_dir(d).normalized();
    tri = n.tri;
    entry_corner = -1;
  }
  throw SearchExhausted("trace: step limit reached");
}

nlohmann::json to_json(const GeodesicPath& path) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : path.segments) {
    nlohmann::json j = {{"tri", s.tri}, {"entry", {s.entry.x, s.entry.y}}, {"exit", {s.exit.x, s.exit.y}}};
    if (s.entry_corner >= 0) j["entry_corner"] = s.entry_corner;
    if (s.exit_corner >= 0) j["exit_corner"] = s.exit_corner;
    if (s.exit_edge >= 0) j["exit_edge"] = s.exit_edge;
    segs.push_back(j);
  }
  static const char* names[] = {"endpoint", "cone_point_hit", "length_exhausted", "boundary_hit"};
  nlohmann::json term = {{"kind", names[static_cast<int>(path.terminal)]}};
  if (path.terminal == Terminal::ConePointHit) term["vertex"] = path.terminal_vertex;
  return {{"segments", segs}, {"total_length", path.total_length}, {"terminal", term}};
}

GeodesicPath path_from_json(const nlohmann::json& j) {
  try {
    GeodesicPath p;
    for (const auto& s : j.at("segments")) {
      PathSegment seg;
      seg.tri = s.at("tri").get<int>();
      seg.entry = {s.at("entry").at(0).get<double>(), s.at("entry").at(1).get<double>()};
      seg.exit = {s.at("exit").at(0).get<double>(), s.at("exit").at(1).get<double>()};
      seg.entry_corner = s.value("entry_corner", -1);
      seg.exit_corner = s.value("exit_corner", -1);
      seg.exit_edge = s.value("exit_edge", -1);
      p.segments.push_back(seg);
    }
    p.total_length = j.at("total_length").get<double>();
    std::string kind = j.at("terminal").at("kind").get<std::string>();
    if (kind == "endpoint") p.terminal = Terminal::Endpoint;
    else if (kind == "cone_point_hit") p.terminal = Terminal::ConePointHit;
    else if (kind == "length_exhausted") p.terminal = Terminal::LengthExhausted;
    else if (kind == "boundary_hit") p.terminal = Terminal::BoundaryHit;
    else throw InputError("path: unknown terminal kind " + kind);
    p.terminal_vertex = j.at("terminal").value("vertex", -1);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("path: malformed JSON: ") + e.what());
  }
}

} // namespace sysw
