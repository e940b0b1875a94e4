#include "sysw/cone_surface.hpp"

#include "sysw/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace sysw {

namespace {

constexpr double kTwoPi = 2. * std::numbers::pi;

std::array<Vec2, 3> chart_from_lengths(const std::array<double, 3>& l) {
  double x = (l[0] * l[0] + l[2] * l[2] - l[1] * l[1]) / (2. * l[0]);
  double y = std::sqrt(std::max(0., l[2] * l[2] - x * x));
  return {Vec2{0., 0.}, Vec2{l[0], 0.}, Vec2{x, y}};
}

double angle_from_lengths(double adj1, double adj2, double opposite) {
  double c = (adj1 * adj1 + adj2 * adj2 - opposite * opposite) / (2. * adj1 * adj2);
  return std::acos(std::clamp(c, -1., 1.));
}

std::string where(int t, int e) {
  std::ostringstream s;
  s << "triangle " << t << " edge " << e;
  return s.str();
}

} // namespace

ConeSurface::ConeSurface(std::vector<TriangleSpec> triangles, std::vector<Gluing> gluings, std::vector<CornerRef> marked,
                         int refinement_level)
    : triangles_(std::move(triangles)), gluings_(std::move(gluings)), marked_(std::move(marked)),
      refinement_level_(refinement_level) {
  if (triangles_.empty()) throw InputError("surface: no triangles");
  for (int t = 0; t < num_triangles(); t++) {
    const auto& l = triangles_[t].lengths;
    for (int e = 0; e < 3; e++) {
      if (!std::isfinite(l[e]) || !(l[e] > 0.)) throw InputError("surface: non-positive edge length at " + where(t, e));
    }
    for (int e = 0; e < 3; e++) {
      if (!(l[e] < l[(e + 1) % 3] + l[(e + 2) % 3]))
        throw InputError("surface: triangle inequality violated in triangle " + std::to_string(t));
    }
    if (triangles_[t].norm) has_norm_field_ = true;
    charts_.push_back(chart_from_lengths(l));
    std::array<double, 3> ang{};
    for (int c = 0; c < 3; c++) ang[c] = angle_from_lengths(l[c], l[(c + 2) % 3], l[(c + 1) % 3]);
    corner_angles_.push_back(ang);
  }
  build_connectivity();
  build_vertices();

  int chi = euler_characteristic();
  if (num_boundary_edges_ > 0) {
    topology_ = Topology::Disk;
  } else if (chi == 2) {
    topology_ = Topology::Sphere;
  } else if (chi == 0) {
    topology_ = Topology::Torus;
  } else {
    throw InputError("surface: closed surface with Euler characteristic " + std::to_string(chi) +
                     " (only spheres and tori are supported)");
  }
  for (CornerRef c : marked_) {
    if (c.tri < 0 || c.tri >= num_triangles() || c.corner < 0 || c.corner > 2)
      throw InputError("surface: marked corner out of range");
  }
  build_homology();
}

void ConeSurface::build_connectivity() {
  const int F = num_triangles();
  neighbor_.assign(F, {});
  gluing_of_.assign(F, {-1, -1, -1});
  gluing_maps_.assign(F, {});
  for (int g = 0; g < num_gluings(); g++) {
    for (EdgeRef side : {gluings_[g].a, gluings_[g].b}) {
      if (side.tri < 0 || side.tri >= F || side.edge < 0 || side.edge > 2)
        throw InputError("surface: gluing " + std::to_string(g) + " references a missing edge");
      if (gluing_of_[side.tri][side.edge] >= 0)
        throw InputError("surface: " + where(side.tri, side.edge) + " is glued more than once");
      gluing_of_[side.tri][side.edge] = g;
    }
    EdgeRef a = gluings_[g].a, b = gluings_[g].b;
    if (a == b) throw InputError("surface: gluing " + std::to_string(g) + " glues an edge to itself");
    double la = length(a.tri, a.edge), lb = length(b.tri, b.edge);
    if (std::abs(la - lb) > 1e-12 * std::max(1., la))
      throw InputError("surface: glued edges differ in length (" + where(a.tri, a.edge) + ", " + where(b.tri, b.edge) + ")");
    neighbor_[a.tri][a.edge] = b;
    neighbor_[b.tri][b.edge] = a;
  }
  num_boundary_edges_ = 0;
  for (int t = 0; t < F; t++) {
    for (int e = 0; e < 3; e++) {
      EdgeRef n = neighbor_[t][e];
      if (!n.valid()) {
        num_boundary_edges_++;
        continue;
      }
      const auto& P = charts_[t];
      const auto& Q = charts_[n.tri];
      // corner e of t meets corner n.edge + 1 of the partner
      gluing_maps_[t][e] = Rigid::from_segments(P[e], P[(e + 1) % 3], Q[(n.edge + 1) % 3], Q[n.edge]);
    }
  }
}

void ConeSurface::build_vertices() {
  const int F = num_triangles();
  vertex_of_.assign(F, {-1, -1, -1});
  corner_offsets_.assign(F, {});
  auto successor = [&](CornerRef c) -> std::optional<CornerRef> {
    EdgeRef n = neighbor_[c.tri][(c.corner + 2) % 3];
    if (!n.valid()) return std::nullopt;
    return CornerRef{n.tri, n.edge};
  };
  auto predecessor = [&](CornerRef c) -> std::optional<CornerRef> {
    EdgeRef n = neighbor_[c.tri][c.corner];
    if (!n.valid()) return std::nullopt;
    return CornerRef{n.tri, (n.edge + 1) % 3};
  };
  for (int t = 0; t < F; t++) {
    for (int c0 = 0; c0 < 3; c0++) {
      if (vertex_of_[t][c0] >= 0) continue;
      CornerRef start{t, c0};
      bool boundary = false;
      for (CornerRef c = start;;) {
        auto p = predecessor(c);
        if (!p) {
          boundary = true;
          start = c;
          break;
        }
        if (*p == CornerRef{t, c0}) break;
        c = *p;
        if (c == CornerRef{t, c0}) break;
      }
      const int v = num_vertices();
      std::vector<CornerRef> fan;
      double offset = 0.;
      for (CornerRef c = start;;) {
        if (vertex_of_[c.tri][c.corner] >= 0) throw InputError("surface: non-manifold vertex");
        vertex_of_[c.tri][c.corner] = v;
        corner_offsets_[c.tri][c.corner] = offset;
        offset += corner_angles_[c.tri][c.corner];
        fan.push_back(c);
        auto s = successor(c);
        if (!s || *s == start) break;
        c = *s;
      }
      vertex_corners_.push_back(std::move(fan));
      boundary_vertex_.push_back(boundary);
      cone_angles_.push_back(offset);
    }
  }
}

void ConeSurface::build_homology() {
  const int F = num_triangles();
  const int G = num_gluings();
  cocycle_.assign(G, {0, 0});
  corner_class_.assign(F, {});
  generators_.clear();
  development_.assign(F, Rigid{});

  std::vector<bool> in_primal(G, false), in_dual(G, false);
  if (topology_ == Topology::Torus) {
    // primal spanning tree over vertices
    std::vector<std::vector<std::pair<int, int>>> adj(num_vertices());
    for (int g = 0; g < G; g++) {
      EdgeRef a = gluings_[g].a;
      int u = vertex(a.tri, a.edge), w = vertex(a.tri, (a.edge + 1) % 3);
      if (u == w) continue;
      adj[u].push_back({w, g});
      adj[w].push_back({u, g});
    }
    std::vector<bool> seen(num_vertices(), false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto [w, g] : adj[u]) {
        if (seen[w]) continue;
        seen[w] = true;
        in_primal[g] = true;
        q.push_back(w);
      }
    }
  }
  // dual spanning tree over triangles avoiding the primal tree
  {
    std::vector<bool> seen(F, false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
      int t = q.front();
      q.pop_front();
      for (int e = 0; e < 3; e++) {
        EdgeRef n = neighbor_[t][e];
        if (!n.valid()) continue;
        int g = gluing_of_[t][e];
        if (in_primal[g] || seen[n.tri]) continue;
        seen[n.tri] = true;
        in_dual[g] = true;
        development_[n.tri] = development_[t] * gluing_maps_[t][e].inverse();
        q.push_back(n.tri);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("surface: triangulation is disconnected");
  }
  if (topology_ != Topology::Torus) return;

  for (int g = 0; g < G; g++)
    if (!in_primal[g] && !in_dual[g]) generators_.push_back(g);
  if (generators_.size() != 2) throw InputError("surface: tree-cotree decomposition did not leave two generators");

  // signed incidence of crossings around each vertex
  std::vector<std::vector<std::pair<int, int>>> rotation(num_vertices());
  for (int v = 0; v < num_vertices(); v++) {
    for (CornerRef c : vertex_corners_[v]) {
      EdgeRef crossed{c.tri, (c.corner + 2) % 3};
      int g = gluing_of_[crossed.tri][crossed.edge];
      rotation[v].push_back({g, gluings_[g].a == crossed ? 1 : -1});
    }
  }
  std::vector<std::vector<int>> tree_edges_at(num_vertices());
  for (int g = 0; g < G; g++) {
    if (!in_primal[g]) continue;
    EdgeRef a = gluings_[g].a;
    tree_edges_at[vertex(a.tri, a.edge)].push_back(g);
    tree_edges_at[vertex(a.tri, (a.edge + 1) % 3)].push_back(g);
  }
  for (int k = 0; k < 2; k++) {
    std::vector<long> value(G, 0);
    std::vector<bool> known(G, true);
    for (int g = 0; g < G; g++)
      if (in_primal[g]) known[g] = false;
    value[generators_[k]] = 1;
    std::vector<int> unknown(num_vertices(), 0);
    for (int v = 0; v < num_vertices(); v++) unknown[v] = static_cast<int>(tree_edges_at[v].size());
    std::deque<int> leaves;
    for (int v = 0; v < num_vertices(); v++)
      if (unknown[v] == 1) leaves.push_back(v);
    while (!leaves.empty()) {
      int v = leaves.front();
      leaves.pop_front();
      if (unknown[v] != 1) continue;
      long sum = 0;
      int target = -1, coef = 0;
      for (auto [g, s] : rotation[v]) {
        if (known[g]) {
          sum += s * value[g];
        } else {
          target = g;
          coef += s;
        }
      }
      if (target < 0 || std::abs(coef) != 1) throw InputError("surface: inconsistent vertex rotation");
      value[target] = -sum / coef;
      known[target] = true;
      for (int u : {vertex(gluings_[target].a.tri, gluings_[target].a.edge),
                    vertex(gluings_[target].a.tri, (gluings_[target].a.edge + 1) % 3)}) {
        if (--unknown[u] == 1) leaves.push_back(u);
      }
    }
    for (int g = 0; g < G; g++) cocycle_[g][k] = value[g];
  }
  for (int v = 0; v < num_vertices(); v++) {
    HomologyClass acc{0, 0};
    for (CornerRef c : vertex_corners_[v]) {
      corner_class_[c.tri][c.corner] = acc;
      acc = acc + crossing_class({c.tri, (c.corner + 2) % 3});
    }
    if (!is_zero(acc)) throw InputError("surface: homology cocycle is not closed");
  }
}

HomologyClass ConeSurface::crossing_class(EdgeRef e) const {
  if (homology_rank() == 0) return {0, 0};
  int g = gluing_of_[e.tri][e.edge];
  return gluings_[g].a == e ? cocycle_[g] : -cocycle_[g];
}

std::vector<int> ConeSurface::marked_vertices() const {
  std::vector<int> out;
  for (CornerRef c : marked_) out.push_back(vertex(c));
  return out;
}

double ConeSurface::triangle_area(int tri) const {
  const auto& P = charts_[tri];
  return 0.5 * cross(P[1] - P[0], P[2] - P[0]);
}

double ConeSurface::area(AreaConvention convention) const {
  double a = 0.;
  for (int t = 0; t < num_triangles(); t++) {
    double density = 1.;
    if (const Norm2D* n = norm(t)) {
      AreaDensities d = area_densities(*n);
      density = convention == AreaConvention::HolmesThompson ? d.holmes_thompson : d.busemann_hausdorff;
    }
    a += triangle_area(t) * density;
  }
  return a;
}

bool ConeSurface::norm_field_is_parallel(double tol) const {
  for (const Gluing& g : gluings_) {
    const Norm2D *na = norm(g.a.tri), *nb = norm(g.b.tri);
    if (!na && !nb) continue;
    Norm2D ea = na ? *na : Norm2D::euclidean();
    Norm2D eb = nb ? *nb : Norm2D::euclidean();
    if (!approx_equal(ea.rotated(gluing_map(g.a).rot), eb, tol)) return false;
  }
  return true;
}

std::optional<int> ConeSurface::vertex_at(const SurfacePoint& p, double tol) const {
  const auto& P = charts_[p.tri];
  double scale = std::max({length(p.tri, 0), length(p.tri, 1), length(p.tri, 2)});
  for (int c = 0; c < 3; c++)
    if (distance(P[c], p.pos) <= tol * scale) return vertex(p.tri, c);
  return std::nullopt;
}

SurfacePoint ConeSurface::point_from_barycentric(int tri, std::array<double, 3> b) const {
  const auto& P = charts_[tri];
  double s = b[0] + b[1] + b[2];
  return {tri, (P[0] * b[0] + P[1] * b[1] + P[2] * b[2]) / s};
}

bool ConeSurface::contains(int tri, Vec2 p, double tol) const {
  const auto& P = charts_[tri];
  double scale = std::max({length(tri, 0), length(tri, 1), length(tri, 2)});
  for (int e = 0; e < 3; e++) {
    Vec2 d = P[(e + 1) % 3] - P[e];
    if (cross(d, p - P[e]) < -tol * scale * d.norm()) return false;
  }
  return true;
}

ConeSurface ConeSurface::scaled(double s) const {
  if (!(s > 0.)) throw InputError("surface: scale factor must be positive");
  auto tris = triangles_;
  for (auto& t : tris)
    for (double& l : t.lengths) l *= s;
  return ConeSurface(std::move(tris), gluings_, marked_, refinement_level_);
}

ConeSurface build_calabi_croke(double side) {
  if (!(side > 0.) || !std::isfinite(side)) throw InputError("build_calabi_croke: side must be positive");
  TriangleSpec t{{side, side, side}, std::nullopt};
  // triangle 0 has corners (x1, x2, x3), triangle 1 the mirror (x1, x3, x2)
  std::vector<Gluing> g{{{0, 0}, {1, 2}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 0}}};
  return ConeSurface({t, t}, g, {{0, 0}, {0, 1}, {0, 2}});
}

ConeSurface build_flat_torus_surface(const Lattice2D& lattice, const Norm2D& norm) {
  Vec2 a = lattice.a, b = lattice.b;
  Lattice2D::make(a, b);
  if (cross(a, b) < 0) b = -b;
  Vec2 d = a + b;
  auto chart_norm = [&](Vec2 first_edge) -> std::optional<Norm2D> {
    Vec2 u = first_edge.normalized();
    // chart = R * world with R taking first_edge to the x-axis
    return norm.rotated({u.x, -u.y});
  };
  bool euclid = norm.is_quadratic() && norm.gram() == SymMat2{1., 0., 1.};
  TriangleSpec t0{{a.norm(), b.norm(), d.norm()}, euclid ? std::nullopt : chart_norm(a)};
  TriangleSpec t1{{d.norm(), a.norm(), b.norm()}, euclid ? std::nullopt : chart_norm(d)};
  // t0 = (0, a, a+b), t1 = (0, a+b, b)
  std::vector<Gluing> g{{{0, 2}, {1, 0}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}};
  return ConeSurface({t0, t1}, g);
}

ConeSurface refine(const ConeSurface& surface, int levels) {
  if (levels < 0) throw InputError("refine: levels must be non-negative");
  ConeSurface current = surface;
  for (int level = 0; level < levels; level++) {
    const int F = current.num_triangles();
    std::vector<TriangleSpec> tris;
    tris.reserve(4 * F);
    std::vector<Gluing> glue;
    for (int t = 0; t < F; t++) {
      TriangleSpec half = current.triangles()[t];
      for (double& l : half.lengths) l *= 0.5;
      for (int k = 0; k < 4; k++) tris.push_back(half);
      glue.push_back({{4 * t + 0, 1}, {4 * t + 3, 1}});
      glue.push_back({{4 * t + 1, 2}, {4 * t + 3, 2}});
      glue.push_back({{4 * t + 2, 0}, {4 * t + 3, 0}});
    }
    for (const Gluing& g : current.gluings()) {
      auto [t, e] = g.a;
      auto [u, f] = g.b;
      glue.push_back({{4 * t + e, e}, {4 * u + (f + 1) % 3, f}});
      glue.push_back({{4 * t + (e + 1) % 3, e}, {4 * u + f, f}});
    }
    std::vector<CornerRef> marked;
    for (CornerRef c : current.marked_corners()) marked.push_back({4 * c.tri + c.corner, c.corner});
    current = ConeSurface(std::move(tris), std::move(glue), std::move(marked), current.refinement_level() + 1);
  }
  return current;
}

ConeSurface perturb(const ConeSurface& surface, std::uint64_t seed, double magnitude, bool preserve_marked_angles) {
  if (!(magnitude >= 0. && magnitude < 0.2)) throw InputError("perturb: magnitude must lie in [0, 0.2)");
  if (surface.refinement_level() < 1) throw InputError("perturb: surface must be refined at least once");
  std::set<int> marked;
  for (int v : surface.marked_vertices()) marked.insert(v);
  std::vector<bool> frozen_tri(surface.num_triangles(), false);
  if (preserve_marked_angles) {
    for (int t = 0; t < surface.num_triangles(); t++)
      for (int c = 0; c < 3; c++)
        if (marked.count(surface.vertex(t, c))) frozen_tri[t] = true;
  }
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int attempt = 0; attempt < 1000; attempt++) {
    auto tris = surface.triangles();
    for (const Gluing& g : surface.gluings()) {
      double factor = 1. + magnitude * (2. * uniform01() - 1.);
      if (frozen_tri[g.a.tri] || frozen_tri[g.b.tri]) continue;
      double l = tris[g.a.tri].lengths[g.a.edge] * factor;
      tris[g.a.tri].lengths[g.a.edge] = l;
      tris[g.b.tri].lengths[g.b.edge] = l;
    }
    bool ok = true;
    for (const auto& t : tris) {
      const auto& l = t.lengths;
      for (int e = 0; e < 3; e++) ok = ok && l[e] < (l[(e + 1) % 3] + l[(e + 2) % 3]) * (1. - 1e-9);
    }
    if (ok) return ConeSurface(std::move(tris), surface.gluings(), surface.marked_corners(), surface.refinement_level());
  }
  throw InputError("perturb: no admissible sample within 1000 attempts");
}

std::optional<Lattice2D> developed_lattice(const ConeSurface& surface, double tol) {
  if (surface.topology() != Topology::Torus) return std::nullopt;
  for (int v = 0; v < surface.num_vertices(); v++)
    if (std::abs(surface.cone_angle(v) - kTwoPi) > tol) return std::nullopt;
  const auto& dev = surface.tree_development();
  std::array<Vec2, 2> basis{};
  for (int k = 0; k < 2; k++) {
    int g = surface.homology_generators()[k];
    EdgeRef a = surface.gluings()[g].a, b = surface.gluings()[g].b;
    Rigid reached = dev[a.tri] * surface.gluing_map(a).inverse();
    if ((reached.rot - dev[b.tri].rot).norm() > 1e-9) return std::nullopt;
    Vec2 tau = reached.trans - dev[b.tri].trans;
    // crossing a -> b has class cocycle(g), which is e_k for generator k
    HomologyClass c = surface.crossing_class(a);
    if (c[k] != 1 || c[1 - k] != 0) return std::nullopt;
    basis[k] = tau;
  }
  return Lattice2D::make(basis[0], basis[1]);
}

double gauss_bonnet_defect(const ConeSurface& surface) {
  double curvature = 0.;
  for (int v = 0; v < surface.num_vertices(); v++) {
    if (surface.is_boundary_vertex(v)) continue;
    curvature += kTwoPi - surface.cone_angle(v);
  }
  return curvature - kTwoPi * surface.euler_characteristic();
}

DeckInvarianceCheck deck_invariance_check(const Norm2D& norm, double tol) {
  const Vec2 rot = unit_at_angle(kTwoPi / 3.);
  DeckInvarianceCheck out;
  std::vector<Vec2> probes;
  if (norm.is_quadratic()) {
    for (int k = 0; k < 64; k++) probes.push_back(unit_at_angle(k * std::numbers::pi / 64.));
  } else {
    probes = norm.vertices();
  }
  for (Vec2 v : probes) out.max_discrepancy = std::max(out.max_discrepancy, std::abs(norm(rotate(v, rot)) - norm(v)));
  out.image_norm_of_first_vertex = norm(rotate(probes.front(), rot)) / norm(probes.front());
  out.invariant = out.max_discrepancy <= tol * norm.circumradius();
  return out;
}

std::string to_json_string(const ConeSurface& s) {
  std::string out = "{\"triangles\":[";
  char buf[64];
  for (int t = 0; t < s.num_triangles(); t++) {
    if (t) out += ",";
    out += "{\"lengths\":[";
    for (int e = 0; e < 3; e++) {
      std::snprintf(buf, sizeof buf, "%.17g", s.length(t, e));
      if (e) out += ",";
      out += buf;
    }
    out += "],\"norm\":";
    out += s.norm(t) ? to_json(*s.norm(t)).dump() : "null";
    out += "}";
  }
  out += "],\"gluings\":[";
  for (int g = 0; g < s.num_gluings(); g++) {
    const Gluing& gl = s.gluings()[g];
    std::snprintf(buf, sizeof buf, "%s[%d,%d,%d,%d,1]", g ? "," : "", gl.a.tri, gl.a.edge, gl.b.tri, gl.b.edge);
    out += buf;
  }
  out += "],\"marked\":[";
  auto mv = s.marked_vertices();
  for (size_t i = 0; i < mv.size(); i++) out += (i ? "," : "") + std::to_string(mv[i]);
  out += "],\"refinement_level\":" + std::to_string(s.refinement_level()) + "}";
  return out;
}

ConeSurface surface_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("surface: invalid JSON: ") + e.what());
  }
  try {
    std::vector<TriangleSpec> tris;
    for (const auto& t : j.at("triangles")) {
      TriangleSpec spec;
      for (int e = 0; e < 3; e++) spec.lengths[e] = t.at("lengths").at(e).get<double>();
      if (t.contains("norm") && !t.at("norm").is_null()) spec.norm = norm_from_json(t.at("norm"));
      tris.push_back(std::move(spec));
    }
    std::vector<Gluing> glue;
    for (const auto& g : j.at("gluings")) {
      if (g.size() != 5) throw InputError("surface: gluing entries are [t, e, t', e', orient]");
      if (g.at(4).get<int>() != 1) throw InputError("surface: only orientation-reversing gluings (orient = 1) are supported");
      glue.push_back({{g.at(0).get<int>(), g.at(1).get<int>()}, {g.at(2).get<int>(), g.at(3).get<int>()}});
    }
    int level = j.contains("refinement_level") ? j.at("refinement_level").get<int>() : 0;
    // marked vertices refer to the numbering of the unmarked surface
    ConeSurface bare(tris, glue, {}, level);
    std::vector<CornerRef> marked;
    if (j.contains("marked")) {
      for (const auto& v : j.at("marked")) {
        int idx = v.get<int>();
        if (idx < 0 || idx >= bare.num_vertices()) throw InputError("surface: marked vertex index out of range");
        marked.push_back(bare.vertex_corners(idx).front());
      }
    }
    return ConeSurface(std::move(tris), std::move(glue), std::move(marked), level);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("surface: malformed JSON: ") + e.what());
  }
}

std::string digest(const ConeSurface& surface) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : to_json_string(surface)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace sysw
