#include "sysw/geodesic.hpp"

#include "sysw/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <set>
#include <tuple>

namespace sysw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2. * std::numbers::pi;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double t = ab.norm2() > 0. ? std::clamp(dot(p - a, ab) / ab.norm2(), 0., 1.) : 0.;
  return distance(p, a + ab * t);
}

double surface_scale(const ConeSurface& s) {
  double m = 0.;
  for (int t = 0; t < s.num_triangles(); t++)
    for (int e = 0; e < 3; e++) m = std::max(m, s.length(t, e));
  return m;
}

} // namespace

struct GeodesicEngine::Impl {
  struct Root {
    int tri;
    Vec2 pos;
    int corner;
    HomologyClass cls0;
  };
  struct Window {
    int tri;
    int edge;
    double ta, tb;
    Vec2 apex;
    Rigid frame; // root chart -> this chart
    HomologyClass cls;
    int parent;
    int root;
  };
  // vertex hits: target = vertex index, corner = hit corner; point hits: target = target index
  struct Hit {
    int target;
    CornerRef corner;
    double length;
    HomologyClass cls;
    int window;
    int root;
  };
  struct Visibility {
    double radius = -1.;
    std::vector<Root> roots;
    std::vector<Window> windows;
    std::vector<Hit> hits;
    std::vector<Hit> point_hits;
  };

  const ConeSurface& s;
  double length_lower_factor = 1.; // norm(v) >= |v| * factor
  double scale = 1.;
  std::vector<Visibility> vertex_vis;
  Stats* stats;
  static constexpr long kWindowLimit = 40'000'000;

  Impl(const ConeSurface& surface, Stats* st) : s(surface), stats(st) {
    if (s.has_norm_field()) {
      if (!s.norm_field_is_parallel(1e-9))
        throw InputError("geodesic engine: norm field must be parallel across every gluing");
      double r = 0.;
      for (int t = 0; t < s.num_triangles(); t++) r = std::max(r, s.norm(t) ? s.norm(t)->circumradius() : 1.);
      length_lower_factor = 1. / r;
    }
    scale = surface_scale(s);
    vertex_vis.resize(s.num_vertices());
  }

  std::vector<SurfacePoint> representations(const SurfacePoint& q) const {
    std::vector<SurfacePoint> reps{q};
    const auto& P = s.chart(q.tri);
    for (int k = 0; k < 3; k++) {
      Vec2 a = P[k], b = P[(k + 1) % 3];
      if (point_segment_distance(q.pos, a, b) < 1e-12 * scale) {
        EdgeRef n = s.neighbor({q.tri, k});
        if (n.valid()) reps.push_back({n.tri, s.gluing_map({q.tri, k}).apply(q.pos)});
      }
    }
    return reps;
  }

  void record_vertex_hit(Visibility& vis, int tri, int corner, Vec2 apex, const HomologyClass& cls, int window, int root,
                         double bound) {
    Vec2 o = s.chart(tri)[corner];
    double len = s.chart_length(tri, o - apex);
    if (len > bound) return;
    HomologyClass c = s.homology_rank() ? cls - s.corner_class({tri, corner}) : cls;
    vis.hits.push_back({s.vertex(tri, corner), {tri, corner}, len, c, window, root});
  }

  void record_point_hits(Visibility& vis, const std::vector<SurfacePoint>* targets, int tri, Vec2 apex,
                         const HomologyClass& cls, int window, int root, double bound, Vec2 da, Vec2 db, bool wedge) {
    if (!targets) return;
    for (size_t i = 0; i < targets->size(); i++) {
      const SurfacePoint& q = (*targets)[i];
      if (q.tri != tri) continue;
      Vec2 w = q.pos - apex;
      if (wedge) {
        double tol = 1e-12;
        if (cross(db, w) < -tol * db.norm() * w.norm() || cross(w, da) < -tol * w.norm() * da.norm()) continue;
      }
      double len = s.chart_length(tri, w);
      if (len > bound) continue;
      vis.point_hits.push_back({static_cast<int>(i), {tri, -1}, len, cls, window, root});
    }
  }

  void add_child(Visibility& vis, std::vector<int>& stack, int parent, int root, int tri, int edge, double l0, double l1,
                 Vec2 apex, const Rigid& frame, const HomologyClass& cls, double bound) {
    EdgeRef n = s.neighbor({tri, edge});
    if (!n.valid()) return;
    const auto& P = s.chart(tri);
    Vec2 X0 = P[edge], X1 = P[(edge + 1) % 3];
    Vec2 a = X0 + (X1 - X0) * l0, b = X0 + (X1 - X0) * l1;
    if (point_segment_distance(apex, a, b) * length_lower_factor > bound) return;
    Vec2 ra = a - apex, rb = b - apex;
    if (std::abs(cross(ra, rb)) <= 1e-14 * ra.norm() * rb.norm()) return;
    Rigid g = s.gluing_map({tri, edge});
    HomologyClass c = s.homology_rank() ? cls + s.crossing_class({tri, edge}) : cls;
    vis.windows.push_back({n.tri, n.edge, 1. - l1, 1. - l0, g.apply(apex), g * frame, c, parent, root});
    stack.push_back(static_cast<int>(vis.windows.size()) - 1);
    if (++stats->windows > kWindowLimit) throw SearchExhausted("geodesic engine: window limit reached");
  }

  void emit(Visibility& vis, std::vector<int>& stack, const Root& r, int skip_edge, const std::vector<SurfacePoint>* targets,
            double bound) {
    vis.roots.push_back(r);
    int root = static_cast<int>(vis.roots.size()) - 1;
    const auto& P = s.chart(r.tri);
    Rigid id{};
    if (r.corner >= 0) {
      int c = r.corner;
      record_vertex_hit(vis, r.tri, (c + 1) % 3, r.pos, r.cls0, -1, root, bound);
      record_vertex_hit(vis, r.tri, (c + 2) % 3, r.pos, r.cls0, -1, root, bound);
      record_point_hits(vis, targets, r.tri, r.pos, r.cls0, -1, root, bound, {}, {}, false);
      add_child(vis, stack, -1, root, r.tri, (c + 1) % 3, 0., 1., r.pos, id, r.cls0, bound);
      return;
    }
    for (int c = 0; c < 3; c++)
      if (sysw::distance(P[c], r.pos) > 0.) record_vertex_hit(vis, r.tri, c, r.pos, r.cls0, -1, root, bound);
    record_point_hits(vis, targets, r.tri, r.pos, r.cls0, -1, root, bound, {}, {}, false);
    for (int k = 0; k < 3; k++)
      if (k != skip_edge) add_child(vis, stack, -1, root, r.tri, k, 0., 1., r.pos, id, r.cls0, bound);
  }

  void run(Visibility& vis, std::vector<int>& stack, const std::vector<SurfacePoint>* targets, double bound) {
    while (!stack.empty()) {
      int wi = stack.back();
      stack.pop_back();
      const Window w = vis.windows[wi];
      const auto& P = s.chart(w.tri);
      int e = w.edge;
      Vec2 E0 = P[e], E1 = P[(e + 1) % 3];
      Vec2 A = E0 + (E1 - E0) * w.ta, B = E0 + (E1 - E0) * w.tb;
      Vec2 da = A - w.apex, db = B - w.apex;
      int o = (e + 2) % 3;
      Vec2 wo = P[o] - w.apex;
      const double tol = 1e-12;
      if (cross(db, wo) >= -tol * db.norm() * wo.norm() && cross(wo, da) >= -tol * wo.norm() * da.norm())
        record_vertex_hit(vis, w.tri, o, w.apex, w.cls, wi, w.root, bound);
      record_point_hits(vis, targets, w.tri, w.apex, w.cls, wi, w.root, bound, da, db, true);
      for (int ce : {(e + 1) % 3, (e + 2) % 3}) {
        Vec2 X0 = P[ce], X1 = P[(ce + 1) % 3];
        Vec2 dX = X1 - X0;
        double lo = 0., hi = 1.;
        // cross(db, X(l) - apex) >= 0 and cross(X(l) - apex, da) >= 0
        auto clip = [&](double c0, double c1) {
          if (std::abs(c1) < 1e-300) {
            if (c0 < 0.) hi = -1.;
            return;
          }
          double root = -c0 / c1;
          if (c1 > 0.) lo = std::max(lo, root);
          else hi = std::min(hi, root);
        };
        clip(cross(db, X0 - w.apex), cross(db, dX));
        clip(cross(X0 - w.apex, da), cross(dX, da));
        if (hi - lo <= 1e-12) continue;
        add_child(vis, stack, wi, w.root, w.tri, ce, lo, hi, w.apex, w.frame, w.cls, bound);
      }
    }
  }

  Visibility point_visibility(const SurfacePoint& p, double bound, const std::vector<SurfacePoint>* targets) {
    Visibility vis;
    vis.radius = bound;
    std::vector<int> stack;
    const auto& P = s.chart(p.tri);
    int on_edge = -1;
    for (int k = 0; k < 3; k++)
      if (point_segment_distance(p.pos, P[k], P[(k + 1) % 3]) < 1e-12 * scale) on_edge = k;
    if (on_edge >= 0 && s.neighbor({p.tri, on_edge}).valid()) {
      emit(vis, stack, {p.tri, p.pos, -1, {0, 0}}, on_edge, targets, bound);
      EdgeRef n = s.neighbor({p.tri, on_edge});
      HomologyClass c0 = s.homology_rank() ? s.crossing_class({p.tri, on_edge}) : HomologyClass{0, 0};
      emit(vis, stack, {n.tri, s.gluing_map({p.tri, on_edge}).apply(p.pos), -1, c0}, n.edge, targets, bound);
    } else {
      emit(vis, stack, {p.tri, p.pos, -1, {0, 0}}, -1, targets, bound);
    }
    run(vis, stack, targets, bound);
    return vis;
  }

  const Visibility& vertex_visibility(int v, double radius) {
    Visibility& vis = vertex_vis[v];
    if (vis.radius >= radius) return vis;
    double r = std::max(radius, vis.radius * 1.5);
    vis = Visibility{};
    vis.radius = r;
    stats->visibility_builds++;
    std::vector<int> stack;
    for (CornerRef c : s.vertex_corners(v)) {
      HomologyClass c0 = s.homology_rank() ? s.corner_class(c) : HomologyClass{0, 0};
      emit(vis, stack, {c.tri, s.chart(c.tri)[c.corner], c.corner, c0}, -1, nullptr, r);
    }
    run(vis, stack, nullptr, r);
    return vis;
  }

  // Straight piece from the root of `h` to its target position.
  GeodesicPath piece(const Visibility& vis, const Hit& h, Vec2 target, int target_corner) const {
    std::vector<const Window*> chain;
    for (int wi = h.window; wi >= 0; wi = vis.windows[wi].parent) chain.push_back(&vis.windows[wi]);
    std::reverse(chain.begin(), chain.end());
    const Root& r = vis.roots[h.root];
    Rigid last = chain.empty() ? Rigid{} : chain.back()->frame;
    Vec2 s0 = r.pos, o0 = last.inverse().apply(target);
    std::vector<double> u(chain.size() + 2, 0.);
    u.back() = 1.;
    for (size_t i = 0; i < chain.size(); i++) {
      const Window& w = *chain[i];
      const auto& P = s.chart(w.tri);
      Vec2 a = w.frame.apply(s0), b = w.frame.apply(o0);
      Vec2 A = P[w.edge], E = P[(w.edge + 1) % 3] - A;
      double den = cross(b - a, E);
      double ui = den != 0. ? cross(A - a, E) / den : u[i];
      u[i + 1] = std::clamp(ui, u[i], 1.);
    }
    GeodesicPath path;
    auto line = [&](double t) { return s0 + (o0 - s0) * t; };
    for (size_t i = 0; i <= chain.size(); i++) {
      int tri = i == 0 ? r.tri : chain[i - 1]->tri;
      Rigid f = i == 0 ? Rigid{} : chain[i - 1]->frame;
      PathSegment seg{tri, f.apply(line(u[i])), f.apply(line(u[i + 1])), -1, -1, -1};
      if (i == 0) {
        seg.entry = r.pos;
        seg.entry_corner = r.corner;
      }
      if (i < chain.size()) {
        seg.exit_edge = s.neighbor({chain[i]->tri, chain[i]->edge}).edge;
      } else {
        seg.exit = target;
        seg.exit_corner = target_corner;
      }
      path.segments.push_back(seg);
    }
    path.total_length = h.length;
    path.terminal = Terminal::Endpoint;
    return path;
  }

  GeodesicPath vertex_piece(const Visibility& vis, const Hit& h) const {
    return piece(vis, h, s.chart(h.corner.tri)[h.corner.corner], h.corner.corner);
  }
};

GeodesicEngine::GeodesicEngine(const ConeSurface& surface)
    : surface_(&surface), impl_(std::make_unique<Impl>(surface, &stats_)) {}
GeodesicEngine::~GeodesicEngine() = default;
GeodesicEngine::GeodesicEngine(GeodesicEngine&& o) noexcept
    : surface_(o.surface_), impl_(std::move(o.impl_)), stats_(o.stats_) {
  if (impl_) impl_->stats = &stats_;
}
GeodesicEngine& GeodesicEngine::operator=(GeodesicEngine&& o) noexcept {
  surface_ = o.surface_;
  impl_ = std::move(o.impl_);
  stats_ = o.stats_;
  if (impl_) impl_->stats = &stats_;
  return *this;
}

SurfacePoint vertex_point(const ConeSurface& surface, int v) { return surface.corner_point(surface.vertex_corners(v).front()); }

std::optional<GeodesicPath> GeodesicEngine::shortest_path(const SurfacePoint& p, const SurfacePoint& q, double bound) {
  using Visibility = Impl::Visibility;
  using Hit = Impl::Hit;
  if (!(bound > 0.)) throw InputError("shortest_path: bound must be positive");
  Impl& I = *impl_;
  const ConeSurface& s = *surface_;
  std::optional<int> vp = s.vertex_at(p), vq = s.vertex_at(q);
  if (vp && vq && *vp == *vq) {
    GeodesicPath g;
    g.segments.push_back({p.tri, p.pos, p.pos, -1, -1, -1});
    return g;
  }

  const std::vector<SurfacePoint> q_reps = vq ? std::vector<SurfacePoint>{} : I.representations(q);
  Visibility p_vis;
  const Visibility* source = nullptr;
  if (vp) {
    source = &I.vertex_visibility(*vp, bound);
  } else {
    p_vis = I.point_visibility(p, bound, vq ? nullptr : &q_reps);
    source = &p_vis;
  }
  Visibility q_vis;
  std::vector<double> q_direct(s.num_vertices(), kInf);
  std::vector<int> q_hit(s.num_vertices(), -1);
  if (!vq) {
    q_vis = I.point_visibility(q, bound, nullptr);
    for (size_t i = 0; i < q_vis.hits.size(); i++) {
      const Hit& h = q_vis.hits[i];
      if (h.length < q_direct[h.target]) {
        q_direct[h.target] = h.length;
        q_hit[h.target] = static_cast<int>(i);
      }
    }
  }

  double best = kInf;
  // how the best path ends: -1 direct from the source, else the last vertex before q
  int best_last = -2;
  int best_direct_hit = -1;
  if (!vq) {
    for (size_t i = 0; i < source->point_hits.size(); i++)
      if (source->point_hits[i].length < best) {
        best = source->point_hits[i].length;
        best_last = -1;
        best_direct_hit = static_cast<int>(i);
      }
    if (vp && q_direct[*vp] < best) {
      best = q_direct[*vp];
      best_last = *vp;
    }
  }

  const int V = s.num_vertices();
  std::vector<double> dist(V, kInf);
  struct Pred {
    int from = -2; // -1: source
    const Visibility* vis = nullptr;
    int hit = -1;
  };
  std::vector<Pred> pred(V);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  auto relax = [&](int w, double d, int from, const Visibility* vis, int hit) {
    if (d < dist[w] && d <= bound) {
      dist[w] = d;
      pred[w] = {from, vis, hit};
      heap.push({d, w});
    }
  };
  if (vp) {
    dist[*vp] = 0.;
    heap.push({0., *vp});
  } else {
    for (size_t i = 0; i < source->hits.size(); i++) relax(source->hits[i].target, source->hits[i].length, -1, source, static_cast<int>(i));
  }
  std::vector<bool> done(V, false);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u] || d > dist[u]) continue;
    done[u] = true;
    if (d >= best) break;
    if (vq && u == *vq) {
      best = d;
      best_last = u;
      break;
    }
    if (!vq && d + q_direct[u] < best) {
      best = d + q_direct[u];
      best_last = u;
    }
    double radius = std::min(bound, best) - d;
    if (radius <= 0.) continue;
    const Visibility& vis = I.vertex_visibility(u, radius);
    for (size_t i = 0; i < vis.hits.size(); i++) {
      const Hit& h = vis.hits[i];
      if (h.length > radius) continue;
      relax(h.target, d + h.length, u, &vis, static_cast<int>(i));
    }
  }
  if (best_last == -2 || best > bound) return std::nullopt;

  GeodesicPath path;
  if (best_last == -1) {
    const Hit& h = source->point_hits[best_direct_hit];
    path = I.piece(*source, h, q_reps[h.target].pos, -1);
  } else {
    std::vector<GeodesicPath> pieces;
    if (!vq) {
      const Hit& h = q_vis.hits[q_hit[best_last]];
      pieces.push_back(reversed(s, I.vertex_piece(q_vis, h)));
    }
    for (int w = best_last; pred[w].from != -2;) {
      const Pred& pr = pred[w];
      pieces.push_back(I.vertex_piece(*pr.vis, pr.vis->hits[pr.hit]));
      if (pr.from == -1) break;
      w = pr.from;
    }
    std::reverse(pieces.begin(), pieces.end());
    for (auto& pc : pieces) path = path.empty() ? pc : concatenate(path, pc);
  }
  path.total_length = best;
  path.terminal = Terminal::Endpoint;
  return path;
}

std::optional<double> GeodesicEngine::distance(const SurfacePoint& p, const SurfacePoint& q, double bound) {
  auto path = shortest_path(p, q, bound);
  if (!path) return std::nullopt;
  return path->total_length;
}

std::optional<double> GeodesicEngine::vertex_distance(int v, int w, double bound) {
  return distance(vertex_point(*surface_, v), vertex_point(*surface_, w), bound);
}

std::optional<GeodesicPath> GeodesicEngine::shortest_noncontractible_loop(int base, double bound,
                                                                         const std::vector<int>& forbidden) {
  using Visibility = Impl::Visibility;
  Impl& I = *impl_;
  const ConeSurface& s = *surface_;
  if (s.homology_rank() == 0) throw InputError("shortest_noncontractible_loop: surface has no homology");
  std::set<int> banned(forbidden.begin(), forbidden.end());
  using State = std::tuple<int, long, long>;
  struct Pred {
    State from;
    const Visibility* vis;
    int hit;
  };
  std::map<State, double> dist;
  std::map<State, Pred> pred;
  using Item = std::pair<double, State>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  State start{base, 0, 0};
  dist[start] = 0.;
  heap.push({0., start});
  std::set<State> done;
  std::optional<State> found;
  while (!heap.empty()) {
    auto [d, st] = heap.top();
    heap.pop();
    if (done.count(st) || d > dist[st]) continue;
    done.insert(st);
    auto [u, c0, c1] = st;
    if (u == base && (c0 != 0 || c1 != 0)) {
      found = st;
      break;
    }
    if (st != start && banned.count(u)) continue;
    double radius = bound - d;
    if (radius <= 0.) continue;
    const Visibility& vis = I.vertex_visibility(u, radius);
    for (size_t i = 0; i < vis.hits.size(); i++) {
      const auto& h = vis.hits[i];
      if (h.length > radius) continue;
      if (banned.count(h.target) && h.target != base) continue;
      State next{h.target, c0 + h.cls[0], c1 + h.cls[1]};
      double nd = d + h.length;
      auto it = dist.find(next);
      if (it == dist.end() || nd < it->second) {
        dist[next] = nd;
        pred[next] = {st, &vis, static_cast<int>(i)};
        heap.push({nd, next});
      }
    }
  }
  if (!found) return std::nullopt;
  std::vector<GeodesicPath> pieces;
  for (State st = *found; st != start;) {
    const Pred& pr = pred.at(st);
    pieces.push_back(I.vertex_piece(*pr.vis, pr.vis->hits[pr.hit]));
    st = pr.from;
  }
  std::reverse(pieces.begin(), pieces.end());
  GeodesicPath path;
  for (auto& pc : pieces) path = path.empty() ? pc : concatenate(path, pc);
  path.total_length = dist[*found];
  path.terminal = Terminal::Endpoint;
  return path;
}

std::optional<double> distance(const ConeSurface& surface, const SurfacePoint& p, const SurfacePoint& q, double bound) {
  GeodesicEngine engine(surface);
  return engine.distance(p, q, bound);
}

namespace {

double edge_graph_distance(const ConeSurface& s, int from, int to) {
  std::vector<std::vector<std::pair<int, double>>> adj(s.num_vertices());
  for (const Gluing& g : s.gluings()) {
    int u = s.vertex(g.a.tri, g.a.edge), w = s.vertex(g.a.tri, (g.a.edge + 1) % 3);
    adj[u].push_back({w, s.length(g.a.tri, g.a.edge)});
    adj[w].push_back({u, s.length(g.a.tri, g.a.edge)});
  }
  std::vector<double> d(s.num_vertices(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  d[from] = 0.;
  q.push({0., from});
  while (!q.empty()) {
    auto [du, u] = q.top();
    q.pop();
    if (du > d[u]) continue;
    for (auto [w, l] : adj[u])
      if (du + l < d[w]) {
        d[w] = du + l;
        q.push({d[w], w});
      }
  }
  return d[to];
}

} // namespace

double min_vertex_distance(const ConeSurface& sphere) {
  std::vector<int> m = sphere.marked_vertices();
  if (m.size() < 2) throw InputError("min_vertex_distance: need at least two marked vertices");
  GeodesicEngine engine(sphere);
  double best = kInf;
  for (size_t i = 0; i < m.size(); i++)
    for (size_t j = i + 1; j < m.size(); j++) {
      if (m[i] == m[j]) return 0.;
      double ub = edge_graph_distance(sphere, m[i], m[j]);
      auto d = engine.vertex_distance(m[i], m[j], ub * (1. + 1e-12));
      best = std::min(best, d ? *d : ub);
    }
  return best;
}

TorusSystole torus_systole(const ConeSurface& torus) {
  if (torus.topology() != Topology::Torus) throw InputError("torus_systole: surface is not a torus");
  GeodesicEngine engine(torus);
  TorusSystole out;
  auto lattice = developed_lattice(torus);
  if (lattice) {
    Norm2D n = torus.norm(0) ? *torus.norm(0) : Norm2D::euclidean();
    SystoleResult sv = shortest_vector({*lattice, n});
    auto loop = engine.shortest_noncontractible_loop(0, sv.length * (1. + 1e-9) + 1e-12);
    if (!loop) throw SearchExhausted("torus_systole: no loop realizes the lattice systole");
    out.length = sv.length;
    out.loop = *loop;
    out.cls = path_class(torus, *loop);
    out.base_vertex = 0;
    return out;
  }
  double area = torus.area(AreaConvention::HolmesThompson);
  // Loewner (quadratic) and its Finsler analogue bound the systole from above
  double bound = torus.has_norm_field() ? std::sqrt(std::numbers::pi * area / 2.) : std::sqrt(2. * area / std::sqrt(3.));
  bound = bound * (1. + 1e-9) + 1e-12;
  std::optional<GeodesicPath> best;
  for (int v = 0; v < torus.num_vertices(); v++) {
    auto loop = engine.shortest_noncontractible_loop(v, best ? best->total_length : bound);
    if (loop && (!best || loop->total_length < best->total_length)) {
      best = loop;
      out.base_vertex = v;
    }
  }
  if (!best) throw SearchExhausted("torus_systole: no noncontractible loop below the Loewner bound");
  out.length = best->total_length;
  out.loop = *best;
  out.cls = path_class(torus, *best);
  return out;
}

PointedSystole pointed_systole_punctured(const CoverMap& cover, int i, double budget) {
  if (i < 0 || i > 2) throw InputError("pointed_systole_punctured: index must be 0, 1 or 2");
  const auto& ram = cover.ramification_points();
  GeodesicEngine engine(cover.torus());
  auto loop = engine.shortest_noncontractible_loop(ram[i], budget, {ram[(i + 1) % 3], ram[(i + 2) % 3]});
  if (!loop) throw SearchExhausted("pointed_systole_punctured: no noncontractible loop within the budget");
  PointedSystole out;
  out.length = loop->total_length;
  out.torus_loop = *loop;
  out.sphere_loop = project(cover, *loop);
  return out;
}

GeodesicPath project(const CoverMap& cover, const GeodesicPath& torus_path) {
  return map_triangles(torus_path, [&](int t) { return cover.sphere_triangle(t); });
}

GeodesicPath off_vertex_systolic_loop(const ConeSurface& torus) {
  auto lattice = developed_lattice(torus);
  if (!lattice) throw InputError("off_vertex_systolic_loop: torus is not flat");
  Norm2D n = torus.norm(0) ? *torus.norm(0) : Norm2D::euclidean();
  SystoleResult sv = shortest_vector({*lattice, n});
  Vec2 dir = sv.vector.normalized();
  Vec2 normal = dir.perp();
  double spacing = std::abs(lattice->covolume()) / sv.vector.norm();
  const auto& dev = torus.tree_development();
  std::vector<double> offsets;
  for (int v = 0; v < torus.num_vertices(); v++) {
    CornerRef c = torus.vertex_corners(v).front();
    double o = dot(dev[c.tri].apply(torus.chart(c.tri)[c.corner]), normal);
    offsets.push_back(o - spacing * std::floor(o / spacing));
  }
  std::sort(offsets.begin(), offsets.end());
  double target = 0., widest = -1.;
  for (size_t k = 0; k < offsets.size(); k++) {
    double lo = offsets[k], hi = k + 1 < offsets.size() ? offsets[k + 1] : offsets[0] + spacing;
    if (hi - lo > widest) {
      widest = hi - lo;
      target = 0.5 * (lo + hi);
    }
  }
  for (int t = 0; t < torus.num_triangles(); t++) {
    std::array<Vec2, 3> Q;
    std::array<double, 3> off;
    for (int c = 0; c < 3; c++) {
      Q[c] = dev[t].apply(torus.chart(t)[c]);
      off[c] = dot(Q[c], normal);
    }
    double lo = *std::min_element(off.begin(), off.end()), hi = *std::max_element(off.begin(), off.end());
    double level = target + spacing * std::ceil((lo - target) / spacing);
    if (!(level > lo + 1e-9 * spacing && level < hi - 1e-9 * spacing)) continue;
    std::vector<Vec2> pts;
    for (int e = 0; e < 3; e++) {
      double a = off[e] - level, b = off[(e + 1) % 3] - level;
      if ((a < 0.) != (b < 0.)) pts.push_back(Q[e] + (Q[(e + 1) % 3] - Q[e]) * (a / (a - b)));
    }
    if (pts.size() != 2) continue;
    Rigid back = dev[t].inverse();
    SurfacePoint start{t, back.apply(0.5 * (pts[0] + pts[1]))};
    GeodesicPath loop = trace(torus, start, back.apply_dir(dir), n(sv.vector));
    loop.terminal = Terminal::Endpoint;
    return loop;
  }
  throw InputError("off_vertex_systolic_loop: no vertex-free strip found");
}

} // namespace sysw
