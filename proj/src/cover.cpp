#include "sysw/cover.hpp"

#include "sysw/errors.hpp"

#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace sysw {

namespace {

int mod3(long x) { return static_cast<int>(((x % 3) + 3) % 3); }

struct EdgeStep {
  int to;
  int gluing;
};

// Shortest edge path between two sphere vertices, as the gluing sequence from `from` to `to`.
std::vector<std::pair<int, int>> shortest_edge_path(const ConeSurface& s, int from, int to) {
  std::vector<std::vector<EdgeStep>> adj(s.num_vertices());
  for (int g = 0; g < s.num_gluings(); g++) {
    EdgeRef a = s.gluings()[g].a;
    int u = s.vertex(a.tri, a.edge), w = s.vertex(a.tri, (a.edge + 1) % 3);
    if (u == w) continue;
    adj[u].push_back({w, g});
    adj[w].push_back({u, g});
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(s.num_vertices(), inf);
  std::vector<std::pair<int, int>> parent(s.num_vertices(), {-1, -1});
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  dist[from] = 0.;
  q.push({0., from});
  while (!q.empty()) {
    auto [d, u] = q.top();
    q.pop();
    if (d > dist[u]) continue;
    for (auto [w, g] : adj[u]) {
      EdgeRef a = s.gluings()[g].a;
      double nd = d + s.length(a.tri, a.edge);
      if (nd < dist[w]) {
        dist[w] = nd;
        parent[w] = {u, g};
        q.push({nd, w});
      }
    }
  }
  if (dist[to] == inf) throw InputError("ramified_cover: marked vertices are not connected by edges");
  std::vector<std::pair<int, int>> path; // (vertex, gluing reaching it)
  for (int v = to; v != from; v = parent[v].first) path.push_back({v, parent[v].second});
  path.push_back({from, -1});
  std::reverse(path.begin(), path.end());
  return path;
}

} // namespace

int CoverMap::deck_vertex(int v, int power) const {
  CornerRef c = torus_.vertex_corners(v).front();
  return torus_.vertex(deck(c.tri, power), c.corner);
}

int CoverMap::monodromy(int sphere_vertex) const {
  long acc = 0;
  for (CornerRef c : sphere_.vertex_corners(sphere_vertex)) {
    EdgeRef crossed{c.tri, (c.corner + 2) % 3};
    int g = sphere_.gluing_index(crossed);
    acc += sphere_.gluings()[g].a == crossed ? shift_[g] : -shift_[g];
  }
  return mod3(acc);
}

CoverMap ramified_cover(const ConeSurface& sphere) {
  if (sphere.topology() != Topology::Sphere) throw InputError("ramified_cover: surface is not a sphere");
  std::vector<int> marked = sphere.marked_vertices();
  if (marked.size() != 3 || std::set<int>(marked.begin(), marked.end()).size() != 3)
    throw InputError("ramified_cover: sphere needs three distinct marked vertices");

  const int F = sphere.num_triangles();
  std::vector<long> shift(sphere.num_gluings(), 0);
  std::array<std::vector<int>, 2> cut_paths;
  for (int k = 0; k < 2; k++) {
    auto path = shortest_edge_path(sphere, marked[k + 1], marked[0]);
    for (size_t i = 1; i < path.size(); i++) {
      int u = path[i - 1].first, w = path[i].first, g = path[i].second;
      EdgeRef a = sphere.gluings()[g].a;
      bool along_a = sphere.vertex(a.tri, a.edge) == u && sphere.vertex(a.tri, (a.edge + 1) % 3) == w;
      shift[g] += along_a ? -1 : 1;
    }
    for (auto [v, g] : path) cut_paths[k].push_back(v);
  }

  std::vector<TriangleSpec> tris;
  tris.reserve(3 * F);
  for (int s = 0; s < 3; s++)
    for (const TriangleSpec& t : sphere.triangles()) tris.push_back(t);
  std::vector<Gluing> glue;
  for (int s = 0; s < 3; s++) {
    for (int g = 0; g < sphere.num_gluings(); g++) {
      const Gluing& gl = sphere.gluings()[g];
      glue.push_back({{s * F + gl.a.tri, gl.a.edge}, {mod3(s + shift[g]) * F + gl.b.tri, gl.b.edge}});
    }
  }
  std::vector<CornerRef> torus_marked;
  for (CornerRef c : sphere.marked_corners()) torus_marked.push_back(c);

  ConeSurface torus(std::move(tris), std::move(glue), torus_marked, sphere.refinement_level());
  if (torus.topology() != Topology::Torus)
    throw InputError("ramified_cover: cut arcs do not produce a torus (Euler characteristic " +
                     std::to_string(torus.euler_characteristic()) + ")");
  CoverMap cover(sphere, std::move(torus));
  for (long v : shift) cover.shift_.push_back(mod3(v));
  cover.cut_paths_ = std::move(cut_paths);
  for (int i = 0; i < 3; i++) {
    CornerRef c = sphere.marked_corners()[i];
    cover.ramification_[i] = cover.torus_.vertex(c);
  }
  for (int v = 0; v < sphere.num_vertices(); v++) {
    bool is_marked = std::find(marked.begin(), marked.end(), v) != marked.end();
    if ((cover.monodromy(v) != 0) != is_marked)
      throw InputError("ramified_cover: branching is not concentrated at the marked vertices");
  }
  return cover;
}

DeckReport check_deck(const CoverMap& cover) {
  const ConeSurface& T = cover.torus();
  DeckReport r;
  r.order_three = r.commutes_with_projection = r.preserves_lengths = r.maps_gluings = true;
  for (int t = 0; t < T.num_triangles(); t++) {
    int image = cover.deck(t);
    r.order_three = r.order_three && cover.deck(cover.deck(image)) == t && (image != t);
    r.commutes_with_projection = r.commutes_with_projection && cover.sphere_triangle(image) == cover.sphere_triangle(t);
    const TriangleSpec &a = T.triangles()[t], &b = T.triangles()[image];
    r.preserves_lengths = r.preserves_lengths && a.lengths == b.lengths && a.norm.has_value() == b.norm.has_value() &&
                          (!a.norm || approx_equal(*a.norm, *b.norm, 0.));
    for (int e = 0; e < 3; e++) {
      EdgeRef n = T.neighbor({t, e});
      EdgeRef m = T.neighbor({image, e});
      r.maps_gluings = r.maps_gluings && m == EdgeRef{cover.deck(n.tri), n.edge};
    }
  }
  for (int v = 0; v < T.num_vertices(); v++)
    if (cover.deck_vertex(v) == v) r.fixed_vertices.push_back(v);
  return r;
}

DevelopmentPatch development_patch(const ConeSurface& torus, int depth) {
  if (torus.topology() != Topology::Torus) throw InputError("development_patch: surface is not a torus");
  if (depth < 0) throw InputError("development_patch: depth must be non-negative");
  using Lift = std::pair<int, HomologyClass>;
  std::map<Lift, int> index;
  std::vector<Lift> lifts;
  auto add = [&](const Lift& l) {
    if (index.count(l)) return false;
    index[l] = static_cast<int>(lifts.size());
    lifts.push_back(l);
    return true;
  };
  auto neighbor_lift = [&](const Lift& l, int e) -> Lift {
    EdgeRef n = torus.neighbor({l.first, e});
    return {n.tri, l.second + torus.crossing_class({l.first, e})};
  };
  add({0, {0, 0}});
  std::deque<std::pair<Lift, int>> q{{{0, {0, 0}}, 0}};
  while (!q.empty()) {
    auto [l, d] = q.front();
    q.pop_front();
    if (d == depth) continue;
    for (int e = 0; e < 3; e++) {
      Lift n = neighbor_lift(l, e);
      if (add(n)) q.push_back({n, d + 1});
    }
  }
  auto build = [&]() {
    std::vector<TriangleSpec> tris;
    std::vector<Gluing> glue;
    for (size_t i = 0; i < lifts.size(); i++) {
      tris.push_back(torus.triangles()[lifts[i].first]);
      for (int e = 0; e < 3; e++) {
        EdgeRef n = torus.neighbor({lifts[i].first, e});
        auto it = index.find(neighbor_lift(lifts[i], e));
        if (it == index.end()) continue;
        if (std::pair{it->second, n.edge} < std::pair{static_cast<int>(i), e}) continue;
        glue.push_back({{static_cast<int>(i), e}, {it->second, n.edge}});
      }
    }
    return ConeSurface(std::move(tris), std::move(glue));
  };
  for (int round = 0;; round++) {
    // fill lifts bordered on at least two sides by the patch
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Lift> frontier;
      for (const Lift& l : lifts)
        for (int e = 0; e < 3; e++) frontier.push_back(neighbor_lift(l, e));
      for (const Lift& c : frontier) {
        if (index.count(c)) continue;
        int inside = 0;
        for (int e = 0; e < 3; e++) inside += index.count(neighbor_lift(c, e)) ? 1 : 0;
        if (inside == 3 || (round > 0 && inside >= 2)) grew = add(c) || grew;
      }
    }
    ConeSurface s = build();
    if (s.euler_characteristic() == 1) {
      DevelopmentPatch out{std::move(s), {}, {}};
      for (const Lift& l : lifts) {
        out.base_triangle.push_back(l.first);
        out.lift.push_back(l.second);
      }
      return out;
    }
    if (round == 8) throw InputError("development_patch: could not fill the patch to a disk");
  }
}

} // namespace sysw
