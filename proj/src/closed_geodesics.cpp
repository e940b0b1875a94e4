#include "sysw/birkhoff.hpp"
#include "sysw/errors.hpp"
#include "sysw/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

namespace sysw {

namespace {

struct Candidate {
  SurfacePoint start;
  Vec2 direction; // start chart
  double length = 0.;
};

bool same_surface_point(const ConeSurface& s, const SurfacePoint& p, const SurfacePoint& q, double tol) {
  if (p.tri == q.tri) return distance(p.pos, q.pos) <= tol;
  for (int k = 0; k < 3; k++) {
    EdgeRef n = s.neighbor({p.tri, k});
    if (n.valid() && n.tri == q.tri && distance(s.gluing_map({p.tri, k}).apply(p.pos), q.pos) <= tol) return true;
  }
  return false;
}

// Re-entries of a shot into its start triangle with holonomy within tol of a translation; the
// translation gives the direction of a closed geodesic through the start point.
void near_returns(const ConeSurface& s, const SurfacePoint& p, Vec2 dir, double bound, double tol,
                  std::vector<Candidate>& out) {
  GeodesicPath g = trace(s, p, dir, bound);
  Rigid frame; // chart of the current segment -> start chart
  for (size_t k = 0; k < g.segments.size(); k++) {
    const PathSegment& seg = g.segments[k];
    if (k > 0 && seg.tri == p.tri && distance(frame.rot, Vec2{1., 0.}) < tol) {
      Vec2 tau = frame.apply(p.pos) - p.pos;
      double len = s.chart_length(p.tri, tau);
      if (len > 0. && len <= bound) out.push_back({p, tau.normalized(), len});
    }
    if (seg.exit_edge < 0) break; // vertex passes and endpoints end the bookkeeping
    frame = frame * s.gluing_map({seg.tri, seg.exit_edge}).inverse();
  }
}

std::optional<GeodesicPath> close_exactly(const ConeSurface& s, const Candidate& c) {
  GeodesicPath g = trace(s, c.start, c.direction, c.length);
  if (g.terminal != Terminal::LengthExhausted && g.terminal != Terminal::Endpoint) return std::nullopt;
  const double scale = std::max({s.length(c.start.tri, 0), s.length(c.start.tri, 1), s.length(c.start.tri, 2)});
  if (!same_surface_point(s, g.start(), g.end(), 1e-9 * std::max(scale, c.length))) return std::nullopt;
  g.terminal = Terminal::Endpoint;
  g.total_length = path_length(s, g);
  return g;
}

bool same_class(const HomologyClass& a, const HomologyClass& b) { return a == b || a == HomologyClass{-b[0], -b[1]}; }

} // namespace

std::vector<GeodesicPath> closed_geodesic_search(const ConeSurface& s, double length_bound,
                                                 const ClosedGeodesicSearchConfig& config) {
  if (config.grid < 1) throw InputError("closed_geodesic_search: grid must be at least 1");
  if (!(length_bound > 0.)) return {};
  const int F = s.num_triangles();
  const int g = config.grid;
  const int dirs = 4 * g;

  // shots, in parallel over triangles
  std::vector<std::vector<Candidate>> per_tri(F);
  unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; w++) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int t = static_cast<int>(w); t < F; t += static_cast<int>(workers)) {
        for (int i = 0; i < g; i++)
          for (int j = 0; i + j < g; j++) {
            double a = (i + 1. / 3.) / g, b = (j + 1. / 3.) / g;
            SurfacePoint p = s.point_from_barycentric(t, {a, b, 1. - a - b});
            for (int k = 0; k < dirs; k++) {
              Vec2 dir = unit_at_angle(2. * std::numbers::pi * (k + 0.5) / dirs);
              near_returns(s, p, dir, length_bound, config.return_tolerance, per_tri[t]);
            }
          }
      }
    }));
  }
  for (auto& j : jobs) j.get();

  ShortenOptions polish;
  polish.max_arc = s.topology() == Topology::Torus ? torus_systole(s).length / 5. : std::numeric_limits<double>::infinity();

  struct Found {
    GeodesicPath loop;
    HomologyClass cls;
  };
  std::vector<Found> found;
  std::vector<std::pair<double, HomologyClass>> tried;
  for (auto& list : per_tri) {
    std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(a.start.pos.x, a.start.pos.y, a.length, a.direction.x, a.direction.y) <
             std::tie(b.start.pos.x, b.start.pos.y, b.length, b.direction.x, b.direction.y);
    });
    list.erase(std::unique(list.begin(), list.end(),
                           [](const Candidate& a, const Candidate& b) {
                             return a.start.pos == b.start.pos && std::abs(a.length - b.length) < 1e-9 &&
                                    distance(a.direction, b.direction) < 1e-9;
                           }),
               list.end());
  }
  for (const auto& list : per_tri)
    for (const auto& c : list) {
      if (c.length > length_bound + 1e-9) continue;
      auto exact = close_exactly(s, c);
      if (!exact) continue;
      HomologyClass cls = path_class(s, *exact);
      bool seen = false;
      for (const auto& [len, k] : tried) seen = seen || (std::abs(len - exact->total_length) < 1e-6 && same_class(k, cls));
      if (seen) continue;
      tried.push_back({exact->total_length, cls});
      MarkedLoop m = marked_loop(s, *exact);
      ShortenResult r = shorten(m, 1e-12, config.polish_iterations, polish);
      if (r.status == ShortenResult::Status::Point) continue;
      if (r.loop.length > length_bound + 1e-9 || mark_defect(r.loop) > 1e-6) continue;
      GeodesicPath loop = r.loop.path();
      bool dup = false;
      for (const auto& f : found) dup = dup || (std::abs(f.loop.total_length - loop.total_length) < 1e-6 && same_class(f.cls, cls));
      if (!dup) found.push_back({loop, cls});
    }
  std::stable_sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.loop.total_length < b.loop.total_length - 1e-12; });
  std::vector<GeodesicPath> out;
  for (auto& f : found) out.push_back(std::move(f.loop));
  return out;
}

} // namespace sysw
