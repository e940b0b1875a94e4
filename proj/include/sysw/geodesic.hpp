#pragma once

#include "sysw/cone_surface.hpp"
#include "sysw/cover.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace sysw {

// Straight piece inside one triangle chart. entry_corner / exit_corner name the triangle corner
// when that end sits on a vertex; exit_edge is the edge crossed into the next triangle.
struct PathSegment {
  int tri = -1;
  Vec2 entry;
  Vec2 exit;
  int entry_corner = -1;
  int exit_corner = -1;
  int exit_edge = -1;
};

enum class Terminal { Endpoint, ConePointHit, LengthExhausted, BoundaryHit };

struct GeodesicPath {
  std::vector<PathSegment> segments;
  double total_length = 0.;
  Terminal terminal = Terminal::Endpoint;
  int terminal_vertex = -1;

  bool empty() const { return segments.empty(); }
  SurfacePoint start() const { return {segments.front().tri, segments.front().entry}; }
  SurfacePoint end() const { return {segments.back().tri, segments.back().exit}; }
};

double segment_length(const ConeSurface& s, const PathSegment& seg);
double path_length(const ConeSurface& s, const GeodesicPath& path);
// Homology class of a closed path (zero on surfaces without homology). Vertex joins and
// vertex endpoints use the corner classes of the vertex rotation.
HomologyClass path_class(const ConeSurface& s, const GeodesicPath& path);
// Vertices where consecutive segments meet at a corner (not at an edge crossing).
std::vector<int> vertex_passes(const ConeSurface& s, const GeodesicPath& path);
GeodesicPath reversed(const ConeSurface& s, const GeodesicPath& path);
GeodesicPath concatenate(const GeodesicPath& a, const GeodesicPath& b);
// Drops empty segments, merges collinear pieces inside one triangle and restores the edge or
// corner through which each segment hands over to the next.
GeodesicPath normalized(const ConeSurface& s, const GeodesicPath& path);
// Point at arc length `t` along the path (clamped). Points on vertices keep the segment triangle.
SurfacePoint point_at(const ConeSurface& s, const GeodesicPath& path, double t);
// Sub-path between arc lengths t0 <= t1.
GeodesicPath subpath(const ConeSurface& s, const GeodesicPath& path, double t0, double t1);
// Largest deviation from straightness over every edge crossing and flat-vertex pass: edge
// crossings must match under the gluing map, directions must agree, and straight vertex passes
// must split the cone angle in half.
double straightness_defect(const ConeSurface& s, const GeodesicPath& path);
// Maps every segment with a triangle map that preserves charts (covers, deck maps).
template <class TriangleMap>
GeodesicPath map_triangles(const GeodesicPath& path, TriangleMap&& f) {
  GeodesicPath out = path;
  for (auto& seg : out.segments) seg.tri = f(seg.tri);
  return out;
}

// Straight development from `start` in chart direction `direction`. Continues through vertices
// of cone angle 2 pi, stops at other cone points, on the boundary, or after max_length.
GeodesicPath trace(const ConeSurface& surface, const SurfacePoint& start, Vec2 direction, double max_length);

// Exact shortest paths by window propagation: straight visibility from a source is computed by
// unfolding wedges across edges, pruned by the unfolded lower bound; shortest paths are
// concatenations of visible pieces joined at vertices (Dijkstra over vertices). Norm fields must
// be parallel. Visibility lists are cached per vertex, so an engine is not thread-safe; use one
// engine per thread.
class GeodesicEngine {
public:
  explicit GeodesicEngine(const ConeSurface& surface);
  ~GeodesicEngine();
  GeodesicEngine(GeodesicEngine&&) noexcept;
  GeodesicEngine& operator=(GeodesicEngine&&) noexcept;

  const ConeSurface& surface() const { return *surface_; }

  std::optional<GeodesicPath> shortest_path(const SurfacePoint& p, const SurfacePoint& q, double bound);
  std::optional<double> distance(const SurfacePoint& p, const SurfacePoint& q, double bound);
  std::optional<double> vertex_distance(int v, int w, double bound);

  // Shortest loop based at `base` whose homology class is nonzero, never passing through a
  // vertex of `forbidden`. Empty when no such loop is shorter than `bound`.
  std::optional<GeodesicPath> shortest_noncontractible_loop(int base, double bound,
                                                            const std::vector<int>& forbidden = {});

  struct Stats {
    long windows = 0;
    long visibility_builds = 0;
  };
  const Stats& stats() const { return stats_; }

private:
  struct Impl;
  const ConeSurface* surface_;
  std::unique_ptr<Impl> impl_;
  Stats stats_;
};

std::optional<double> distance(const ConeSurface& surface, const SurfacePoint& p, const SurfacePoint& q, double bound);
SurfacePoint vertex_point(const ConeSurface& surface, int v);

// Minimum distance between distinct marked vertices.
double min_vertex_distance(const ConeSurface& sphere);

struct TorusSystole {
  double length = 0.;
  GeodesicPath loop;
  HomologyClass cls{0, 0};
  int base_vertex = -1;
};
// Shortest noncontractible loop of a torus. Flat tori are read off the developed lattice;
// otherwise every noncontractible loop is slid until it meets a vertex and the vertex-based
// search decides.
TorusSystole torus_systole(const ConeSurface& torus);

struct PointedSystole {
  double length = 0.;
  GeodesicPath torus_loop;  // based at the ramification point y_i
  GeodesicPath sphere_loop; // its projection, based at x_i
};
// Shortest loop at x_i that is noncontractible in the sphere punctured at the other two marked
// vertices, found as the shortest lifted loop at y_i of nonzero torus class avoiding y_j, y_k.
// Throws SearchExhausted when no loop is shorter than `budget`.
PointedSystole pointed_systole_punctured(const CoverMap& cover, int i, double budget);

// Systolic straight loop on a flat torus, translated off every vertex: the line in the shortest
// class at the middle of the widest vertex-free strip.
GeodesicPath off_vertex_systolic_loop(const ConeSurface& flat_torus);

// Projection of a torus path to the sphere.
GeodesicPath project(const CoverMap& cover, const GeodesicPath& torus_path);

struct SelfIntersection {
  double t0 = 0.; // arc-length parameters of the two passes, t0 < t1
  double t1 = 0.;
  SurfacePoint where;
};
// Transverse self-intersections of a closed path (in triangle interiors, on edges, and at vertex
// passes).
std::vector<SelfIntersection> self_intersections(const ConeSurface& s, const GeodesicPath& loop);

// Connected components of the complement of a closed path and the marked vertices in each.
// Marked vertices on the path belong to no region.
struct ComplementRegions {
  int count = 0;
  std::vector<std::vector<int>> marked; // marked vertex indices (0, 1, 2) per region
};
ComplementRegions complement_regions(const ConeSurface& s, const GeodesicPath& loop);

struct FigureEight {
  GeodesicPath loop;          // projected loop on the sphere
  GeodesicPath torus_loop;    // the input, rotated to start at the first preimage of the crossing
  SelfIntersection crossing;  // parameters on the rotated torus loop
  int deck_power = 0;         // second preimage = rho^deck_power (first preimage)
  ComplementRegions regions;
};

struct Classification {
  enum class Kind { ThroughRamification, FigureEight, Invalid } kind = Kind::Invalid;
  int ramification_index = -1;
  std::optional<FigureEight> figure_eight;
  std::string diagnostic;
};
Classification classify_systolic_projection(const CoverMap& cover, const GeodesicPath& torus_loop);

// Heuristic search for closed geodesics shorter than length_bound: shoots from grid sample points
// per triangle in 4 * grid directions. A near-return is a re-entry into the start triangle whose
// holonomy rotation is within return_tolerance of the identity; the developed translation gives a
// candidate direction, which is re-traced, checked for exact closure and polished with Birkhoff
// shortening. Loops are deduplicated by length and class. Completeness is not guaranteed.
struct ClosedGeodesicSearchConfig {
  int grid = 4;
  double return_tolerance = 1e-3;
  int polish_iterations = 20;
};
std::vector<GeodesicPath> closed_geodesic_search(const ConeSurface& surface, double length_bound,
                                                 const ClosedGeodesicSearchConfig& config = {});

nlohmann::json to_json(const GeodesicPath& path);
GeodesicPath path_from_json(const nlohmann::json& j);

} // namespace sysw
