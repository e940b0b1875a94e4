#pragma once

#include "sysw/flat_lattice.hpp"
#include "sysw/minkowski.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sysw {

// Edge `edge` of triangle `tri` runs from corner `edge` to corner (edge + 1) % 3.
struct EdgeRef {
  int tri = -1;
  int edge = -1;

  bool valid() const { return tri >= 0; }
  auto operator<=>(const EdgeRef&) const = default;
};

struct CornerRef {
  int tri = -1;
  int corner = -1;

  auto operator<=>(const CornerRef&) const = default;
};

// Two triangle edges identified with opposite orientations (the only orientable pairing of two
// counterclockwise charts).
struct Gluing {
  EdgeRef a;
  EdgeRef b;
};

struct TriangleSpec {
  std::array<double, 3> lengths{};
  std::optional<Norm2D> norm; // constant Finsler norm in the triangle chart; Euclidean when empty
};

// A point given by chart coordinates inside a triangle.
struct SurfacePoint {
  int tri = -1;
  Vec2 pos;
};

enum class Topology { Sphere, Torus, Disk };

using HomologyClass = std::array<long, 2>;

inline HomologyClass operator+(HomologyClass a, HomologyClass b) { return {a[0] + b[0], a[1] + b[1]}; }
inline HomologyClass operator-(HomologyClass a, HomologyClass b) { return {a[0] - b[0], a[1] - b[1]}; }
inline HomologyClass operator-(HomologyClass a) { return {-a[0], -a[1]}; }
inline bool is_zero(HomologyClass c) { return c[0] == 0 && c[1] == 0; }

// Triangulated piecewise-flat surface. Triangle charts place corner 0 at the origin and corner 1 on
// the positive x-axis, counterclockwise. Closed surfaces (sphere, torus) glue every edge; surfaces
// with unglued edges are treated as disks. Immutable after construction.
class ConeSurface {
public:
  ConeSurface(std::vector<TriangleSpec> triangles, std::vector<Gluing> gluings, std::vector<CornerRef> marked = {},
              int refinement_level = 0);

  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_vertices() const { return static_cast<int>(vertex_corners_.size()); }
  int num_gluings() const { return static_cast<int>(gluings_.size()); }
  int num_edges() const { return num_gluings() + num_boundary_edges_; }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }
  Topology topology() const { return topology_; }
  int refinement_level() const { return refinement_level_; }

  const std::vector<TriangleSpec>& triangles() const { return triangles_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  double length(int tri, int edge) const { return triangles_[tri].lengths[edge]; }
  const std::array<Vec2, 3>& chart(int tri) const { return charts_[tri]; }

  // Partner edge, or an invalid ref on the boundary.
  EdgeRef neighbor(EdgeRef e) const { return neighbor_[e.tri][e.edge]; }
  int gluing_index(EdgeRef e) const { return gluing_of_[e.tri][e.edge]; }
  // Chart isometry from e.tri to neighbor(e).tri.
  Rigid gluing_map(EdgeRef e) const { return gluing_maps_[e.tri][e.edge]; }

  int vertex(CornerRef c) const { return vertex_of_[c.tri][c.corner]; }
  int vertex(int tri, int corner) const { return vertex_of_[tri][corner]; }
  // Corners around a vertex in counterclockwise order; for boundary vertices the fan starts at the
  // boundary.
  const std::vector<CornerRef>& vertex_corners(int v) const { return vertex_corners_[v]; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  double corner_angle(int tri, int corner) const { return corner_angles_[tri][corner]; }
  double cone_angle(int v) const { return cone_angles_[v]; }
  // Position of corner c in the counterclockwise angular coordinate around its vertex (start of the
  // corner's wedge).
  double corner_angle_offset(CornerRef c) const { return corner_offsets_[c.tri][c.corner]; }

  const std::vector<CornerRef>& marked_corners() const { return marked_; }
  std::vector<int> marked_vertices() const;

  double triangle_area(int tri) const;
  // Euclidean (Lebesgue) area of the charts weighted by the per-triangle Finsler density.
  double area(AreaConvention convention = AreaConvention::HolmesThompson) const;

  bool has_norm_field() const { return has_norm_field_; }
  const Norm2D* norm(int tri) const { return triangles_[tri].norm ? &*triangles_[tri].norm : nullptr; }
  double chart_length(int tri, Vec2 d) const { return norm(tri) ? (*norm(tri))(d) : d.norm(); }
  // Every gluing carries the norm of one side onto the norm of the other.
  bool norm_field_is_parallel(double tol = 1e-9) const;

  // Integer cohomology basis (rank 2 for tori, 0 otherwise): value of crossing from e.tri into
  // neighbor(e).tri. Closed around every vertex; the classes of crossings sum to the homology class
  // of a closed path.
  int homology_rank() const { return topology_ == Topology::Torus ? 2 : 0; }
  HomologyClass crossing_class(EdgeRef e) const;
  // Accumulated crossing class when rotating counterclockwise around the vertex from its first
  // corner to `c`.
  HomologyClass corner_class(CornerRef c) const { return corner_class_[c.tri][c.corner]; }
  // The two gluings outside the tree-cotree decomposition; their crossings generate homology.
  const std::vector<int>& homology_generators() const { return generators_; }
  // Triangle placements along the dual spanning tree (chart -> plane), rooted at triangle 0.
  const std::vector<Rigid>& tree_development() const { return development_; }

  std::optional<int> vertex_at(const SurfacePoint& p, double tol = 1e-9) const;
  SurfacePoint corner_point(CornerRef c) const { return {c.tri, charts_[c.tri][c.corner]}; }
  SurfacePoint point_from_barycentric(int tri, std::array<double, 3> bary) const;
  bool contains(int tri, Vec2 p, double tol = 1e-12) const;

  ConeSurface scaled(double s) const;

private:
  void build_connectivity();
  void build_vertices();
  void build_homology();

  std::vector<TriangleSpec> triangles_;
  std::vector<Gluing> gluings_;
  std::vector<CornerRef> marked_;
  int refinement_level_ = 0;

  std::vector<std::array<Vec2, 3>> charts_;
  std::vector<std::array<EdgeRef, 3>> neighbor_;
  std::vector<std::array<int, 3>> gluing_of_;
  std::vector<std::array<Rigid, 3>> gluing_maps_;
  std::vector<std::array<int, 3>> vertex_of_;
  std::vector<std::vector<CornerRef>> vertex_corners_;
  std::vector<bool> boundary_vertex_;
  std::vector<std::array<double, 3>> corner_angles_;
  std::vector<std::array<double, 3>> corner_offsets_;
  std::vector<double> cone_angles_;
  int num_boundary_edges_ = 0;
  Topology topology_ = Topology::Sphere;
  bool has_norm_field_ = false;

  std::vector<HomologyClass> cocycle_; // per gluing, crossing a -> b
  std::vector<std::array<HomologyClass, 3>> corner_class_;
  std::vector<int> generators_;
  std::vector<Rigid> development_;
};

// Two equilateral triangles of the given side glued along their boundaries; marked vertices
// x1, x2, x3 are corners 0, 1, 2 of triangle 0.
ConeSurface build_calabi_croke(double side = 1.);

// Fundamental parallelogram (0, a, a+b, b) split along its diagonal, opposite sides glued.
// The norm is expressed in each triangle's chart.
ConeSurface build_flat_torus_surface(const Lattice2D& lattice, const Norm2D& norm = Norm2D::euclidean());

// Midpoint subdivision, 4^levels triangles per original triangle. Geometry is unchanged.
ConeSurface refine(const ConeSurface& surface, int levels);

// Deterministic multiplicative edge-length perturbation by factors in [1 - magnitude, 1 + magnitude].
// With preserve_marked_angles every edge of a triangle incident to a marked vertex is kept, so the
// marked cone angles are exactly unchanged.
ConeSurface perturb(const ConeSurface& surface, std::uint64_t seed, double magnitude, bool preserve_marked_angles);

// For a flat torus (every cone angle 2 pi within tol), the lattice of translations of its developing
// map. Basis vector k is the translation of homology generator k, so a class (m, n) develops to
// m a + n b. Not reduced. Empty for non-flat surfaces or non-tori.
std::optional<Lattice2D> developed_lattice(const ConeSurface& surface, double tol = 1e-9);

// Sphere: Gauss-Bonnet defect sum(2 pi - angle) - 2 pi chi.
double gauss_bonnet_defect(const ConeSurface& surface);

// Linear rotation by 2 pi / 3 (the local model of the deck transformation at a ramification
// point) applied to a norm: is the norm invariant?
struct DeckInvarianceCheck {
  bool invariant = false;
  double max_discrepancy = 0.; // max |norm(R v) - norm(v)| over unit-disk vertices or samples
  double image_norm_of_first_vertex = 0.;
};
DeckInvarianceCheck deck_invariance_check(const Norm2D& norm, double tol = 1e-9);

std::string to_json_string(const ConeSurface& surface);
ConeSurface surface_from_json(const std::string& text);
// FNV-1a of the canonical JSON text, as 16 hex digits.
std::string digest(const ConeSurface& surface);

} // namespace sysw
