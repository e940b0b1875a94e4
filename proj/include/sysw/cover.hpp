#pragma once

#include "sysw/cone_surface.hpp"

#include <array>
#include <vector>

namespace sysw {

// Degree-3 cyclic cover of a sphere branched over its three marked vertices. Torus triangle
// s * F + t is sheet s over sphere triangle t and carries the same chart, so points project by
// keeping chart coordinates. The deck map advances the sheet.
class CoverMap {
public:
  const ConeSurface& sphere() const { return sphere_; }
  const ConeSurface& torus() const { return torus_; }

  int sheet_size() const { return sphere_.num_triangles(); }
  int sphere_triangle(int torus_tri) const { return torus_tri % sheet_size(); }
  int sheet(int torus_tri) const { return torus_tri / sheet_size(); }
  int lift_triangle(int sphere_tri, int sheet) const { return ((sheet % 3 + 3) % 3) * sheet_size() + sphere_tri; }
  int deck(int torus_tri, int power = 1) const { return lift_triangle(sphere_triangle(torus_tri), sheet(torus_tri) + power); }
  SurfacePoint deck(const SurfacePoint& p, int power = 1) const { return {deck(p.tri, power), p.pos}; }
  SurfacePoint project(const SurfacePoint& p) const { return {sphere_triangle(p.tri), p.pos}; }
  // Deck action on torus vertices.
  int deck_vertex(int v, int power = 1) const;

  // Torus vertices over x1, x2, x3.
  const std::array<int, 3>& ramification_points() const { return ramification_; }
  // Sphere vertex sequences of the two cut arcs x2 -> x1 and x3 -> x1.
  const std::array<std::vector<int>, 2>& cut_paths() const { return cut_paths_; }
  // Sheet change when crossing from gluing side a to side b (values 0, 1, 2).
  int sheet_shift(int sphere_gluing) const { return shift_[sphere_gluing]; }
  // Sheet change accumulated by a loop turning once counterclockwise around a sphere vertex.
  int monodromy(int sphere_vertex) const;

  friend CoverMap ramified_cover(const ConeSurface& sphere);

private:
  CoverMap(ConeSurface sphere, ConeSurface torus) : sphere_(std::move(sphere)), torus_(std::move(torus)) {}

  ConeSurface sphere_;
  ConeSurface torus_;
  std::vector<int> shift_;
  std::array<int, 3> ramification_{};
  std::array<std::vector<int>, 2> cut_paths_;
};

// Cuts the sphere along shortest edge paths from x2 and x3 to x1 and glues three copies
// cyclically across the cuts.
CoverMap ramified_cover(const ConeSurface& sphere);

struct DeckReport {
  bool order_three = false;        // rho^3 = id on triangles
  bool commutes_with_projection = false;
  bool preserves_lengths = false;  // edge lengths and norms are rho-invariant
  bool maps_gluings = false;       // rho is a simplicial automorphism
  std::vector<int> fixed_vertices;
};
DeckReport check_deck(const CoverMap& cover);

// Simply connected piece of the universal cover of a torus: the triangle lifts within `depth`
// dual steps of triangle 0, with enclosed holes filled. Disk topology.
struct DevelopmentPatch {
  ConeSurface surface;
  std::vector<int> base_triangle; // patch triangle -> torus triangle
  std::vector<HomologyClass> lift; // patch triangle -> deck class of the lift
};
DevelopmentPatch development_patch(const ConeSurface& torus, int depth);

} // namespace sysw
