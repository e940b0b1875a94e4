#pragma once

#include "sysw/minkowski.hpp"

#include "json.hpp"

namespace sysw {

struct Lattice2D {
  Vec2 a;
  Vec2 b;

  static Lattice2D make(Vec2 a, Vec2 b);
  // Generated by (1, 0) and (1/2, sqrt(3)/2), scaled by `side`.
  static Lattice2D equilateral(double side = 1.);

  double covolume() const { return std::abs(cross(a, b)); }
  Vec2 at(long m, long n) const { return a * static_cast<double>(m) + b * static_cast<double>(n); }
  Lattice2D scaled(double t) const { return {a * t, b * t}; }
};

struct FlatTorus {
  Lattice2D lattice;
  Norm2D norm = Norm2D::euclidean();
};

struct SystoleResult {
  long m = 0;
  long n = 0;
  Vec2 vector;
  double length = 0.;
};

enum class AreaConvention { HolmesThompson, BusemannHausdorff };

// Shortest nonzero lattice vector under the torus norm, by exhaustive enumeration in the Euclidean
// disk that must contain it. Equal-length candidates are ordered by sign-normalized (|n|, m, n).
SystoleResult shortest_vector(const FlatTorus& torus);

double torus_area(const FlatTorus& torus, AreaConvention convention = AreaConvention::HolmesThompson);

struct LoewnerReport {
  double sys = 0.;
  double area_ht = 0.;
  double ratio = 0.;
  double bound = 0.;
  bool quadratic = false;
  bool verdict = false;
  bool equality = false;
};

// area / sys^2 against sqrt(3)/2 (quadratic norms) or 2/pi (any norm).
LoewnerReport loewner_report(const FlatTorus& torus);

// Lagrange-Gauss reduction for the Euclidean metric: |a| <= |b| <= |a + b|, |a| <= |b| <= |a - b|.
Lattice2D gauss_reduce(Lattice2D lattice);
// Euclidean lattice is homothetic to the equilateral one within relative tolerance `tol`.
bool is_equilateral(const Lattice2D& lattice, double tol = 1e-6);

nlohmann::json to_json(const FlatTorus& torus);
FlatTorus torus_from_json(const nlohmann::json& j);

} // namespace sysw
