#pragma once

#include "sysw/vec2.hpp"

#include "json.hpp"

#include <variant>
#include <vector>

namespace sysw {

// Symmetric 2x2 matrix [[a, b], [b, c]].
struct SymMat2 {
  double a = 1.;
  double b = 0.;
  double c = 1.;

  double det() const { return a * c - b * b; }
  double quad(Vec2 v) const { return a * v.x * v.x + 2. * b * v.x * v.y + c * v.y * v.y; }
  SymMat2 inverse() const {
    double d = det();
    return {c / d, -b / d, a / d};
  }
  bool operator==(const SymMat2&) const = default;
};

// A centrally symmetric convex norm on the plane, either quadratic (Euclidean up to a linear map) or
// polygonal. The unit disk of a polygonal norm is the polygon itself; the polygon is stored with
// counterclockwise vertices and, alongside, the facet functionals w_j such that B = {x : <w_j, x> <= 1}.
class Norm2D {
public:
  static Norm2D euclidean() { return quadratic({1., 0., 1.}); }
  static Norm2D quadratic(SymMat2 gram);
  static Norm2D polygon(std::vector<Vec2> vertices);
  // Polygon with vertices u, v, -u, -v (u, v counterclockwise).
  static Norm2D parallelogram(Vec2 u, Vec2 v);

  bool is_quadratic() const { return std::holds_alternative<SymMat2>(rep_); }
  const SymMat2& gram() const { return std::get<SymMat2>(rep_); }
  const std::vector<Vec2>& vertices() const { return std::get<std::vector<Vec2>>(rep_); }
  const std::vector<Vec2>& facets() const { return facets_; }

  double operator()(Vec2 v) const;

  // Largest Euclidean length of a point in the unit disk.
  double circumradius() const;

  // The norm expressed after applying the rotation `rot` (unit vector) to the plane:
  // result(rot * v) == (*this)(v).
  Norm2D rotated(Vec2 rot) const;

private:
  std::variant<SymMat2, std::vector<Vec2>> rep_;
  std::vector<Vec2> facets_;
};

struct AreaDensities {
  double holmes_thompson = 0.;
  double busemann_hausdorff = 0.;
};

double eval_norm(const Norm2D& norm, Vec2 v);
Norm2D polar_dual(const Norm2D& norm);
// Lebesgue area of the unit disk.
double ball_area(const Norm2D& norm);
double mahler_product(const Norm2D& norm);
AreaDensities area_densities(const Norm2D& norm);

// Equality of unit disks: grams entrywise, polygons up to cyclic relabelling, both at tolerance
// rel_tol * circumradius.
bool approx_equal(const Norm2D& lhs, const Norm2D& rhs, double rel_tol = 1e-9);

// Unit disk of the Finsler Calabi-Croke torus: the parallelogram spanned by half the generators of
// the lattice generated by (1, 0) and (1/2, sqrt(3)/2).
Norm2D calabi_croke_parallelogram();

nlohmann::json to_json(const Norm2D& norm);
Norm2D norm_from_json(const nlohmann::json& j);

} // namespace sysw
