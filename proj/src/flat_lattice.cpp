#include "sysw/flat_lattice.hpp"

#include "sysw/errors.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

namespace sysw {

Lattice2D Lattice2D::make(Vec2 a, Vec2 b) {
  if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y))
    throw InputError("lattice: non-finite basis vector");
  double scale = std::max(a.norm2(), b.norm2());
  if (!(std::abs(cross(a, b)) > 1e-14 * scale) || scale == 0.) throw InputError("lattice: degenerate basis (zero determinant)");
  return {a, b};
}

Lattice2D Lattice2D::equilateral(double side) {
  return make({side, 0.}, {side / 2., side * std::sqrt(3.) / 2.});
}

SystoleResult shortest_vector(const FlatTorus& torus) {
  const Lattice2D& L = torus.lattice;
  const Norm2D& norm = torus.norm;
  double upper = std::min(norm(L.a), norm(L.b));
  // every v with norm(v) <= upper lies in the Euclidean disk of radius upper * circumradius
  double radius = upper * norm.circumradius() * (1. + 1e-9);
  double det = cross(L.a, L.b);
  long mmax = static_cast<long>(std::ceil(radius * L.b.norm() / std::abs(det)));
  long nmax = static_cast<long>(std::ceil(radius * L.a.norm() / std::abs(det)));

  SystoleResult best;
  best.length = std::numeric_limits<double>::infinity();
  auto key = [](long m, long n) { return std::make_tuple(std::labs(n), m, n); };
  for (long m = 0; m <= mmax; m++) {
    for (long n = -nmax; n <= nmax; n++) {
      if (m == 0 && n <= 0) continue;
      Vec2 v = L.at(m, n);
      if (v.norm() > radius) continue;
      double len = norm(v);
      double tie = 1e-12 * std::max(len, best.length == std::numeric_limits<double>::infinity() ? len : best.length);
      if (len < best.length - tie || (std::abs(len - best.length) <= tie && key(m, n) < key(best.m, best.n))) {
        best = {m, n, v, len};
      }
    }
  }
  return best;
}

double torus_area(const FlatTorus& torus, AreaConvention convention) {
  AreaDensities d = area_densities(torus.norm);
  double density = convention == AreaConvention::HolmesThompson ? d.holmes_thompson : d.busemann_hausdorff;
  return torus.lattice.covolume() * density;
}

LoewnerReport loewner_report(const FlatTorus& torus) {
  LoewnerReport r;
  r.sys = shortest_vector(torus).length;
  r.area_ht = torus_area(torus, AreaConvention::HolmesThompson);
  r.ratio = r.area_ht / (r.sys * r.sys);
  r.quadratic = torus.norm.is_quadratic();
  r.bound = r.quadratic ? std::sqrt(3.) / 2. : 2. / std::numbers::pi;
  r.verdict = r.ratio >= r.bound - 1e-9;
  r.equality = std::abs(r.ratio - r.bound) <= 1e-9;
  return r;
}

Lattice2D gauss_reduce(Lattice2D l) {
  Vec2 a = l.a, b = l.b;
  if (a.norm2() > b.norm2()) std::swap(a, b);
  for (int iter = 0; iter < 200; iter++) {
    double mu = std::round(dot(a, b) / a.norm2());
    b = b - a * mu;
    if (b.norm2() >= a.norm2()) break;
    std::swap(a, b);
  }
  if (cross(a, b) < 0) b = -b;
  return {a, b};
}

bool is_equilateral(const Lattice2D& lattice, double tol) {
  Lattice2D r = gauss_reduce(lattice);
  double la = r.a.norm(), lb = r.b.norm();
  double cosang = std::abs(dot(r.a, r.b)) / (la * lb);
  return std::abs(la - lb) <= tol * la && std::abs(cosang - 0.5) <= tol;
}

nlohmann::json to_json(const FlatTorus& torus) {
  return {{"lattice", {{"a", {torus.lattice.a.x, torus.lattice.a.y}}, {"b", {torus.lattice.b.x, torus.lattice.b.y}}}},
          {"norm", to_json(torus.norm)}};
}

FlatTorus torus_from_json(const nlohmann::json& j) {
  try {
    const auto& l = j.at("lattice");
    Vec2 a{l.at("a").at(0).get<double>(), l.at("a").at(1).get<double>()};
    Vec2 b{l.at("b").at(0).get<double>(), l.at("b").at(1).get<double>()};
    return {Lattice2D::make(a, b), norm_from_json(j.at("norm"))};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("torus: malformed JSON: ") + e.what());
  }
}

} // namespace sysw
