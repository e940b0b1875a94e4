#include "sysw/minkowski.hpp"

#include "sysw/errors.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace sysw {

namespace {

constexpr double kVertexTol = 1e-9;

std::vector<Vec2> facets_of(const std::vector<Vec2>& verts) {
  std::vector<Vec2> out;
  out.reserve(verts.size());
  for (size_t i = 0; i < verts.size(); i++) {
    Vec2 e = verts[(i + 1) % verts.size()] - verts[i];
    Vec2 n{e.y, -e.x};
    double h = dot(n, verts[i]);
    out.push_back(n / h);
  }
  return out;
}

} // namespace

Norm2D Norm2D::quadratic(SymMat2 gram) {
  if (!std::isfinite(gram.a) || !std::isfinite(gram.b) || !std::isfinite(gram.c))
    throw InputError("quadratic norm: non-finite gram entry");
  if (gram.a <= 0. || gram.det() <= 0.)
    throw InputError("quadratic norm: gram matrix is not positive definite");
  Norm2D n;
  n.rep_ = gram;
  return n;
}

Norm2D Norm2D::polygon(std::vector<Vec2> verts) {
  const size_t n = verts.size();
  if (n < 4 || n % 2 != 0) {
    std::ostringstream msg;
    msg << "polygon norm: need an even number >= 4 of vertices, got " << n;
    throw InputError(msg.str());
  }
  double radius = 0.;
  for (Vec2 v : verts) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InputError("polygon norm: non-finite vertex");
    radius = std::max(radius, v.norm());
  }
  if (radius <= 0.) throw InputError("polygon norm: all vertices at the origin");
  for (size_t i = 0; i < n / 2; i++) {
    if ((verts[i] + verts[i + n / 2]).norm() > kVertexTol * radius) {
      std::ostringstream msg;
      msg << "polygon norm: vertex set is not centrally symmetric (vertex " << i << " = " << verts[i]
          << " but vertex " << i + n / 2 << " = " << verts[i + n / 2] << ")";
      throw InputError(msg.str());
    }
  }
  double area2 = 0.;
  for (size_t i = 0; i < n; i++) {
    Vec2 a = verts[i], b = verts[(i + 1) % n], c = verts[(i + 2) % n];
    double turn = cross(b - a, c - b);
    if (turn <= kVertexTol * radius * radius) {
      std::ostringstream msg;
      msg << "polygon norm: vertex " << (i + 1) % n
          << " is not a strictly convex counterclockwise corner (collinear or reflex triple)";
      throw InputError(msg.str());
    }
    area2 += cross(a, b);
  }
  if (area2 <= 0.) throw InputError("polygon norm: enclosed area is not positive");
  Norm2D out;
  out.facets_ = facets_of(verts);
  out.rep_ = std::move(verts);
  return out;
}

Norm2D Norm2D::parallelogram(Vec2 u, Vec2 v) { return polygon({u, v, -u, -v}); }

double Norm2D::operator()(Vec2 v) const {
  if (is_quadratic()) return std::sqrt(std::max(0., gram().quad(v)));
  double g = 0.;
  for (Vec2 w : facets_) g = std::max(g, dot(w, v));
  return g;
}

double Norm2D::circumradius() const {
  if (is_quadratic()) {
    const SymMat2& g = gram();
    double mean = 0.5 * (g.a + g.c);
    double dev = std::hypot(0.5 * (g.a - g.c), g.b);
    return 1. / std::sqrt(mean - dev);
  }
  double r = 0.;
  for (Vec2 v : vertices()) r = std::max(r, v.norm());
  return r;
}

Norm2D Norm2D::rotated(Vec2 rot) const {
  if (is_quadratic()) {
    // G' = R G R^T
    const SymMat2& g = gram();
    double c = rot.x, s = rot.y;
    double a = c * c * g.a - 2. * c * s * g.b + s * s * g.c;
    double b = c * s * (g.a - g.c) + (c * c - s * s) * g.b;
    double d = s * s * g.a + 2. * c * s * g.b + c * c * g.c;
    return quadratic({a, b, d});
  }
  std::vector<Vec2> vs;
  for (Vec2 v : vertices()) vs.push_back(rotate(v, rot));
  return polygon(std::move(vs));
}

double eval_norm(const Norm2D& norm, Vec2 v) { return norm(v); }

Norm2D polar_dual(const Norm2D& norm) {
  if (norm.is_quadratic()) return Norm2D::quadratic(norm.gram().inverse());
  return Norm2D::polygon(norm.facets());
}

double ball_area(const Norm2D& norm) {
  if (norm.is_quadratic()) return std::numbers::pi / std::sqrt(norm.gram().det());
  const auto& v = norm.vertices();
  double a2 = 0.;
  for (size_t i = 0; i < v.size(); i++) a2 += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a2;
}

double mahler_product(const Norm2D& norm) { return ball_area(norm) * ball_area(polar_dual(norm)); }

AreaDensities area_densities(const Norm2D& norm) {
  return {ball_area(polar_dual(norm)) / std::numbers::pi, std::numbers::pi / ball_area(norm)};
}

bool approx_equal(const Norm2D& lhs, const Norm2D& rhs, double rel_tol) {
  if (lhs.is_quadratic() != rhs.is_quadratic()) return false;
  double tol = rel_tol * std::max(lhs.circumradius(), rhs.circumradius());
  if (lhs.is_quadratic()) {
    const SymMat2 &g = lhs.gram(), &h = rhs.gram();
    // gram entries scale like 1/r^2
    double gtol = rel_tol * std::max({std::abs(g.a), std::abs(g.c), std::abs(h.a), std::abs(h.c)});
    return std::abs(g.a - h.a) <= gtol && std::abs(g.b - h.b) <= gtol && std::abs(g.c - h.c) <= gtol;
  }
  const auto &a = lhs.vertices(), &b = rhs.vertices();
  if (a.size() != b.size()) return false;
  const size_t n = a.size();
  for (size_t shift = 0; shift < n; shift++) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; i++) ok = (a[i] - b[(i + shift) % n]).norm() <= tol;
    if (ok) return true;
  }
  return false;
}

Norm2D calabi_croke_parallelogram() {
  const Vec2 alpha{1., 0.};
  const Vec2 beta{0.5, std::sqrt(3.) / 2.};
  return Norm2D::parallelogram(alpha / 2., beta / 2.);
}

nlohmann::json to_json(const Norm2D& norm) {
  nlohmann::json j;
  if (norm.is_quadratic()) {
    const SymMat2& g = norm.gram();
    j["kind"] = "quadratic";
    j["gram"] = {{g.a, g.b}, {g.b, g.c}};
  } else {
    j["kind"] = "polygon";
    nlohmann::json vs = nlohmann::json::array();
    for (Vec2 v : norm.vertices()) vs.push_back({v.x, v.y});
    j["vertices"] = vs;
  }
  return j;
}

Norm2D norm_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "quadratic") {
      const auto& g = j.at("gram");
      double a = g.at(0).at(0).get<double>(), b = g.at(0).at(1).get<double>();
      double b2 = g.at(1).at(0).get<double>(), c = g.at(1).at(1).get<double>();
      if (std::abs(b - b2) > 1e-12 * std::max(1., std::abs(b))) throw InputError("quadratic norm: gram is not symmetric");
      return Norm2D::quadratic({a, b, c});
    }
    if (kind == "polygon") {
      std::vector<Vec2> vs;
      for (const auto& p : j.at("vertices")) vs.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      return Norm2D::polygon(std::move(vs));
    }
    throw InputError("norm: unknown kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("norm: malformed JSON: ") + e.what());
  }
}

} // namespace sysw
