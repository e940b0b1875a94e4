#include "doctest.h"

#include "sysw/errors.hpp"
#include "sysw/minkowski.hpp"
#include "test_support.hpp"

#include <numbers>

using namespace sysw;
using sysw::testing::uniform;

namespace {

const double kSqrt3 = std::sqrt(3.);
const double kPi = std::numbers::pi;

Norm2D square() { return Norm2D::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }

Norm2D regular_hexagon() {
  std::vector<Vec2> vs;
  for (int k = 0; k < 6; k++) vs.push_back(unit_at_angle(k * kPi / 3.));
  return Norm2D::polygon(vs);
}

// Area of {y : |<y, v>| <= 1 for all v in verts} by counting points of a dense grid.
double polar_area_by_grid(const std::vector<Vec2>& verts, double half_box, int n) {
  double h = 2. * half_box / n;
  long inside = 0;
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      Vec2 y{-half_box + (i + 0.5) * h, -half_box + (j + 0.5) * h};
      bool in = true;
      for (Vec2 v : verts) in = in && std::abs(dot(y, v)) <= 1.;
      inside += in;
    }
  }
  return inside * h * h;
}

double shoelace(const std::vector<Vec2>& v) {
  double a = 0.;
  for (size_t i = 0; i < v.size(); i++) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

} // namespace

TEST_CASE("eval_norm examples") {
  CHECK(eval_norm(Norm2D::euclidean(), {3, 4}) == doctest::Approx(5.).epsilon(1e-15));
  CHECK(eval_norm(square(), {3, 4}) == doctest::Approx(4.).epsilon(1e-15));

  Norm2D cc = calabi_croke_parallelogram();
  double oracle = sysw::testing::gauge_by_vertex_pairs(cc.vertices(), {1, 0});
  CHECK(oracle == doctest::Approx(2.).epsilon(1e-14));
  CHECK(eval_norm(cc, {1, 0}) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("polar_dual examples") {
  Norm2D diamond = Norm2D::polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(approx_equal(polar_dual(square()), diamond));
  CHECK(approx_equal(polar_dual(Norm2D::euclidean()), Norm2D::euclidean()));

  Norm2D cc = calabi_croke_parallelogram();
  Norm2D dual = polar_dual(cc);
  CHECK(dual.vertices().size() == 4);
  double analytic = 32. / kSqrt3;
  CHECK(ball_area(dual) == doctest::Approx(analytic).epsilon(1e-12));
  // dual body is contained in |y| <= 4/sqrt(3) * 2
  double grid = polar_area_by_grid(cc.vertices(), 5., 1500);
  CHECK(grid == doctest::Approx(analytic).epsilon(1e-2));
}

TEST_CASE("ball_area examples") {
  CHECK(ball_area(square()) == doctest::Approx(4.).epsilon(1e-15));
  Norm2D cc = calabi_croke_parallelogram();
  CHECK(shoelace(cc.vertices()) == doctest::Approx(kSqrt3 / 4.).epsilon(1e-15));
  CHECK(ball_area(cc) == doctest::Approx(kSqrt3 / 4.).epsilon(1e-15));
  // gram diag(4,4) is the disk of radius 1/2
  CHECK(ball_area(Norm2D::quadratic({4, 0, 4})) == doctest::Approx(kPi / 4.).epsilon(1e-15));
}

TEST_CASE("mahler_product examples") {
  CHECK(mahler_product(square()) == doctest::Approx(8.).epsilon(1e-14));
  CHECK(mahler_product(calabi_croke_parallelogram()) == doctest::Approx(8.).epsilon(1e-14));
  CHECK(mahler_product(Norm2D::euclidean()) == doctest::Approx(kPi * kPi).epsilon(1e-14));

  // hexagon circumradius 1: area 3*sqrt(3)/2; dual is the rotated hexagon of inradius 1 whose
  // vertices sit at distance 2/sqrt(3)
  std::vector<Vec2> dual_oracle;
  for (int k = 0; k < 6; k++) dual_oracle.push_back(unit_at_angle(kPi / 6. + k * kPi / 3.) * (2. / kSqrt3));
  double oracle = shoelace(regular_hexagon().vertices()) * shoelace(dual_oracle);
  CHECK(oracle == doctest::Approx(9.).epsilon(1e-14));
  CHECK(mahler_product(regular_hexagon()) == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("area_densities examples") {
  auto e = area_densities(Norm2D::euclidean());
  CHECK(e.holmes_thompson == doctest::Approx(1.).epsilon(1e-15));
  CHECK(e.busemann_hausdorff == doctest::Approx(1.).epsilon(1e-15));

  auto s = area_densities(square());
  CHECK(s.holmes_thompson == doctest::Approx(2. / kPi).epsilon(1e-14));
  CHECK(s.busemann_hausdorff == doctest::Approx(kPi / 4.).epsilon(1e-14));
  CHECK(s.holmes_thompson < s.busemann_hausdorff);

  auto cc = area_densities(calabi_croke_parallelogram());
  CHECK(cc.holmes_thompson == doctest::Approx(32. / (kSqrt3 * kPi)).epsilon(1e-13));
  CHECK(cc.busemann_hausdorff == doctest::Approx(4. * kPi / kSqrt3).epsilon(1e-13));
}

TEST_CASE("degenerate norms are rejected at construction") {
  CHECK_THROWS_AS(Norm2D::quadratic({1, 2, 1}), InputError);
  CHECK_THROWS_AS(Norm2D::quadratic({-1, 0, -1}), InputError);
  // odd count
  CHECK_THROWS_AS(Norm2D::polygon({{1, 0}, {0, 1}, {-1, 0}}), InputError);
  // not symmetric
  CHECK_THROWS_AS(Norm2D::polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -2}}), InputError);
  // collinear triple
  CHECK_THROWS_AS(Norm2D::polygon({{1, -1}, {1, 0}, {1, 1}, {-1, 1}, {-1, 0}, {-1, -1}}), InputError);
  // clockwise
  CHECK_THROWS_AS(Norm2D::polygon({{1, 0}, {0, -1}, {-1, 0}, {0, 1}}), InputError);
}

TEST_CASE("json round trip") {
  for (const Norm2D& n : {square(), Norm2D::quadratic({2, 0.5, 1}), calabi_croke_parallelogram()}) {
    Norm2D back = norm_from_json(nlohmann::json::parse(to_json(n).dump()));
    CHECK(approx_equal(n, back, 0.));
  }
  CHECK_THROWS_AS(norm_from_json(nlohmann::json::parse(R"({"kind":"blob"})")), InputError);
  CHECK_THROWS_AS(norm_from_json(nlohmann::json::parse(R"({"kind":"quadratic","gram":[[1,0.5],[0.2,1]]})")), InputError);
}

TEST_CASE("rotated norm agrees with the rotated argument") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; k++) {
    Norm2D n = k % 2 ? sysw::testing::random_polygon_norm(rng) : sysw::testing::random_quadratic_norm(rng);
    Vec2 rot = unit_at_angle(uniform(rng, 0., 2. * kPi));
    Norm2D r = n.rotated(rot);
    Vec2 v{uniform(rng, -2, 2), uniform(rng, -2, 2)};
    CHECK(r(rotate(v, rot)) == doctest::Approx(n(v)).epsilon(1e-12));
  }
}

TEST_CASE("property: duality involution and gauge Cauchy-Schwarz") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; k++) {
    Norm2D n = sysw::testing::random_polygon_norm(rng, 2 + k % 7);
    CHECK(approx_equal(polar_dual(polar_dual(n)), n, 1e-9));
    Norm2D d = polar_dual(n);
    for (int s = 0; s < 4; s++) {
      Vec2 u{uniform(rng, -3, 3), uniform(rng, -3, 3)};
      Vec2 v{uniform(rng, -3, 3), uniform(rng, -3, 3)};
      CHECK(dot(u, v) <= n(u) * d(v) + 1e-9);
    }
  }
  for (int k = 0; k < 100; k++) {
    Norm2D q = sysw::testing::random_quadratic_norm(rng);
    Vec2 u{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    Vec2 v{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    CHECK(dot(u, v) <= q(u) * polar_dual(q)(v) + 1e-9);
  }
}

TEST_CASE("property: polygon gauge matches the vertex-pair linear program") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; k++) {
    Norm2D n = sysw::testing::random_polygon_norm(rng, 2 + k % 6);
    Vec2 v{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    CHECK(n(v) == doctest::Approx(sysw::testing::gauge_by_vertex_pairs(n.vertices(), v)).epsilon(1e-10));
  }
}

TEST_CASE("property: Mahler envelope") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 1000; k++) {
    double m = mahler_product(sysw::testing::random_polygon_norm(rng, 2 + k % 9));
    CHECK(m >= 8. - 1e-9);
    CHECK(m <= kPi * kPi + 1e-9);
  }
  for (int k = 0; k < 100; k++) CHECK(std::abs(mahler_product(sysw::testing::random_parallelogram_norm(rng)) - 8.) <= 1e-9);
}

TEST_CASE("property: density ordering") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 300; k++) {
    auto d = area_densities(sysw::testing::random_polygon_norm(rng, 2 + k % 9));
    CHECK(d.busemann_hausdorff >= d.holmes_thompson - 1e-12);
    auto q = area_densities(sysw::testing::random_quadratic_norm(rng));
    CHECK(std::abs(q.busemann_hausdorff - q.holmes_thompson) <= 1e-9 * q.holmes_thompson);
  }
}

TEST_CASE("property: homogeneity and triangle inequality") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 1000; k++) {
    Norm2D n = k % 3 ? sysw::testing::random_polygon_norm(rng, 2 + k % 5) : sysw::testing::random_quadratic_norm(rng);
    Vec2 u{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    Vec2 v{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    double t = uniform(rng, -4, 4);
    CHECK(std::abs(n(u * t) - std::abs(t) * n(u)) <= 1e-9 * (1. + n(u)));
    CHECK(n(u + v) <= n(u) + n(v) + 1e-9);
  }
  CHECK(square()({0, 0}) == 0.);
}
