#include "doctest.h"

#include "sysw/cone_surface.hpp"
#include "sysw/errors.hpp"
#include "test_support.hpp"

#include <numbers>
#include <set>

using namespace sysw;
using sysw::testing::uniform;

namespace {

const double kSqrt3 = std::sqrt(3.);
const double kPi = std::numbers::pi;

Norm2D square() { return Norm2D::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }

double angle_sum(const ConeSurface& s) {
  double total = 0.;
  for (int t = 0; t < s.num_triangles(); t++)
    for (int c = 0; c < 3; c++) total += s.corner_angle(t, c);
  return total;
}

Lattice2D random_lattice(std::mt19937_64& rng) {
  double la = uniform(rng, 0.3, 2.);
  double lb = la * uniform(rng, 0.5, 2.5);
  double t0 = uniform(rng, 0., 2 * kPi);
  double ang = uniform(rng, 0.4, kPi - 0.4);
  return Lattice2D::make(unit_at_angle(t0) * la, unit_at_angle(t0 + ang) * lb);
}

} // namespace

TEST_CASE("Calabi-Croke sphere") {
  ConeSurface s = build_calabi_croke(1.);
  CHECK(s.num_triangles() == 2);
  CHECK(s.num_vertices() == 3);
  CHECK(s.topology() == Topology::Sphere);
  CHECK(s.euler_characteristic() == 2);
  CHECK(s.area() == doctest::Approx(kSqrt3 / 2).epsilon(1e-14));
  for (int v = 0; v < 3; v++) CHECK(s.cone_angle(v) == doctest::Approx(2 * kPi / 3).epsilon(1e-14));
  auto marked = s.marked_vertices();
  REQUIRE(marked.size() == 3);
  CHECK(std::set<int>(marked.begin(), marked.end()).size() == 3);
  CHECK(std::abs(gauss_bonnet_defect(s)) < 1e-12);

  ConeSurface s2 = build_calabi_croke(2.);
  CHECK(s2.area() == doctest::Approx(2 * kSqrt3).epsilon(1e-14));
  for (int v = 0; v < 3; v++) CHECK(s2.cone_angle(v) == doctest::Approx(2 * kPi / 3).epsilon(1e-14));

  CHECK_THROWS_AS(build_calabi_croke(0.), InputError);
  CHECK_THROWS_AS(build_calabi_croke(-1.), InputError);
}

TEST_CASE("gluings identify matching corners") {
  ConeSurface s = build_calabi_croke(1.);
  for (int t = 0; t < 2; t++) {
    for (int e = 0; e < 3; e++) {
      EdgeRef n = s.neighbor({t, e});
      REQUIRE(n.valid());
      CHECK(s.neighbor(n) == EdgeRef{t, e});
      Rigid g = s.gluing_map({t, e});
      const auto& P = s.chart(t);
      const auto& Q = s.chart(n.tri);
      CHECK(distance(g.apply(P[e]), Q[(n.edge + 1) % 3]) < 1e-12);
      CHECK(distance(g.apply(P[(e + 1) % 3]), Q[n.edge]) < 1e-12);
      CHECK(s.vertex(t, e) == s.vertex(n.tri, (n.edge + 1) % 3));
      // the partner triangle lies on the other side of the shared edge
      Vec2 far = g.apply(P[(e + 2) % 3]);
      CHECK(cross(Q[(n.edge + 1) % 3] - Q[n.edge], far - Q[n.edge]) < 0);
    }
  }
}

TEST_CASE("flat torus surface") {
  std::mt19937_64 rng(11);
  SUBCASE("equilateral lattice") {
    ConeSurface s = build_flat_torus_surface(Lattice2D::equilateral(1.));
    CHECK(s.topology() == Topology::Torus);
    CHECK(s.num_vertices() == 1);
    CHECK(s.euler_characteristic() == 0);
    CHECK(s.area() == doctest::Approx(kSqrt3 / 2).epsilon(1e-14));
    CHECK(s.cone_angle(0) == doctest::Approx(2 * kPi).epsilon(1e-14));
  }
  SUBCASE("square norm on 2Z^2") {
    Lattice2D l = Lattice2D::make({2, 0}, {0, 2});
    ConeSurface s = build_flat_torus_surface(l, square());
    CHECK(s.area(AreaConvention::HolmesThompson) == doctest::Approx(8 / kPi).epsilon(1e-12));
    CHECK(s.area(AreaConvention::HolmesThompson) ==
          doctest::Approx(torus_area({l, square()}, AreaConvention::HolmesThompson)).epsilon(1e-12));
    CHECK(s.norm_field_is_parallel());
  }
  SUBCASE("random lattices develop back to themselves") {
    for (int k = 0; k < 200; k++) {
      Lattice2D l = random_lattice(rng);
      Norm2D n = k % 2 ? sysw::testing::random_polygon_norm(rng, 3 + k % 5) : Norm2D::euclidean();
      ConeSurface s = build_flat_torus_surface(l, n);
      CHECK(s.euler_characteristic() == 0);
      CHECK(s.area(AreaConvention::HolmesThompson) ==
            doctest::Approx(torus_area({l, n}, AreaConvention::HolmesThompson)).epsilon(1e-10));
      CHECK(s.norm_field_is_parallel());
      auto dev = developed_lattice(s);
      REQUIRE(dev);
      CHECK(std::abs(dev->covolume()) == doctest::Approx(std::abs(l.covolume())).epsilon(1e-10));
      // developed frame is the chart of triangle 0: compare shortest Euclidean vectors
      CHECK(shortest_vector({*dev, Norm2D::euclidean()}).length ==
            doctest::Approx(shortest_vector({l, Norm2D::euclidean()}).length).epsilon(1e-10));
      // chart norm of the developed lattice equals the original norm on the original lattice
      CHECK(shortest_vector({*dev, s.norm(0) ? *s.norm(0) : Norm2D::euclidean()}).length ==
            doctest::Approx(shortest_vector({l, n}).length).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(build_flat_torus_surface(Lattice2D{{1, 0}, {2, 0}}), InputError);
}

TEST_CASE("homology classes close around vertices") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; k++) {
    ConeSurface s = refine(build_flat_torus_surface(random_lattice(rng)), k % 3);
    REQUIRE(s.homology_rank() == 2);
    REQUIRE(s.homology_generators().size() == 2);
    for (int t = 0; t < s.num_triangles(); t++) {
      for (int e = 0; e < 3; e++) {
        EdgeRef n = s.neighbor({t, e});
        CHECK(s.crossing_class({t, e}) == -s.crossing_class(n));
      }
    }
    auto dev = developed_lattice(s);
    REQUIRE(dev);
    // crossings around a triangle's dual cycle: a loop crossing every edge of the fan is trivial
    for (int v = 0; v < s.num_vertices(); v++) {
      HomologyClass acc{0, 0};
      for (CornerRef c : s.vertex_corners(v)) acc = acc + s.crossing_class({c.tri, (c.corner + 2) % 3});
      CHECK(is_zero(acc));
    }
  }
  CHECK(build_calabi_croke().homology_rank() == 0);
}

TEST_CASE("refinement is transparent") {
  ConeSurface cc = build_calabi_croke(1.);
  ConeSurface r0 = refine(cc, 0);
  CHECK(to_json_string(r0) == to_json_string(cc));
  ConeSurface r1 = refine(cc, 1);
  CHECK(r1.num_triangles() == 8);
  CHECK(r1.area() == doctest::Approx(kSqrt3 / 2).epsilon(1e-14));
  CHECK(r1.refinement_level() == 1);
  ConeSurface r2 = refine(cc, 2);
  CHECK(r2.num_triangles() == 32);
  CHECK(r2.euler_characteristic() == 2);
  for (int v : r2.marked_vertices()) CHECK(std::abs(r2.cone_angle(v) - 2 * kPi / 3) < 1e-12);
  for (int v = 0; v < r2.num_vertices(); v++) {
    bool marked = false;
    for (int m : r2.marked_vertices()) marked = marked || m == v;
    if (!marked) CHECK(std::abs(r2.cone_angle(v) - 2 * kPi) < 1e-12);
  }
  CHECK(std::abs(gauss_bonnet_defect(r2)) < 1e-9);

  std::mt19937_64 rng(3);
  Lattice2D l = random_lattice(rng);
  ConeSurface t = build_flat_torus_surface(l, square());
  ConeSurface t2 = refine(t, 2);
  CHECK(t2.area() == doctest::Approx(t.area()).epsilon(1e-12));
  CHECK(t2.norm_field_is_parallel());
  auto dev = developed_lattice(t2);
  REQUIRE(dev);
  CHECK(std::abs(dev->covolume()) == doctest::Approx(std::abs(l.covolume())).epsilon(1e-10));
  CHECK_THROWS_AS(refine(cc, -1), InputError);
}

TEST_CASE("perturbation") {
  ConeSurface base = refine(build_calabi_croke(1.), 2);
  SUBCASE("magnitude zero is the identity") {
    CHECK(to_json_string(perturb(base, 1, 0., false)) == to_json_string(base));
  }
  SUBCASE("marked angles preserved") {
    ConeSurface p = perturb(base, 7, 0.05, true);
    for (int v : p.marked_vertices()) CHECK(std::abs(p.cone_angle(v) - 2 * kPi / 3) < 1e-12);
    CHECK(to_json_string(p) != to_json_string(base));
    CHECK(digest(p) == digest(perturb(base, 7, 0.05, true)));
    CHECK(digest(p) != digest(perturb(base, 8, 0.05, true)));
  }
  SUBCASE("lengths stay within the factor band") {
    ConeSurface p = perturb(base, 99, 0.1, false);
    for (int t = 0; t < p.num_triangles(); t++) {
      for (int e = 0; e < 3; e++) {
        double ratio = p.length(t, e) / base.length(t, e);
        CHECK(ratio >= 0.9 - 1e-15);
        CHECK(ratio <= 1.1 + 1e-15);
      }
    }
  }
  SUBCASE("Gauss-Bonnet and angle bookkeeping on random perturbations") {
    for (std::uint64_t seed = 0; seed < 50; seed++) {
      ConeSurface p = perturb(base, seed, 0.15, seed % 2 == 0);
      CHECK(std::abs(gauss_bonnet_defect(p)) < 1e-9);
      double cones = 0.;
      for (int v = 0; v < p.num_vertices(); v++) cones += p.cone_angle(v);
      CHECK(cones == doctest::Approx(angle_sum(p)).epsilon(1e-13));
      CHECK(angle_sum(p) == doctest::Approx(kPi * p.num_triangles()).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(perturb(base, 1, 0.2, false), InputError);
  CHECK_THROWS_AS(perturb(base, 1, -0.01, false), InputError);
  CHECK_THROWS_AS(perturb(build_calabi_croke(1.), 1, 0.05, false), InputError);
}

TEST_CASE("invalid complexes are rejected") {
  TriangleSpec eq{{1, 1, 1}, std::nullopt};
  std::vector<Gluing> cc{{{0, 0}, {1, 2}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 0}}};
  CHECK_NOTHROW(ConeSurface({eq, eq}, cc));
  CHECK_THROWS_AS(ConeSurface({eq, TriangleSpec{{1, 1, 1.5}, std::nullopt}}, cc), InputError);
  CHECK_THROWS_AS(ConeSurface({eq, TriangleSpec{{1, 1, 2}, std::nullopt}}, cc), InputError);
  CHECK_THROWS_AS(ConeSurface({eq, TriangleSpec{{1, 1, 0}, std::nullopt}}, cc), InputError);
  std::vector<Gluing> doubled{{{0, 0}, {1, 2}}, {{0, 0}, {1, 1}}, {{0, 2}, {1, 0}}};
  CHECK_THROWS_AS(ConeSurface({eq, eq}, doubled), InputError);
  std::vector<Gluing> missing_tri{{{0, 0}, {2, 2}}};
  CHECK_THROWS_AS(ConeSurface({eq, eq}, missing_tri), InputError);
  std::vector<CornerRef> bad_mark{{5, 0}};
  CHECK_THROWS_AS(ConeSurface({eq, eq}, cc, bad_mark), InputError);
  // a single open triangle is a disk
  ConeSurface disk({eq}, {});
  CHECK(disk.topology() == Topology::Disk);
  CHECK(disk.num_vertices() == 3);
  CHECK(disk.is_boundary_vertex(0));
}

TEST_CASE("JSON round trip and digest") {
  ConeSurface p = perturb(refine(build_calabi_croke(1.), 1), 3, 0.1, true);
  std::string text = to_json_string(p);
  CHECK(text.rfind("{\"triangles\":[{\"lengths\":[", 0) == 0);
  CHECK(text.find("\"gluings\":[[") != std::string::npos);
  CHECK(text.find("\"marked\":[") != std::string::npos);
  ConeSurface q = surface_from_json(text);
  CHECK(to_json_string(q) == text);
  CHECK(digest(q) == digest(p));
  CHECK(digest(p).size() == 16);
  for (int t = 0; t < p.num_triangles(); t++)
    for (int e = 0; e < 3; e++) CHECK(q.length(t, e) == p.length(t, e));

  ConeSurface f = build_flat_torus_surface(Lattice2D::make({2, 0}, {0.5, 1.7}), square());
  ConeSurface g = surface_from_json(to_json_string(f));
  CHECK(g.has_norm_field());
  CHECK(g.area() == doctest::Approx(f.area()).epsilon(1e-14));

  CHECK_THROWS_AS(surface_from_json("{"), InputError);
  CHECK_THROWS_AS(surface_from_json("{\"triangles\":[]}"), InputError);
  CHECK_THROWS_AS(surface_from_json(R"({"triangles":[{"lengths":[1,1,1],"norm":null}],"gluings":[[0,0,0,1,0]]})"),
                  InputError);
}

TEST_CASE("deck rotation invariance of norms") {
  Norm2D cc = calabi_croke_parallelogram();
  DeckInvarianceCheck c = deck_invariance_check(cc);
  CHECK_FALSE(c.invariant);
  CHECK(c.image_norm_of_first_vertex == doctest::Approx(2.).epsilon(1e-12));
  CHECK(deck_invariance_check(Norm2D::euclidean()).invariant);
  std::vector<Vec2> hex;
  for (int k = 0; k < 6; k++) hex.push_back(unit_at_angle(0.3 + k * kPi / 3));
  CHECK(deck_invariance_check(Norm2D::polygon(hex)).invariant);
  CHECK_FALSE(deck_invariance_check(square()).invariant);
  CHECK_FALSE(deck_invariance_check(Norm2D::quadratic({2, 0, 1})).invariant);
}
