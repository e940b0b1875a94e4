// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path to the sysw CLI>

#include "sysw/errors.hpp"
#include "sysw/render.hpp"
#include "sysw/verifier.hpp"
#include "loop_support.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace sysw;
using namespace sysw::testing;

namespace {

const double kSqrt3 = std::sqrt(3.);
const double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "failed: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void loewner_equality(Outcome& o) {
  LoewnerReport r = loewner_report({Lattice2D::make({kSqrt3, 0.}, {kSqrt3 / 2., 1.5}), Norm2D::euclidean()});
  o.require(std::abs(r.ratio - kSqrt3 / 2.) <= 1e-9, "ratio " + fmt(r.ratio));
  o.require(r.equality, "equality not flagged");
  if (o.ok) o.detail << "area/sys^2 = " << fmt(r.ratio);
}

void finsler_loewner(Outcome& o) {
  FlatTorus sq{Lattice2D::make({2, 0}, {0, 2}), Norm2D::polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}})};
  VerificationReport r = verify_finsler(sq, false);
  o.require(std::abs(r.torus_ratio - 2. / kPi) <= 1e-9, "square ratio " + fmt(r.torus_ratio));
  std::mt19937_64 rng(20261014);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 500; k++) {
    Vec2 a{uniform(rng, 0.5, 2.), uniform(rng, -0.5, 0.5)};
    Vec2 b{uniform(rng, -1., 1.), uniform(rng, 0.5, 2.)};
    FlatTorus t{Lattice2D::make(a, b), random_polygon_norm(rng, 4 + k % 5)};
    worst = std::min(worst, loewner_report(t).ratio);
  }
  o.require(worst >= 2. / kPi - 1e-9, "random torus ratio " + fmt(worst));
  if (o.ok) o.detail << "square ratio " << fmt(r.torus_ratio) << ", min over 500 random tori " << fmt(worst);
}

void mahler(Outcome& o) {
  std::mt19937_64 rng(11);
  double plo = 1e9, phi = -1e9, qlo = 1e9, qhi = -1e9;
  for (int k = 0; k < 100; k++) {
    double p = mahler_product(random_parallelogram_norm(rng));
    plo = std::min(plo, p), phi = std::max(phi, p);
  }
  for (int k = 0; k < 1000; k++) {
    double p = mahler_product(random_polygon_norm(rng, 3 + k % 8));
    qlo = std::min(qlo, p), qhi = std::max(qhi, p);
  }
  o.require(plo >= 8. - 1e-9 && phi <= 8. + 1e-9, "parallelogram range [" + fmt(plo) + ", " + fmt(phi) + "]");
  o.require(qlo >= 8. - 1e-9 && qhi <= kPi * kPi + 1e-9, "polygon range [" + fmt(qlo) + ", " + fmt(qhi) + "]");
  if (o.ok) o.detail << "parallelograms in [" << fmt(plo) << ", " << fmt(phi) << "], polygons in [" << fmt(qlo) << ", " << fmt(qhi) << "]";
}

void cover_bookkeeping(Outcome& o) {
  ConeSurface base = refine(build_calabi_croke(1.), 2);
  std::vector<ConeSurface> spheres{build_calabi_croke(1.)};
  for (std::uint64_t seed = 0; seed < 100; seed++) spheres.push_back(perturb(base, seed, 0.05, true));
  double worst_area = 0., worst_angle = 0.;
  for (const auto& s : spheres) {
    CoverMap c = ramified_cover(s);
    worst_area = std::max(worst_area, std::abs(c.torus().area() - 3. * s.area()));
    DeckReport d = check_deck(c);
    bool cube = true;
    for (int t = 0; t < c.torus().num_triangles(); t++) cube = cube && c.deck(t, 3) == t && c.deck(t, 1) != t;
    o.require(d.order_three && cube && d.maps_gluings && d.commutes_with_projection, "deck map is not of order three");
    for (int i = 0; i < 3; i++) {
      double sa = s.cone_angle(s.marked_vertices()[i]);
      double ta = c.torus().cone_angle(c.ramification_points()[i]);
      worst_angle = std::max(worst_angle, std::abs(ta - 3. * sa));
    }
  }
  o.require(worst_area <= 1e-9, "area defect " + fmt(worst_area));
  o.require(worst_angle <= 1e-9, "ramification angle defect " + fmt(worst_angle));
  if (o.ok) o.detail << "101 surfaces, max |area(T)-3 area(S)| " << fmt(worst_area) << ", max angle defect " << fmt(worst_angle);
}

void calabi_croke_constants(Outcome& o) {
  VerificationReport r = verify_riemannian(build_calabi_croke(1.));
  o.require(std::abs(r.sys_torus - kSqrt3) <= 1e-9, "sys " + fmt(r.sys_torus));
  o.require(std::abs(r.dias_upper - kSqrt3) <= 1e-6, "dias_upper " + fmt(r.dias_upper));
  o.require(std::abs(r.ratio_sys - 1. / (2. * kSqrt3)) <= 1e-9, "ratio " + fmt(r.ratio_sys));
  o.require(r.equality && r.verdict == "pass", "verdict " + r.verdict);
  if (o.ok) o.detail << "sys " << fmt(r.sys_torus) << ", dias_upper " << fmt(r.dias_upper) << ", ratio " << fmt(r.ratio_sys);
}

void pointed_systole_bracket(Outcome& o) {
  CoverMap exact = ramified_cover(build_calabi_croke(1.));
  CoverMap fine = ramified_cover(refine(build_calabi_croke(1.), 5));
  const auto& ram = fine.ramification_points();
  for (int i = 0; i < 3; i++) {
    double value = pointed_systole_punctured(exact, i, 2.).length;
    double oracle = graph_noncontractible_loop(fine.torus(), ram[i], {ram[(i + 1) % 3], ram[(i + 2) % 3]}, 3.);
    o.require(value >= kSqrt3 - 1e-6 && value < 2., "value " + fmt(value) + " outside [sqrt 3, 2)");
    o.require(std::abs(oracle - value) <= 0.01 * value, "graph oracle " + fmt(oracle) + " vs " + fmt(value));
    if (i == 0) o.detail << "x1: " << fmt(value) << " (graph oracle " << fmt(oracle) << ")";
  }
}

void figure_eight(Outcome& o) {
  for (int level : {0, 1, 2}) {
    CoverMap cover = ramified_cover(refine(build_calabi_croke(1.), level));
    Classification c = classify_systolic_projection(cover, off_vertex_systolic_loop(cover.torus()));
    bool ok = c.kind == Classification::Kind::FigureEight && c.figure_eight && c.figure_eight->regions.count == 3;
    if (ok) {
      std::vector<int> seen;
      for (const auto& region : c.figure_eight->regions.marked) {
        ok = ok && region.size() == 1;
        if (region.size() == 1) seen.push_back(region[0]);
      }
      std::sort(seen.begin(), seen.end());
      ok = ok && seen == std::vector<int>{0, 1, 2};
    }
    o.require(ok, "level " + std::to_string(level) + ": " + c.diagnostic);
  }
  if (o.ok) o.detail << "three domains with one marked vertex each at refinement levels 0, 1, 2";
}

void shortening(Outcome& o) {
  ConeSurface base = refine(build_calabi_croke(1.), 2);
  std::vector<ConeSurface> surfaces{base, perturb(base, 3, 0.05, true), ramified_cover(perturb(base, 4, 0.05, true)).torus(),
                                    equilateral_torus(), development_patch(equilateral_torus(), 3).surface};
  std::mt19937_64 rng(17);
  int loops = 0, monotone = 0;
  for (int attempt = 0; loops < 200 && attempt < 1000; attempt++) {
    const ConeSurface& s = surfaces[attempt % surfaces.size()];
    GeodesicEngine engine(s);
    auto made = random_marked_loop(s, engine, rng);
    if (!made) continue;
    MarkedLoop loop = *made;
    std::vector<double> lengths{loop.length};
    for (int it = 0; it < 10; it++) {
      loop = shorten_step(loop, engine);
      lengths.push_back(loop.length);
    }
    loops++;
    monotone += non_increasing(lengths, 1e-12);
  }
  o.require(loops == 200 && monotone == loops, std::to_string(monotone) + " of " + std::to_string(loops) + " traces non-increasing");

  const ConeSurface& D = surfaces[4];
  SurfacePoint q = D.point_from_barycentric(0, {1., 1., 1.});
  int points = 0;
  for (int k : {3, 4, 5, 6, 8}) {
    ShortenResult r = shorten(marked_loop(D, polygon(D, q, regular_sides(k, 2.4 / k, 0.1 * k))), 1e-7, 5000);
    points += r.status == ShortenResult::Status::Point;
  }
  o.require(points == 5, std::to_string(points) + " of 5 convex polygons reached a point");

  double drift = 0.;
  for (int level : {0, 1}) {
    CoverMap cover = ramified_cover(refine(build_calabi_croke(1.), level));
    MarkedLoop m = marked_loop(cover.torus(), off_vertex_systolic_loop(cover.torus()));
    GeodesicEngine engine(cover.torus());
    double start = m.length;
    for (int k = 0; k < 100; k++) m = shorten_step(m, engine);
    drift = std::max(drift, std::abs(m.length - start));
  }
  o.require(drift < 1e-9, "systolic loop drift " + fmt(drift));
  if (o.ok) o.detail << loops << " monotone traces, " << points << " polygons to points, fixed-point drift " << fmt(drift);
}

void extremality_scan(Outcome& o) {
  ScanResult res = scan(refine(build_calabi_croke(1.), 2), 100, 0.05, 0);
  const ScanSummary& s = res.summary;
  o.require(s.rows == 100, "rows " + std::to_string(s.rows));
  o.require(s.excluded < s.rows, "every row failed the property checks");
  o.require(s.min_ratio_holds, "min ratio " + fmt(s.min_ratio));
  o.require(s.base_attains_min, "base ratio " + fmt(s.base_ratio) + " above perturbed min " + fmt(s.min_ratio));
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& row : res.rows) worst = std::min(worst, row.report.ratio_sys);
  o.require(worst >= 1. / (2. * kSqrt3) - 1e-6, "row ratio " + fmt(worst));
  if (o.ok)
    o.detail << "base " << fmt(s.base_ratio) << ", perturbed min " << fmt(s.min_ratio) << " at seed " << s.argmin_seed
             << ", " << s.excluded << " rows excluded by property checks";
}

void finsler_audit(Outcome& o) {
  Norm2D f0 = calabi_croke_parallelogram();
  Lattice2D lattice = Lattice2D::equilateral();
  // gauge linear program over nearby lattice vectors
  double sys_oracle = std::numeric_limits<double>::infinity();
  for (int m = -4; m <= 4; m++)
    for (int n = -4; n <= 4; n++)
      if (m || n) sys_oracle = std::min(sys_oracle, gauge_by_vertex_pairs(f0.vertices(), lattice.at(m, n)));
  // polar polygon: one vertex per edge of the unit disk, w . v_i = w . v_(i+1) = 1
  const auto& v = f0.vertices();
  std::vector<Vec2> polar;
  for (size_t i = 0; i < v.size(); i++) {
    Vec2 a = v[i], b = v[(i + 1) % v.size()];
    double d = cross(a, b);
    polar.push_back({(b.y - a.y) / d, (a.x - b.x) / d});
  }
  double polar_area = 0.;
  for (size_t i = 0; i < polar.size(); i++) polar_area += cross(polar[i], polar[(i + 1) % polar.size()]) / 2.;
  double area_oracle = lattice.covolume() * polar_area / kPi;

  VerificationReport r = verify_finsler({lattice, f0}, true);
  o.require(std::abs(sys_oracle - 2.) <= 1e-9 && std::abs(r.sys_torus - sys_oracle) <= 1e-9, "sys " + fmt(r.sys_torus) + " oracle " + fmt(sys_oracle));
  o.require(std::abs(area_oracle - 16. / kPi) <= 1e-9 && std::abs(r.area_torus - area_oracle) <= 1e-9,
            "area " + fmt(r.area_torus) + " oracle " + fmt(area_oracle));
  o.require(std::abs(r.ratio_sys - 4. / (3. * kPi)) <= 1e-9 && r.ratio_sys >= 2. / (3. * kPi), "descended ratio " + fmt(r.ratio_sys));
  o.require(!r.deck_invariant, "parallelogram reported deck-invariant");
  o.require(r.equality_discrepancy, "discrepancy not flagged");
  if (o.ok)
    o.detail << "sys " << fmt(r.sys_torus) << ", HT area " << fmt(r.area_torus) << ", descended ratio " << fmt(r.ratio_sys)
             << " >= " << fmt(2. / (3. * kPi)) << ", deck-invariant false, discrepancy flagged";
}

std::string run(const std::string& cmd, int& code) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Outcome& o, const std::string& cli) {
  if (cli.empty()) {
    o.require(false, "no CLI path given");
    return;
  }
  const std::string svg = "acceptance_render.svg";
  const std::vector<std::string> commands{
      "build-cc --side 1.5 --refine 1",
      "cover --refine 1",
      "systole",
      "dias-upper --refine 1 --witness",
      "verify --mode riemannian",
      "verify --mode riemannian --refine 2 --out csv",
      "verify --mode finsler",
      "scan --n 3 --magnitude 0.05 --seed 7 --out csv",
      "scan --n 2 --magnitude 0.05 --seed 9",
      "mahler",
      "mahler --n 200 --seed 3",
      "render --svg " + svg + " --what development",
      "render --svg " + svg + " --what torus",
      "render --svg " + svg + " --what sweepout"};
  int identical = 0;
  for (const auto& c : commands) {
    int c1 = 0, c2 = 0;
    std::string a = run(cli + " " + c + " 2>&1", c1);
    std::string fa = c.rfind("render", 0) == 0 ? slurp(svg) : "";
    std::string b = run(cli + " " + c + " 2>&1", c2);
    std::string fb = c.rfind("render", 0) == 0 ? slurp(svg) : "";
    bool same = a == b && fa == fb && c1 == c2 && !a.empty();
    o.require(same, "'" + c + "' differs between runs");
    o.require(c1 == 0, "'" + c + "' exited with " + std::to_string(c1));
    identical += same;
  }
  std::remove(svg.c_str());
  if (o.ok) o.detail << identical << " commands byte-identical across two runs";
}

} // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Loewner equality", loewner_equality},
      {"Finsler Loewner equality and inequality", finsler_loewner},
      {"Mahler product bounds", mahler},
      {"Cover bookkeeping", cover_bookkeeping},
      {"Calabi-Croke constants", calabi_croke_constants},
      {"Pointed systole bracket", pointed_systole_bracket},
      {"Figure-eight structure", figure_eight},
      {"Shortening properties", shortening},
      {"Local-extremality scan", extremality_scan},
      {"Finsler Calabi-Croke audit", finsler_audit},
      {"Determinism", [&](Outcome& o) { determinism(o, cli); }}};
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); k++) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << k + 1 << ". " << criteria[k].first << ": " << o.detail.str() << std::endl;
  }
  return failed ? 1 : 0;
}
