#include "sysw/errors.hpp"
#include "sysw/render.hpp"
#include "sysw/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace sysw;

namespace {

struct Settings {
  std::string input;
  double side = 1.;
  int refine = 0;
  bool refine_set = false;
  double tol = 1e-6;
  int grid = 4;
  double return_tolerance = 1e-3;
  int polish = 20;
  std::string out = "json";
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

ConeSurface load_sphere(const Settings& s, int default_refine) {
  int level = s.refine_set ? s.refine : default_refine;
  if (level < 0) throw InputError("--refine must be nonnegative");
  ConeSurface base = s.input.empty() ? build_calabi_croke(s.side) : surface_from_json(read_file(s.input));
  return level > 0 ? refine(base, level) : base;
}

VerifyOptions verify_options(const Settings& s) {
  if (!(s.tol > 0.)) throw InputError("--tol must be positive");
  if (s.grid < 1) throw InputError("--grid must be at least 1");
  VerifyOptions o;
  o.sweep.tol = s.tol;
  o.properties.search.grid = s.grid;
  o.properties.search.return_tolerance = s.return_tolerance;
  o.properties.search.polish_iterations = s.polish;
  return o;
}

void require_json(const Settings& s, const char* command) {
  if (s.out != "json") throw InputError(std::string(command) + " supports only --out json");
}

nlohmann::json class_json(HomologyClass c) { return nlohmann::json::array({c[0], c[1]}); }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

Norm2D random_norm(std::mt19937_64& rng, bool parallelogram) {
  if (parallelogram) {
    for (;;) {
      Vec2 u{uniform(rng, -1., 1.), uniform(rng, -1., 1.)}, v{uniform(rng, -1., 1.), uniform(rng, -1., 1.)};
      if (cross(u, v) < 0.) std::swap(u, v);
      if (cross(u, v) > 0.05) return Norm2D::parallelogram(u, v);
    }
  }
  for (;;) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 6; i++) {
      Vec2 p{uniform(rng, -1., 1.), uniform(rng, -1., 1.)};
      pts.push_back(p);
      pts.push_back(-p);
    }
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Vec2> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); i++) {
      while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-12) k--;
      h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i > 0; i--) {
      while (k >= t && cross(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 1e-12) k--;
      h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    if (h.size() < 4) continue;
    try {
      return Norm2D::polygon(h);
    } catch (const InputError&) {
    }
  }
}

int emit(const nlohmann::json& j) {
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_build_cc(const Settings& s) {
  require_json(s, "build-cc");
  if (!(s.side > 0.)) throw InputError("--side must be positive");
  std::cout << to_json_string(load_sphere(s, 0)) << "\n";
  return 0;
}

int cmd_cover(const Settings& s) {
  require_json(s, "cover");
  CoverMap cover = ramified_cover(load_sphere(s, 0));
  DeckReport d = check_deck(cover);
  nlohmann::json ram = nlohmann::json::array();
  for (int i = 0; i < 3; i++) {
    int sv = cover.sphere().marked_vertices()[i];
    int tv = cover.ramification_points()[i];
    ram.push_back({{"sphere_vertex", sv},
                   {"torus_vertex", tv},
                   {"sphere_angle", cover.sphere().cone_angle(sv)},
                   {"torus_angle", cover.torus().cone_angle(tv)}});
  }
  return emit({{"area_sphere", cover.sphere().area()},
               {"area_torus", cover.torus().area()},
               {"ramification", ram},
               {"deck",
                {{"order_three", d.order_three},
                 {"commutes_with_projection", d.commutes_with_projection},
                 {"preserves_lengths", d.preserves_lengths},
                 {"maps_gluings", d.maps_gluings},
                 {"fixed_vertices", d.fixed_vertices}}},
               {"torus", parse_json(to_json_string(cover.torus()))}});
}

int cmd_systole(const Settings& s) {
  require_json(s, "systole");
  if (!s.input.empty()) {
    nlohmann::json j = parse_json(read_file(s.input));
    if (j.contains("lattice")) {
      FlatTorus t = torus_from_json(j);
      SystoleResult r = shortest_vector(t);
      return emit({{"kind", "flat_torus"}, {"length", r.length}, {"m", r.m}, {"n", r.n}, {"vector", {r.vector.x, r.vector.y}}});
    }
  }
  ConeSurface surface = load_sphere(s, 0);
  if (surface.topology() == Topology::Torus) {
    TorusSystole t = torus_systole(surface);
    return emit({{"kind", "torus"}, {"length", t.length}, {"class", class_json(t.cls)}, {"loop", to_json(t.loop)}});
  }
  CoverMap cover = ramified_cover(surface);
  TorusSystole t = torus_systole(cover.torus());
  double delta = min_vertex_distance(surface);
  nlohmann::json pointed = nlohmann::json::array();
  for (int i = 0; i < 3; i++) {
    try {
      PointedSystole p = pointed_systole_punctured(cover, i, 2. * delta);
      pointed.push_back({{"length", p.length}, {"sphere_loop", to_json(p.sphere_loop)}});
    } catch (const SearchExhausted&) {
      pointed.push_back({{"length", nullptr}});
    }
  }
  return emit({{"kind", "sphere"},
               {"sys_torus", t.length},
               {"class", class_json(t.cls)},
               {"delta", delta},
               {"pointed_systoles", pointed}});
}

int cmd_dias_upper(const Settings& s, bool with_witness) {
  require_json(s, "dias-upper");
  CoverMap cover = ramified_cover(load_sphere(s, 0));
  DiasBound d = dias_upper_bound(cover, verify_options(s).sweep);
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : d.candidates) cands.push_back({{"source", c.source}, {"loop_length", c.loop_length}, {"minimax", c.minimax}});
  nlohmann::json j = {{"dias_upper", d.value}, {"candidates", cands}, {"frames", d.witness.frames.size()}};
  if (with_witness) j["witness"] = to_json(d.witness);
  return emit(j);
}

int cmd_verify(const Settings& s, const std::string& mode, bool bare) {
  VerificationReport r;
  if (mode == "riemannian") {
    r = verify_riemannian(load_sphere(s, 0), verify_options(s));
  } else {
    FlatTorus t{Lattice2D::equilateral(), calabi_croke_parallelogram()};
    if (!s.input.empty()) t = torus_from_json(parse_json(read_file(s.input)));
    r = verify_finsler(t, !bare);
  }
  if (s.out == "csv") {
    ScanResult one;
    one.rows.push_back({0, r});
    std::string csv = scan_csv(one);
    std::cout << csv.substr(0, csv.find("\n#") + 1);
  } else {
    std::cout << to_json(r, s.timing).dump(2) << "\n";
  }
  return r.verdict == "pass" ? 0 : 1;
}

int cmd_scan(const Settings& s, int n, double magnitude, std::uint64_t seed) {
  ScanResult res = scan(load_sphere(s, 2), n, magnitude, seed, verify_options(s));
  if (s.out == "csv") std::cout << scan_csv(res);
  else std::cout << to_json(res, s.timing).dump(2) << "\n";
  return res.summary.pass ? 0 : 1;
}

int cmd_mahler(const Settings& s, int n, std::uint64_t seed, const std::string& kind) {
  require_json(s, "mahler");
  if (n <= 0) {
    Norm2D norm = s.input.empty() ? calabi_croke_parallelogram() : norm_from_json(parse_json(read_file(s.input)));
    AreaDensities a = area_densities(norm);
    return emit({{"norm", to_json(norm)},
                 {"polar", to_json(polar_dual(norm))},
                 {"ball_area", ball_area(norm)},
                 {"polar_area", ball_area(polar_dual(norm))},
                 {"mahler_product", mahler_product(norm)},
                 {"holmes_thompson_density", a.holmes_thompson},
                 {"busemann_hausdorff_density", a.busemann_hausdorff}});
  }
  if (kind != "polygon" && kind != "parallelogram") throw InputError("--kind must be polygon or parallelogram");
  std::mt19937_64 rng(seed);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  nlohmann::json products = nlohmann::json::array();
  for (int k = 0; k < n; k++) {
    double p = mahler_product(random_norm(rng, kind == "parallelogram"));
    products.push_back(p);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  bool ok = kind == "parallelogram" ? (lo >= 8. - 1e-9 && hi <= 8. + 1e-9) : (lo >= 8. - 1e-9 && hi <= pi2 + 1e-9);
  emit({{"kind", kind}, {"n", n}, {"seed", seed}, {"min", lo}, {"max", hi}, {"within_bounds", ok}, {"products", products}});
  return ok ? 0 : 1;
}

int cmd_render(const Settings& s, const std::string& path, const std::string& what) {
  require_json(s, "render");
  if (path.empty()) throw InputError("--svg PATH is required");
  CoverMap cover = ramified_cover(load_sphere(s, 0));
  std::string svg;
  if (what == "development") {
    std::vector<GeodesicPath> loops;
    double budget = 2. * min_vertex_distance(cover.sphere());
    for (int i = 0; i < 3; i++) {
      try {
        loops.push_back(pointed_systole_punctured(cover, i, budget).sphere_loop);
      } catch (const SearchExhausted&) {
      }
    }
    svg = development_svg(cover.sphere(), loops);
  } else if (what == "torus") {
    svg = development_svg(cover.torus(), {torus_systole(cover.torus()).loop});
  } else if (what == "sweepout") {
    svg = sweepout_svg(cover.sphere(), dias_upper_bound(cover, verify_options(s).sweep).witness);
  } else {
    throw InputError("--what must be development, torus or sweepout");
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << svg;
  return emit({{"svg", path}, {"what", what}, {"bytes", svg.size()}});
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systolic and diastolic inequality workbench for spheres and their triple covers"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--input", s.input, "Surface JSON (or flat torus / norm JSON where accepted)");
  app.add_option("--side", s.side, "Side of the Calabi-Croke sphere used when no input is given");
  app.add_option("--refine", s.refine, "Refinement level")->each([&](const std::string&) { s.refine_set = true; });
  app.add_option("--tol", s.tol, "Relative tolerance of Birkhoff shortening");
  app.add_option("--grid", s.grid, "Closed geodesic search grid");
  app.add_option("--return-tolerance", s.return_tolerance, "Near-return holonomy tolerance");
  app.add_option("--polish", s.polish, "Birkhoff polish rounds for closed geodesic candidates");
  app.add_option("--out", s.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", s.timing, "Include wall-clock seconds");

  auto* build = app.add_subcommand("build-cc", "Calabi-Croke sphere as surface JSON");
  auto* cover = app.add_subcommand("cover", "Triple cover branched over the marked vertices");
  auto* systole = app.add_subcommand("systole", "Torus systole and pointed systoles");
  auto* dias = app.add_subcommand("dias-upper", "Diastole upper bound from sweepouts");
  bool witness = false;
  dias->add_flag("--witness", witness, "Include the frames of the best sweepout");
  auto* verify = app.add_subcommand("verify", "Verify the inequality chain");
  std::string mode = "riemannian";
  bool bare = false;
  verify->add_option("--mode", mode, "riemannian or finsler")->check(CLI::IsMember({"riemannian", "finsler"}));
  verify->add_flag("--bare", bare, "Finsler: torus inequality only, no descent to the sphere");
  auto* scan_cmd = app.add_subcommand("scan", "Perturbation scan around the sphere (refinement 2 by default)");
  int n = 100;
  double magnitude = 0.05;
  std::uint64_t seed = 42;
  scan_cmd->add_option("--n", n, "Number of perturbations");
  scan_cmd->add_option("--magnitude", magnitude, "Relative edge perturbation");
  scan_cmd->add_option("--seed", seed, "First seed");
  auto* mahler = app.add_subcommand("mahler", "Mahler product of a norm, or of random norms with --n");
  int mahler_n = 0;
  std::uint64_t mahler_seed = 1;
  std::string kind = "polygon";
  mahler->add_option("--n", mahler_n, "Number of random norms");
  mahler->add_option("--seed", mahler_seed, "Random seed");
  mahler->add_option("--kind", kind, "polygon or parallelogram");
  auto* render = app.add_subcommand("render", "SVG of a development or a sweepout");
  std::string svg_path, what = "development";
  render->add_option("--svg", svg_path, "Output file")->required();
  render->add_option("--what", what, "development, torus or sweepout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build_cc(s);
    if (*cover) return cmd_cover(s);
    if (*systole) return cmd_systole(s);
    if (*dias) return cmd_dias_upper(s, witness);
    if (*verify) return cmd_verify(s, mode, bare);
    if (*scan_cmd) return cmd_scan(s, n, magnitude, seed);
    if (*mahler) return cmd_mahler(s, mahler_n, mahler_seed, kind);
    if (*render) return cmd_render(s, svg_path, what);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return 3;
  } catch (const ShorteningFailure& e) {
    std::cerr << "shortening failed: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
