#include "sysw/verifier.hpp"

#include "sysw/errors.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numbers>
#include <thread>

namespace sysw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }
double number_or_inf(const nlohmann::json& j) { return j.is_null() ? kInf : j.get<double>(); }

std::string fnv_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

PropertyReport property_report(const CoverMap& cover, double dias_upper, const PropertyOptions& options) {
  const ConeSurface& S = cover.sphere();
  PropertyReport r;
  r.delta = min_vertex_distance(S);
  for (int i = 0; i < 3; i++) {
    try {
      r.pointed_systole[i] = pointed_systole_punctured(cover, i, 2. * r.delta).length;
      r.p1[i] = r.pointed_systole[i] < 2. * r.delta;
    } catch (const SearchExhausted&) {
      r.pointed_systole[i] = kInf;
      r.p1[i] = false;
    }
  }
  auto marked = S.marked_vertices();
  r.p2 = true;
  for (int i = 0; i < 3; i++) {
    r.marked_angles[i] = S.cone_angle(marked[i]);
    r.p2 = r.p2 && r.marked_angles[i] < std::numbers::pi;
  }
  r.p3_bound = 3. * dias_upper;
  r.p3_grid = options.search.grid;
  r.p3_return_tolerance = options.search.return_tolerance;
  r.p3_patch_depth = options.patch_depth;
  if (std::isfinite(r.p3_bound)) {
    try {
      DevelopmentPatch patch = development_patch(cover.torus(), options.patch_depth);
      r.p3_loops_found = static_cast<int>(closed_geodesic_search(patch.surface, r.p3_bound, options.search).size());
      r.p3_heuristic = r.p3_loops_found == 0;
    } catch (const InputError&) {
      r.p3_heuristic = false;
    }
  }
  return r;
}

PropertyReport property_report(const CoverMap& cover, const PropertyOptions& options) {
  double dias = kInf;
  try {
    dias = dias_upper_bound(cover).value;
  } catch (const SearchExhausted&) {
  }
  return property_report(cover, dias, options);
}

VerificationReport verify_riemannian(const ConeSurface& sphere, const VerifyOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  if (sphere.topology() != Topology::Sphere) throw InputError("verify_riemannian: surface is not a sphere");
  if (sphere.marked_vertices().size() != 3) throw InputError("verify_riemannian: exactly three marked vertices are needed");
  for (int t = 0; t < sphere.num_triangles(); t++)
    if (sphere.norm(t)) throw InputError("verify_riemannian: charts must be Euclidean");

  VerificationReport r;
  r.mode = "riemannian";
  r.digest = digest(sphere);
  r.refinement_level = sphere.refinement_level();
  r.tol = options.sweep.tol;
  r.grid = options.properties.search.grid;

  CoverMap cover = ramified_cover(sphere);
  const ConeSurface& T = cover.torus();
  r.area_sphere = sphere.area();
  r.area_torus = T.area(AreaConvention::HolmesThompson);
  r.area_torus_bh = T.area(AreaConvention::BusemannHausdorff);
  r.sys_torus = torus_systole(T).length;

  r.dias_upper = kInf;
  try {
    DiasBound d = dias_upper_bound(cover, options.sweep);
    r.dias_upper = d.value;
    for (const auto& c : d.candidates) r.dias_generators.push_back(c.loop_length);
  } catch (const SearchExhausted&) {
    r.notes.push_back("no sweepout could be constructed; dias upper bound unavailable");
  } catch (const ShorteningFailure& e) {
    r.notes.push_back(std::string("sweepout construction failed: ") + e.what());
  }
  r.has_properties = true;
  r.properties = property_report(cover, r.dias_upper, options.properties);

  r.bound_sys = kSphereBound;
  r.bound_dias = kSphereBound;
  r.torus_bound = kLoewnerBound;
  r.ratio_sys = r.area_sphere / (r.sys_torus * r.sys_torus);
  r.ratio_dias = std::isfinite(r.dias_upper) ? r.area_sphere / (r.dias_upper * r.dias_upper) : 0.;
  r.torus_ratio = r.area_torus / (r.sys_torus * r.sys_torus);
  r.ratio_sys_holds = r.ratio_sys >= r.bound_sys - 1e-9;
  r.ratio_dias_holds = std::isfinite(r.dias_upper) && r.ratio_dias >= r.bound_dias - 1e-9;

  auto lattice = developed_lattice(T);
  r.torus_equilateral = lattice && is_equilateral(gauss_reduce(*lattice), 1e-6);
  r.equality = std::abs(r.ratio_sys - r.bound_sys) <= 1e-6 && r.torus_equilateral;

  double min_generator = kInf;
  for (double g : r.dias_generators) min_generator = std::min(min_generator, g);
  r.chain_consistent = std::abs(r.area_torus - 3. * r.area_sphere) <= 1e-9 * std::max(1., r.area_torus) &&
                       (!std::isfinite(r.dias_upper) || r.dias_upper <= min_generator + 1e-9);

  const PropertyReport& p = r.properties;
  for (int i = 0; i < 3; i++)
    if (!p.p1[i]) r.notes.push_back("P1 fails at marked vertex " + std::to_string(i));
  if (!p.p2) r.notes.push_back("P2 fails: a marked cone angle is not below pi");
  if (!std::isfinite(p.p3_bound)) r.notes.push_back("P3 (heuristic) not checked: no diastole upper bound");
  else if (!p.p3_heuristic) r.notes.push_back("P3 (heuristic) fails: closed geodesics found below 3 dias_upper");
  if (r.equality) r.notes.push_back("equality case: ratio attains 1/(2 sqrt 3) on an equilateral torus cover");
  if (!r.chain_consistent) r.notes.push_back("chain bookkeeping inconsistent");

  if (!r.ratio_sys_holds) r.verdict = "fail";
  else if (!p.all()) r.verdict = "hypotheses_not_met";
  else r.verdict = "pass";
  r.seconds = elapsed_since(t0);
  return r;
}

VerificationReport verify_finsler(const FlatTorus& torus, bool descend) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.mode = "finsler";
  r.digest = fnv_hex(to_json(torus).dump());
  SystoleResult sv = shortest_vector(torus);
  r.sys_torus = sv.length;
  r.area_torus = torus_area(torus, AreaConvention::HolmesThompson);
  r.area_torus_bh = torus_area(torus, AreaConvention::BusemannHausdorff);
  r.torus_ratio = r.area_torus / (r.sys_torus * r.sys_torus);
  r.torus_bound = kFinslerTorusBound;
  r.descended = descend;
  DeckInvarianceCheck deck = deck_invariance_check(torus.norm);
  r.deck_invariant = deck.invariant;
  r.deck_discrepancy = deck.max_discrepancy;
  r.torus_equilateral = is_equilateral(gauss_reduce(torus.lattice), 1e-6);
  if (descend) {
    r.area_sphere = r.area_torus / 3.;
    r.dias_upper = r.sys_torus;
    r.dias_generators = {r.sys_torus};
    r.ratio_sys = r.area_sphere / (r.sys_torus * r.sys_torus);
    r.ratio_dias = r.ratio_sys;
    r.bound_sys = r.bound_dias = kFinslerSphereBound;
    r.ratio_dias_holds = r.ratio_dias >= r.bound_dias - 1e-9;
    r.chain_consistent = true;
  } else {
    r.ratio_sys = r.torus_ratio;
    r.bound_sys = kFinslerTorusBound;
    r.chain_consistent = true;
  }
  r.ratio_sys_holds = r.ratio_sys >= r.bound_sys - 1e-9 && r.torus_ratio >= r.torus_bound - 1e-9;
  r.equality = std::abs(r.torus_ratio - r.torus_bound) <= 1e-9;
  if (r.equality) r.notes.push_back("equality case: torus ratio attains 2/pi");
  if (descend) {
    if (!r.deck_invariant) r.notes.push_back("norm is not invariant under the order-three deck rotation");
    r.equality_discrepancy = r.ratio_sys > r.bound_sys + 1e-9 || !r.deck_invariant;
    if (r.equality_discrepancy)
      r.notes.push_back("descended ratio is strictly above 2/(3 pi): the equality case claimed for the Finsler "
                        "Calabi-Croke sphere is not reproduced under Holmes-Thompson area");
  }
  r.verdict = r.ratio_sys_holds ? "pass" : "fail";
  r.seconds = elapsed_since(t0);
  return r;
}

nlohmann::json to_json(const PropertyReport& p) {
  nlohmann::json ps = nlohmann::json::array();
  for (double x : p.pointed_systole) ps.push_back(finite_or_null(x));
  return {{"delta", p.delta},
          {"pointed_systole", ps},
          {"p1", p.p1},
          {"marked_angles", p.marked_angles},
          {"p2", p.p2},
          {"p3_heuristic", p.p3_heuristic},
          {"p3_bound", finite_or_null(p.p3_bound)},
          {"p3_loops_found", p.p3_loops_found},
          {"p3_grid", p.p3_grid},
          {"p3_return_tolerance", p.p3_return_tolerance},
          {"p3_patch_depth", p.p3_patch_depth}};
}

PropertyReport property_report_from_json(const nlohmann::json& j) {
  PropertyReport p;
  p.delta = j.at("delta").get<double>();
  for (int i = 0; i < 3; i++) p.pointed_systole[i] = number_or_inf(j.at("pointed_systole").at(i));
  p.p1 = j.at("p1").get<std::array<bool, 3>>();
  p.marked_angles = j.at("marked_angles").get<std::array<double, 3>>();
  p.p2 = j.at("p2").get<bool>();
  p.p3_heuristic = j.at("p3_heuristic").get<bool>();
  p.p3_bound = number_or_inf(j.at("p3_bound"));
  p.p3_loops_found = j.at("p3_loops_found").get<int>();
  p.p3_grid = j.at("p3_grid").get<int>();
  p.p3_return_tolerance = j.at("p3_return_tolerance").get<double>();
  p.p3_patch_depth = j.at("p3_patch_depth").get<int>();
  return p;
}

nlohmann::json to_json(const VerificationReport& r, bool timing) {
  nlohmann::json j;
  j["mode"] = r.mode;
  j["digest"] = r.digest;
  if (r.has_properties) j["properties"] = to_json(r.properties);
  j["area_sphere"] = r.area_sphere;
  j["area_torus"] = r.area_torus;
  j["area_torus_bh"] = r.area_torus_bh;
  j["sys_torus"] = r.sys_torus;
  j["dias_upper"] = finite_or_null(r.dias_upper);
  j["dias_generators"] = r.dias_generators;
  j["ratio_sys"] = r.ratio_sys;
  j["ratio_dias"] = r.ratio_dias;
  j["bound_sys"] = r.bound_sys;
  j["bound_dias"] = r.bound_dias;
  j["torus_ratio"] = r.torus_ratio;
  j["torus_bound"] = r.torus_bound;
  j["ratio_sys_holds"] = r.ratio_sys_holds;
  j["ratio_dias_holds"] = r.ratio_dias_holds;
  j["chain_consistent"] = r.chain_consistent;
  j["torus_equilateral"] = r.torus_equilateral;
  j["equality"] = r.equality;
  j["descended"] = r.descended;
  j["deck_invariant"] = r.deck_invariant;
  j["deck_discrepancy"] = r.deck_discrepancy;
  j["equality_discrepancy"] = r.equality_discrepancy;
  j["verdict"] = r.verdict;
  j["notes"] = r.notes;
  j["config"] = {{"refinement_level", r.refinement_level}, {"tol", r.tol}, {"grid", r.grid}};
  if (timing) j["seconds"] = r.seconds;
  return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.mode = j.at("mode").get<std::string>();
  r.digest = j.at("digest").get<std::string>();
  r.has_properties = j.contains("properties");
  if (r.has_properties) r.properties = property_report_from_json(j.at("properties"));
  r.area_sphere = j.at("area_sphere").get<double>();
  r.area_torus = j.at("area_torus").get<double>();
  r.area_torus_bh = j.at("area_torus_bh").get<double>();
  r.sys_torus = j.at("sys_torus").get<double>();
  r.dias_upper = number_or_inf(j.at("dias_upper"));
  r.dias_generators = j.at("dias_generators").get<std::vector<double>>();
  r.ratio_sys = j.at("ratio_sys").get<double>();
  r.ratio_dias = j.at("ratio_dias").get<double>();
  r.bound_sys = j.at("bound_sys").get<double>();
  r.bound_dias = j.at("bound_dias").get<double>();
  r.torus_ratio = j.at("torus_ratio").get<double>();
  r.torus_bound = j.at("torus_bound").get<double>();
  r.ratio_sys_holds = j.at("ratio_sys_holds").get<bool>();
  r.ratio_dias_holds = j.at("ratio_dias_holds").get<bool>();
  r.chain_consistent = j.at("chain_consistent").get<bool>();
  r.torus_equilateral = j.at("torus_equilateral").get<bool>();
  r.equality = j.at("equality").get<bool>();
  r.descended = j.at("descended").get<bool>();
  r.deck_invariant = j.at("deck_invariant").get<bool>();
  r.deck_discrepancy = j.at("deck_discrepancy").get<double>();
  r.equality_discrepancy = j.at("equality_discrepancy").get<bool>();
  r.verdict = j.at("verdict").get<std::string>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  const auto& c = j.at("config");
  r.refinement_level = c.at("refinement_level").get<int>();
  r.tol = c.at("tol").get<double>();
  r.grid = c.at("grid").get<int>();
  if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
  return r;
}

ScanResult scan(const ConeSurface& base, int n, double magnitude, std::uint64_t seed, const VerifyOptions& options) {
  if (n < 1) throw InputError("scan: n must be at least 1");
  if (!(magnitude >= 0.) || !(magnitude < 0.2)) throw InputError("scan: magnitude must lie in [0, 0.2)");
  ScanResult res;
  res.rows.resize(n);
  unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; w++)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int k = static_cast<int>(w); k < n; k += static_cast<int>(workers)) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        ConeSurface surface = magnitude == 0. ? base : perturb(base, s, magnitude, true);
        res.rows[k] = {s, verify_riemannian(surface, options)};
      }
    }));
  for (auto& j : jobs) j.get();

  ScanSummary& sum = res.summary;
  sum.base_ratio = verify_riemannian(base, options).ratio_sys;
  sum.rows = n;
  sum.min_ratio = kInf;
  for (const auto& row : res.rows) {
    if (!row.report.properties.all()) {
      sum.excluded++;
      continue;
    }
    if (row.report.ratio_sys < sum.min_ratio) {
      sum.min_ratio = row.report.ratio_sys;
      sum.argmin_seed = row.seed;
    }
  }
  bool any = sum.excluded < n;
  sum.min_ratio_holds = any && sum.min_ratio >= kSphereBound - 1e-6;
  sum.base_attains_min = any && sum.min_ratio >= sum.base_ratio - 1e-6;
  sum.pass = sum.min_ratio_holds && sum.base_attains_min;
  return res;
}

std::string scan_csv(const ScanResult& res) {
  std::string out = "seed,area_sphere,sys_torus,dias_upper,ratio_sys,ratio_dias,p1,p2,p3_heuristic,properties_ok,verdict\n";
  char buf[512];
  for (const auto& row : res.rows) {
    const VerificationReport& r = row.report;
    const PropertyReport& p = r.properties;
    std::string flags = "na,na,na,na";
    if (r.has_properties)
      flags = std::to_string(p.p1[0]) + std::to_string(p.p1[1]) + std::to_string(p.p1[2]) + "," + std::to_string(p.p2) +
              "," + std::to_string(p.p3_heuristic) + "," + std::to_string(p.all());
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s\n", static_cast<unsigned long long>(row.seed),
                  r.area_sphere, r.sys_torus, r.dias_upper, r.ratio_sys, r.ratio_dias, flags.c_str(), r.verdict.c_str());
    out += buf;
  }
  const ScanSummary& s = res.summary;
  std::snprintf(buf, sizeof buf,
                "# base_ratio=%.17g min_ratio=%.17g argmin_seed=%llu rows=%d excluded=%d min_ratio_holds=%d "
                "base_attains_min=%d pass=%d\n",
                s.base_ratio, s.min_ratio, static_cast<unsigned long long>(s.argmin_seed), s.rows, s.excluded,
                s.min_ratio_holds, s.base_attains_min, s.pass);
  out += buf;
  return out;
}

nlohmann::json to_json(const ScanResult& res, bool timing) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : res.rows) rows.push_back({{"seed", row.seed}, {"report", to_json(row.report, timing)}});
  const ScanSummary& s = res.summary;
  return {{"rows", rows},
          {"summary",
           {{"base_ratio", s.base_ratio},
            {"min_ratio", finite_or_null(s.min_ratio)},
            {"argmin_seed", s.argmin_seed},
            {"rows", s.rows},
            {"excluded", s.excluded},
            {"min_ratio_holds", s.min_ratio_holds},
            {"base_attains_min", s.base_attains_min},
            {"pass", s.pass}}}};
}

} // namespace sysw
