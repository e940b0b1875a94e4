#pragma once

#include "sysw/birkhoff.hpp"
#include "sysw/flat_lattice.hpp"

#include <array>
#include <string>

namespace sysw {

inline constexpr double kSphereBound = 0.28867513459481288225; // 1 / (2 sqrt 3)
inline constexpr double kLoewnerBound = 0.86602540378443864676; // sqrt(3) / 2
inline constexpr double kFinslerTorusBound = 0.63661977236758134308; // 2 / pi
inline constexpr double kFinslerSphereBound = 0.21220659078919378103; // 2 / (3 pi)

struct PropertyOptions {
  ClosedGeodesicSearchConfig search;
  int patch_depth = 3;
};

// The three hypotheses on a sphere near the Calabi-Croke sphere. P3 is heuristic: no closed
// geodesic shorter than 3 * dias_upper is found on a planar development of the torus.
struct PropertyReport {
  double delta = 0.;                       // minimal distance between marked vertices
  std::array<double, 3> pointed_systole{}; // infinite when the search budget 2 delta was exhausted
  std::array<bool, 3> p1{};
  std::array<double, 3> marked_angles{};
  bool p2 = false;
  bool p3_heuristic = false;
  double p3_bound = 0.;
  int p3_loops_found = 0;
  int p3_grid = 0;
  double p3_return_tolerance = 0.;
  int p3_patch_depth = 0;

  bool all() const { return p1[0] && p1[1] && p1[2] && p2 && p3_heuristic; }
};
PropertyReport property_report(const CoverMap& cover, double dias_upper, const PropertyOptions& options = {});
PropertyReport property_report(const CoverMap& cover, const PropertyOptions& options = {});

struct VerifyOptions {
  PropertyOptions properties;
  SweepOptions sweep;
};

struct VerificationReport {
  std::string mode; // "riemannian" or "finsler"
  std::string digest;
  bool has_properties = false;
  PropertyReport properties;

  double area_sphere = 0.;
  double area_torus = 0.;    // Holmes-Thompson (Euclidean area for Riemannian charts)
  double area_torus_bh = 0.; // Busemann-Hausdorff
  double sys_torus = 0.;
  double dias_upper = 0.;
  std::vector<double> dias_generators; // loop lengths of the sweepouts behind dias_upper

  double ratio_sys = 0.;  // area_sphere / sys^2, or area_torus / sys^2 for a bare Finsler torus
  double ratio_dias = 0.; // area_sphere / dias_upper^2
  double bound_sys = 0.;
  double bound_dias = 0.;
  double torus_ratio = 0.; // area_torus / sys^2
  double torus_bound = 0.;

  bool ratio_sys_holds = false;
  bool ratio_dias_holds = false;
  bool chain_consistent = false;
  bool torus_equilateral = false;
  bool equality = false;

  bool descended = false; // finsler: sphere quantities from area(T^2) / 3
  bool deck_invariant = false;
  double deck_discrepancy = 0.;
  bool equality_discrepancy = false;

  std::string verdict; // "pass", "fail" or "hypotheses_not_met"
  std::vector<std::string> notes;

  // echo
  int refinement_level = 0;
  double tol = 0.;
  int grid = 0;
  double seconds = 0.;
};

// Riemannian verification of a sphere with three marked vertices and Euclidean charts.
VerificationReport verify_riemannian(const ConeSurface& sphere, const VerifyOptions& options = {});

// Finsler flat torus: Holmes-Thompson area against 2/pi sys^2. With `descend`, the torus is read as
// the triple cover of a sphere: area(S^2) = area(T^2)/3 and sys(T^2) stands in for the diastole
// upper bound, against 2/(3 pi). The norm is also checked for invariance under rotation by 2 pi/3.
VerificationReport verify_finsler(const FlatTorus& torus, bool descend);

nlohmann::json to_json(const PropertyReport& report);
PropertyReport property_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VerificationReport& report, bool timing = false);
VerificationReport report_from_json(const nlohmann::json& j);

struct ScanRow {
  std::uint64_t seed = 0;
  VerificationReport report;
};
struct ScanSummary {
  double base_ratio = 0.;
  double min_ratio = 0.;
  std::uint64_t argmin_seed = 0;
  int rows = 0;
  int excluded = 0; // rows whose properties failed
  bool min_ratio_holds = false;
  bool base_attains_min = false;
  bool pass = false;
};
struct ScanResult {
  std::vector<ScanRow> rows;
  ScanSummary summary;
};
// Rows for the perturbation seeds seed, seed + 1, ..., each perturbed by `magnitude` with marked
// angles preserved, computed in parallel and kept in seed order.
ScanResult scan(const ConeSurface& base, int n, double magnitude, std::uint64_t seed, const VerifyOptions& options = {});

std::string scan_csv(const ScanResult& result);
nlohmann::json to_json(const ScanResult& result, bool timing = false);

} // namespace sysw
