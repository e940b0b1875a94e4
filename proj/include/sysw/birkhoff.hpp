#pragma once

#include "sysw/cover.hpp"
#include "sysw/geodesic.hpp"

#include <array>

namespace sysw {

// A closed curve given by cyclic marks joined by geodesic arcs. When deck_power is nonzero the
// loop is a lift of a sphere loop with marks[k + n/3] = rho^deck_power(marks[k]); shortening then
// computes the first third and copies the rest by the deck map.
struct MarkedLoop {
  const ConeSurface* surface = nullptr;
  std::vector<SurfacePoint> marks;
  std::vector<GeodesicPath> arcs; // arcs[k] runs from marks[k] to marks[k + 1 mod n]
  double length = 0.;
  const CoverMap* cover = nullptr;
  int deck_power = 0;

  int size() const { return static_cast<int>(marks.size()); }
  int period() const { return deck_power ? size() / 3 : size(); }
  GeodesicPath path() const;
  // The first period as a path: a full closed loop of the projection when deck_power != 0.
  GeodesicPath period_path() const;
};

// Arcs of a loop through `path` should not exceed this (1/8 of the shortest edge the path meets).
double initial_mark_spacing(const ConeSurface& s, const GeodesicPath& path);

// Marks at equal arc length along a closed path, the first at its start.
MarkedLoop marked_loop(const ConeSurface& s, const GeodesicPath& closed_path, int marks);
MarkedLoop marked_loop(const ConeSurface& s, const GeodesicPath& closed_path);

// Equivariant lift on the torus: `first_third` runs from P to rho^power(P), the loop is
// first_third followed by its rho^power and rho^(2 power) images.
MarkedLoop equivariant_loop(const CoverMap& cover, const GeodesicPath& first_third, int power, int marks_per_third);
MarkedLoop equivariant_loop(const CoverMap& cover, const GeodesicPath& first_third, int power);

// Largest deviation from straightness at the marks, in radians: pi minus the smaller angle the
// loop makes there (on either side for a mark at a cone point).
double mark_defect(const MarkedLoop& loop);

struct ShortenOptions {
  // Upper bound on composite arcs; the default is a fifth of the torus systole on tori and
  // unbounded elsewhere. Marks are thinned while arcs stay below it.
  double max_arc = -1.;
  int min_marks = 6;
};

// One Birkhoff round: arcs between consecutive arc midpoints are replaced by shortest geodesics,
// then again with the new marks. The length never increases.
MarkedLoop shorten_step(const MarkedLoop& loop, GeodesicEngine& engine);
MarkedLoop shorten_step(const MarkedLoop& loop);

struct ShortenResult {
  enum class Status { Point, Geodesic, MaxIter } status = Status::MaxIter;
  MarkedLoop loop;                // final loop
  SurfacePoint point;             // limit point when status is Point
  std::vector<MarkedLoop> family; // input, then the loop after each round
  std::vector<double> lengths;    // length of each family member
  double residual = 0.;           // relative length change of the last round
  double max_arc = 0.;            // longest arc met, bounds the displacement between frames
};
// Iterates shorten_step until the loop is shorter than 2 tol (Point), the relative length change
// drops below tol (Geodesic) or max_iter rounds have run.
ShortenResult shorten(const MarkedLoop& loop, double tol, int max_iter, const ShortenOptions& options = {});

// Birkhoff shortening of a lifted loop with rho-symmetric marks. The deck power is read off the
// marks (0 when the loop already closes on one sheet); every frame keeps its rho and rho^2
// images. Throws InputError if the loop is not a lift of a simple sphere loop and
// ShorteningFailure if a projected frame stops being simple.
struct EquivariantTrace {
  int deck_power = 0;
  ShortenResult result;
  std::vector<std::array<MarkedLoop, 2>> companions; // rho and rho^2 images of each frame
};
EquivariantTrace equivariant_shorten(const CoverMap& cover, const MarkedLoop& lifted_loop, double tol, int max_iter,
                                     const ShortenOptions& options = {});

// Sphere loop represented by a lifted frame.
GeodesicPath projected_frame(const CoverMap& cover, const MarkedLoop& lifted);

// A finite family of one-cycles, each a multiset of sphere loops.
struct Cycle {
  std::vector<GeodesicPath> loops;
  double mass = 0.;
};
struct SweepOut {
  std::vector<Cycle> frames; // starts and ends with the null cycle
  double minimax = 0.;
  double step = 0.; // bound on the displacement between consecutive frames
};

struct SweepOptions {
  double tol = 1e-6;
  int max_iter = 20000;
};

// Two-domain sweepout of a simple loop based at a marked vertex, given by its lift at the
// ramification point. Both lifted domain boundaries are shrunk equivariantly and the projected
// families are joined at the loop.
SweepOut two_domain_sweepout(const CoverMap& cover, const GeodesicPath& torus_lift, const SweepOptions& options = {});

// Three-domain sweepout of a figure-eight: the outer boundary grows from a point, then the two
// lobes shrink one after the other.
SweepOut three_domain_sweepout(const CoverMap& cover, const FigureEight& figure_eight, const SweepOptions& options = {});

struct DiasCandidate {
  std::string source; // "two_domain:<i>" or "three_domain"
  double loop_length = 0.;
  double minimax = 0.;
};
struct DiasBound {
  double value = 0.;
  SweepOut witness;
  std::vector<DiasCandidate> candidates;
};
// Best minimax over the two-domain sweepouts of the three pointed systolic loops and the
// three-domain sweepout of a figure-eight systolic projection. Throws SearchExhausted when no
// sweepout can be built.
DiasBound dias_upper_bound(const CoverMap& cover, const SweepOptions& options = {});

nlohmann::json to_json(const SweepOut& sweepout);
nlohmann::json to_json(const MarkedLoop& loop);

} // namespace sysw
