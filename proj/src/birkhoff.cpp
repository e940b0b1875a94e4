#include "sysw/birkhoff.hpp"

#include "sysw/errors.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <limits>

namespace sysw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GeodesicPath point_path(const SurfacePoint& p) {
  GeodesicPath g;
  g.segments.push_back({p.tri, p.pos, p.pos, -1, -1, -1});
  g.terminal = Terminal::Endpoint;
  return g;
}

GeodesicPath piece(const ConeSurface& s, const GeodesicPath& path, double t0, double t1) {
  if (t1 - t0 <= 0.) return point_path(point_at(s, path, t0));
  return subpath(s, path, t0, t1);
}

GeodesicPath join(const ConeSurface& s, const GeodesicPath& a, const GeodesicPath& b) {
  GeodesicPath out = normalized(s, concatenate(a, b));
  out.total_length = path_length(s, out);
  out.terminal = Terminal::Endpoint;
  return out;
}

GeodesicPath deck_path(const CoverMap& cover, const GeodesicPath& path, int power) {
  if (power % 3 == 0) return path;
  GeodesicPath out = map_triangles(path, [&](int t) { return cover.deck(t, power); });
  if (out.terminal_vertex >= 0) out.terminal_vertex = cover.deck_vertex(out.terminal_vertex, power);
  return out;
}

bool close_points(const ConeSurface& s, const SurfacePoint& p, const SurfacePoint& q, double tol) {
  if (p.tri == q.tri) return distance(p.pos, q.pos) <= tol;
  auto vp = s.vertex_at(p, tol), vq = s.vertex_at(q, tol);
  if (vp || vq) return vp && vq && *vp == *vq;
  for (int k = 0; k < 3; k++) {
    EdgeRef n = s.neighbor({p.tri, k});
    if (n.valid() && n.tri == q.tri && distance(s.gluing_map({p.tri, k}).apply(p.pos), q.pos) <= tol) return true;
  }
  return false;
}

double loop_length(const MarkedLoop& loop) {
  double total = 0.;
  for (const auto& a : loop.arcs) total += a.total_length;
  return total;
}

// Copies the first period to the other thirds.
void fill_images(MarkedLoop& loop) {
  if (!loop.deck_power) return;
  int m = static_cast<int>(loop.marks.size()) / 3;
  for (int j = 1; j < 3; j++)
    for (int k = 0; k < m; k++) {
      loop.marks[j * m + k] = loop.cover->deck(loop.marks[k], j * loop.deck_power);
      loop.arcs[j * m + k] = deck_path(*loop.cover, loop.arcs[k], j * loop.deck_power);
    }
}

MarkedLoop resized_like(const MarkedLoop& in, int n) {
  MarkedLoop out;
  out.surface = in.surface;
  out.cover = in.cover;
  out.deck_power = in.deck_power;
  out.marks.resize(n);
  out.arcs.resize(n);
  return out;
}

GeodesicPath best_arc(GeodesicEngine& engine, const SurfacePoint& p, const SurfacePoint& q, const GeodesicPath& composite) {
  const ConeSurface& s = engine.surface();
  double len = composite.total_length;
  if (len <= 1e-15) return composite;
  auto sp = engine.shortest_path(p, q, len * (1. + 1e-9) + 1e-15);
  if (sp && !sp->empty()) {
    GeodesicPath cand = normalized(s, *sp);
    cand.total_length = path_length(s, cand);
    cand.terminal = Terminal::Endpoint;
    if (cand.total_length <= len) return cand;
  }
  return composite;
}

// Marks move to arc midpoints; arcs between them are re-solved.
MarkedLoop half_step(const MarkedLoop& in, GeodesicEngine& engine) {
  const ConeSurface& s = *in.surface;
  const int n = in.size(), period = in.period();
  MarkedLoop out = resized_like(in, n);
  std::vector<SurfacePoint> mids(period + 1);
  for (int k = 0; k <= period; k++) {
    const GeodesicPath& a = in.arcs[k % n];
    mids[k] = point_at(s, a, 0.5 * a.total_length);
  }
  if (!in.deck_power) mids[period] = mids[0];
  for (int k = 0; k < period; k++) {
    const GeodesicPath& a = in.arcs[k];
    const GeodesicPath& b = in.arcs[(k + 1) % n];
    GeodesicPath composite = join(s, piece(s, a, 0.5 * a.total_length, a.total_length), piece(s, b, 0., 0.5 * b.total_length));
    out.marks[k] = mids[k];
    out.arcs[k] = best_arc(engine, mids[k], mids[k + 1], composite);
  }
  fill_images(out);
  out.length = loop_length(out);
  return out;
}

// Keeps `per_period` of the current marks per period, joined by shortest arcs.
MarkedLoop thinned(const MarkedLoop& in, int per_period, GeodesicEngine& engine) {
  const ConeSurface& s = *in.surface;
  const int period = in.period();
  const int n = in.deck_power ? 3 * per_period : per_period;
  MarkedLoop out = resized_like(in, n);
  std::vector<int> keep(per_period + 1);
  for (int j = 0; j <= per_period; j++) keep[j] = static_cast<int>(static_cast<long>(j) * period / per_period);
  for (int j = 0; j < per_period; j++) {
    GeodesicPath composite = in.arcs[keep[j]];
    for (int k = keep[j] + 1; k < keep[j + 1]; k++) composite = join(s, composite, in.arcs[k]);
    SurfacePoint next = keep[j + 1] < in.size() ? in.marks[keep[j + 1]] : in.marks[0];
    out.marks[j] = in.marks[keep[j]];
    out.arcs[j] = best_arc(engine, out.marks[j], next, composite);
  }
  fill_images(out);
  out.length = loop_length(out);
  return out;
}

double default_max_arc(const ConeSurface& s) {
  if (s.topology() == Topology::Torus) return torus_systole(s).length / 5.;
  return kInf;
}

double max_arc_of(const MarkedLoop& loop) {
  double m = 0.;
  for (const auto& a : loop.arcs) m = std::max(m, a.total_length);
  return m;
}

} // namespace

GeodesicPath MarkedLoop::path() const {
  GeodesicPath out;
  for (const auto& a : arcs) out = out.empty() ? a : concatenate(out, a);
  out = normalized(*surface, out);
  out.total_length = path_length(*surface, out);
  out.terminal = Terminal::Endpoint;
  return out;
}

GeodesicPath MarkedLoop::period_path() const {
  GeodesicPath out;
  for (int k = 0; k < period(); k++) out = out.empty() ? arcs[k] : concatenate(out, arcs[k]);
  out = normalized(*surface, out);
  out.total_length = path_length(*surface, out);
  out.terminal = Terminal::Endpoint;
  return out;
}

double initial_mark_spacing(const ConeSurface& s, const GeodesicPath& path) {
  double shortest = kInf;
  for (const auto& seg : path.segments) shortest = std::min({shortest, s.length(seg.tri, 0), s.length(seg.tri, 1), s.length(seg.tri, 2)});
  return shortest / 8.;
}

namespace {

const PathSegment* first_nondegenerate(const GeodesicPath& p) {
  for (const auto& seg : p.segments)
    if (distance(seg.entry, seg.exit) > 0.) return &seg;
  return nullptr;
}

const PathSegment* last_nondegenerate(const GeodesicPath& p) {
  for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it)
    if (distance(it->entry, it->exit) > 0.) return &*it;
  return nullptr;
}

int corner_at(const ConeSurface& s, int tri, Vec2 pos) {
  const auto& P = s.chart(tri);
  double scale = std::max({s.length(tri, 0), s.length(tri, 1), s.length(tri, 2)});
  for (int c = 0; c < 3; c++)
    if (distance(P[c], pos) <= 1e-9 * scale) return c;
  return -1;
}

double fan_angle(const ConeSurface& s, CornerRef c, Vec2 dir) {
  const auto& P = s.chart(c.tri);
  Vec2 e = P[(c.corner + 1) % 3] - P[c.corner];
  double a = std::clamp(std::atan2(cross(e, dir), dot(e, dir)), 0., s.corner_angle(c.tri, c.corner));
  return s.corner_angle_offset(c) + a;
}

} // namespace

double mark_defect(const MarkedLoop& loop) {
  const ConeSurface& s = *loop.surface;
  const int n = loop.size();
  double worst = 0.;
  for (int k = 0; k < n; k++) {
    const PathSegment* in = last_nondegenerate(loop.arcs[(k + n - 1) % n]);
    const PathSegment* out = first_nondegenerate(loop.arcs[k]);
    if (!in || !out) continue;
    Vec2 back = in->entry - in->exit, fwd = out->exit - out->entry;
    int ci = corner_at(s, in->tri, in->exit), co = corner_at(s, out->tri, out->entry);
    if (ci >= 0 && co >= 0) {
      CornerRef a{in->tri, ci}, b{out->tri, co};
      double theta = s.cone_angle(s.vertex(a));
      double gap = std::fmod(fan_angle(s, b, fwd) - fan_angle(s, a, back) + 2. * theta, theta);
      worst = std::max(worst, std::numbers::pi - std::min(gap, theta - gap));
      continue;
    }
    if (in->tri != out->tri) {
      for (int e = 0; e < 3; e++)
        if (s.neighbor({in->tri, e}).tri == out->tri) {
          back = s.gluing_map({in->tri, e}).apply_dir(back);
          break;
        }
    }
    double ang = std::atan2(std::abs(cross(back, fwd)), dot(back, fwd));
    worst = std::max(worst, std::numbers::pi - ang);
  }
  return worst;
}

namespace {

void place_marks(MarkedLoop& loop, const ConeSurface& s, const GeodesicPath& path, int marks) {
  double L = path_length(s, path);
  for (int k = 0; k < marks; k++) {
    double t0 = L * k / marks, t1 = L * (k + 1) / marks;
    loop.marks[k] = k == 0 ? path.start() : point_at(s, path, t0);
    loop.arcs[k] = piece(s, path, t0, t1);
    loop.arcs[k].terminal = Terminal::Endpoint;
  }
}

int marks_for(double length, double spacing, int minimum) {
  if (!(spacing > 0.) || !std::isfinite(length)) return minimum;
  return std::max(minimum, static_cast<int>(std::ceil(length / spacing - 1e-9)));
}

} // namespace

MarkedLoop marked_loop(const ConeSurface& s, const GeodesicPath& closed_path, int marks) {
  if (marks < 3) throw InputError("marked_loop: at least three marks are needed");
  if (closed_path.empty()) throw InputError("marked_loop: empty path");
  MarkedLoop loop;
  loop.surface = &s;
  loop.marks.resize(marks);
  loop.arcs.resize(marks);
  place_marks(loop, s, closed_path, marks);
  loop.length = loop_length(loop);
  return loop;
}

MarkedLoop marked_loop(const ConeSurface& s, const GeodesicPath& closed_path) {
  return marked_loop(s, closed_path, marks_for(path_length(s, closed_path), initial_mark_spacing(s, closed_path), 6));
}

MarkedLoop equivariant_loop(const CoverMap& cover, const GeodesicPath& first_third, int power, int marks_per_third) {
  power = ((power % 3) + 3) % 3;
  if (power == 0) throw InputError("equivariant_loop: deck power must be 1 or 2");
  if (marks_per_third < 1) throw InputError("equivariant_loop: at least one mark per third");
  const ConeSurface& T = cover.torus();
  if (!close_points(T, cover.deck(first_third.start(), power), first_third.end(), 1e-9))
    throw InputError("equivariant_loop: path does not end at the deck image of its start");
  MarkedLoop loop;
  loop.surface = &T;
  loop.cover = &cover;
  loop.deck_power = power;
  loop.marks.resize(3 * marks_per_third);
  loop.arcs.resize(3 * marks_per_third);
  place_marks(loop, T, first_third, marks_per_third);
  fill_images(loop);
  loop.length = loop_length(loop);
  return loop;
}

MarkedLoop equivariant_loop(const CoverMap& cover, const GeodesicPath& first_third, int power) {
  const ConeSurface& T = cover.torus();
  return equivariant_loop(cover, first_third, power,
                          marks_for(path_length(T, first_third), initial_mark_spacing(T, first_third), 2));
}

MarkedLoop shorten_step(const MarkedLoop& loop, GeodesicEngine& engine) {
  if (loop.size() < 3) throw InputError("shorten_step: at least three marks are needed");
  return half_step(half_step(loop, engine), engine);
}

MarkedLoop shorten_step(const MarkedLoop& loop) {
  if (!loop.surface || loop.size() < 3) throw InputError("shorten_step: at least three marks are needed");
  GeodesicEngine engine(*loop.surface);
  return shorten_step(loop, engine);
}

ShortenResult shorten(const MarkedLoop& loop, double tol, int max_iter, const ShortenOptions& options) {
  if (!(tol > 0.)) throw InputError("shorten: tol must be positive");
  if (loop.size() < 3) throw InputError("shorten: at least three marks are needed");
  const ConeSurface& s = *loop.surface;
  GeodesicEngine engine(s);
  const double max_arc = options.max_arc > 0. ? options.max_arc : default_max_arc(s);
  const int min_per_period = loop.deck_power ? std::max(1, (options.min_marks + 2) / 3) : std::max(3, options.min_marks);

  ShortenResult res;
  MarkedLoop cur = loop;
  cur.length = loop_length(cur);
  res.family.push_back(cur);
  res.lengths.push_back(cur.length);
  res.max_arc = max_arc_of(cur);
  for (int it = 0; it < max_iter; it++) {
    if (cur.length < 2. * tol) {
      res.status = ShortenResult::Status::Point;
      break;
    }
    MarkedLoop next;
    try {
      next = shorten_step(cur, engine);
    } catch (const SearchExhausted&) {
      // finer marks keep every arc search local
      MarkedLoop finer = resized_like(cur, 2 * cur.size());
      const int p = cur.period();
      for (int k = 0; k < p; k++) {
        const GeodesicPath& a = cur.arcs[k];
        double h = 0.5 * a.total_length;
        finer.marks[2 * k] = cur.marks[k];
        finer.marks[2 * k + 1] = point_at(s, a, h);
        finer.arcs[2 * k] = piece(s, a, 0., h);
        finer.arcs[2 * k + 1] = piece(s, a, h, a.total_length);
      }
      fill_images(finer);
      finer.length = loop_length(finer);
      next = shorten_step(finer, engine);
    }
    // drop marks while the composite arcs stay short
    const int per = next.period();
    if (per / 2 >= min_per_period && 4. * next.length / next.size() <= max_arc) next = thinned(next, per / 2, engine);
    double change = (cur.length - next.length) / std::max(cur.length, std::numeric_limits<double>::min());
    res.max_arc = std::max(res.max_arc, 2. * max_arc_of(cur));
    cur = std::move(next);
    res.family.push_back(cur);
    res.lengths.push_back(cur.length);
    res.residual = change;
    if (cur.length < 2. * tol) {
      res.status = ShortenResult::Status::Point;
      break;
    }
    if (change < tol) {
      res.status = ShortenResult::Status::Geodesic;
      break;
    }
  }
  res.loop = cur;
  res.point = cur.marks.front();
  return res;
}

GeodesicPath projected_frame(const CoverMap& cover, const MarkedLoop& lifted) {
  GeodesicPath p = project(cover, lifted.period_path());
  p.total_length = path_length(cover.sphere(), p);
  return p;
}

namespace {

int detect_power(const CoverMap& cover, const MarkedLoop& loop) {
  const ConeSurface& T = cover.torus();
  const int n = loop.size();
  if (n % 3 == 0) {
    for (int p = 1; p <= 2; p++) {
      bool ok = true;
      for (int k = 0; k < n / 3 && ok; k++)
        for (int j = 1; j < 3 && ok; j++)
          ok = close_points(T, cover.deck(loop.marks[k], j * p), loop.marks[j * n / 3 + k], 1e-9) &&
               std::abs(loop.arcs[k].total_length - loop.arcs[j * n / 3 + k].total_length) <= 1e-9 * std::max(1., loop.length);
      if (ok) return p;
    }
  }
  return 0;
}

bool frame_is_simple(const CoverMap& cover, const MarkedLoop& frame) {
  if (frame.length <= 0.) return true;
  return self_intersections(cover.sphere(), projected_frame(cover, frame)).empty();
}

} // namespace

EquivariantTrace equivariant_shorten(const CoverMap& cover, const MarkedLoop& lifted_loop, double tol, int max_iter,
                                     const ShortenOptions& options) {
  if (lifted_loop.surface != &cover.torus()) throw InputError("equivariant_shorten: loop does not live on the cover");
  MarkedLoop start = lifted_loop;
  start.cover = &cover;
  start.deck_power = detect_power(cover, lifted_loop);
  start.length = loop_length(start);
  if (!frame_is_simple(cover, start))
    throw InputError("equivariant_shorten: loop is not a lift of a simple sphere loop");
  EquivariantTrace out;
  out.deck_power = start.deck_power;
  out.result = shorten(start, tol, max_iter, options);
  for (size_t f = 0; f < out.result.family.size(); f++) {
    const MarkedLoop& frame = out.result.family[f];
    if (!frame_is_simple(cover, frame))
      throw ShorteningFailure("equivariant_shorten: projection of frame " + std::to_string(f) + " is not simple");
    std::array<MarkedLoop, 2> comp;
    for (int j = 0; j < 2; j++) {
      comp[j] = frame;
      for (int k = 0; k < frame.size(); k++) {
        comp[j].marks[k] = cover.deck(frame.marks[k], j + 1);
        comp[j].arcs[k] = deck_path(cover, frame.arcs[k], j + 1);
      }
    }
    out.companions.push_back(std::move(comp));
  }
  return out;
}

namespace {

std::vector<GeodesicPath> shrink_family(const CoverMap& cover, const GeodesicPath& first_third, int power,
                                        const SweepOptions& options, double& step) {
  MarkedLoop lifted = equivariant_loop(cover, first_third, power);
  EquivariantTrace tr = equivariant_shorten(cover, lifted, options.tol, options.max_iter);
  if (tr.result.status != ShortenResult::Status::Point)
    throw ShorteningFailure("shortening stalled at a closed curve of length " + std::to_string(tr.result.loop.length / 3.) +
                            " instead of a point");
  step = std::max(step, tr.result.max_arc);
  std::vector<GeodesicPath> frames;
  for (const auto& f : tr.result.family) frames.push_back(projected_frame(cover, f));
  return frames;
}

Cycle make_cycle(const ConeSurface& sphere, std::vector<GeodesicPath> loops) {
  Cycle c;
  for (auto& l : loops) {
    l.total_length = path_length(sphere, l);
    c.mass += l.total_length;
  }
  c.loops = std::move(loops);
  return c;
}

void finish(SweepOut& out) {
  out.frames.insert(out.frames.begin(), Cycle{});
  out.frames.push_back(Cycle{});
  out.minimax = 0.;
  for (const auto& f : out.frames) out.minimax = std::max(out.minimax, f.mass);
}

bool is_closed_loop(const ConeSurface& s, const GeodesicPath& p) {
  return !p.empty() && close_points(s, p.start(), p.end(), 1e-9 * std::max(1., p.total_length));
}

} // namespace

SweepOut two_domain_sweepout(const CoverMap& cover, const GeodesicPath& torus_lift, const SweepOptions& options) {
  const ConeSurface& T = cover.torus();
  const ConeSurface& S = cover.sphere();
  if (!is_closed_loop(T, torus_lift)) throw InputError("two_domain_sweepout: lift is not closed");
  auto base = T.vertex_at(torus_lift.start());
  const auto& ram = cover.ramification_points();
  int i = -1;
  for (int k = 0; k < 3; k++)
    if (base && *base == ram[k]) i = k;
  if (i < 0) throw InputError("two_domain_sweepout: lift does not start at a ramification point");
  if (S.cone_angle(S.marked_vertices()[i]) >= std::numbers::pi)
    throw InputError("two_domain_sweepout: basepoint cone angle is not below pi");
  GeodesicPath gamma = project(cover, torus_lift);
  if (!self_intersections(S, gamma).empty()) throw InputError("two_domain_sweepout: loop is not simple");
  ComplementRegions regions = complement_regions(S, gamma);
  if (regions.count != 2 || regions.marked[0].size() != 1 || regions.marked[1].size() != 1)
    throw InputError("two_domain_sweepout: loop does not separate the other two marked vertices");

  double step_a = 0., step_b = 0.;
  auto fa = std::async(std::launch::async, [&] { return shrink_family(cover, torus_lift, 1, options, step_a); });
  auto fb = std::async(std::launch::async, [&] { return shrink_family(cover, torus_lift, 2, options, step_b); });
  std::vector<GeodesicPath> minus = fa.get(), plus = fb.get();

  SweepOut out;
  for (auto it = minus.rbegin(); it != minus.rend(); ++it) out.frames.push_back(make_cycle(S, {*it}));
  for (size_t k = 1; k < plus.size(); k++) out.frames.push_back(make_cycle(S, {plus[k]}));
  out.step = std::max(step_a, step_b);
  finish(out);
  return out;
}

SweepOut three_domain_sweepout(const CoverMap& cover, const FigureEight& fig, const SweepOptions& options) {
  const ConeSurface& T = cover.torus();
  const ConeSurface& S = cover.sphere();
  const int e = fig.deck_power;
  if (e != 1 && e != 2) throw InputError("three_domain_sweepout: deck power must be 1 or 2");
  if (!is_closed_loop(T, fig.torus_loop)) throw InputError("three_domain_sweepout: torus loop is not closed");
  double L = path_length(T, fig.torus_loop), t1 = fig.crossing.t1;
  if (!(t1 > 0. && t1 < L)) throw InputError("three_domain_sweepout: crossing parameter out of range");
  GeodesicPath a = subpath(T, fig.torus_loop, 0., t1);
  GeodesicPath b_rev = reversed(T, subpath(T, fig.torus_loop, t1, L));
  b_rev.total_length = path_length(T, b_rev);
  // outer boundary a b^-1: a from Q1 to Q2 = rho^e Q1, then the lift of b^-1 starting at Q2
  GeodesicPath outer = join(T, a, deck_path(cover, b_rev, e));

  double s1 = 0., s2 = 0., s3 = 0.;
  auto f1 = std::async(std::launch::async, [&] { return shrink_family(cover, a, e, options, s1); });
  auto f2 = std::async(std::launch::async, [&] { return shrink_family(cover, b_rev, e, options, s2); });
  auto f3 = std::async(std::launch::async, [&] { return shrink_family(cover, outer, 2 * e, options, s3); });
  std::vector<GeodesicPath> lobe_a = f1.get(), lobe_b = f2.get(), outside = f3.get();

  GeodesicPath b_sphere = lobe_b.front();
  SweepOut out;
  for (auto it = outside.rbegin(); it != outside.rend(); ++it) out.frames.push_back(make_cycle(S, {*it}));
  for (const auto& l : lobe_a) out.frames.push_back(make_cycle(S, {l, b_sphere}));
  for (const auto& l : lobe_b) out.frames.push_back(make_cycle(S, {l}));
  out.step = std::max({s1, s2, s3});
  finish(out);
  return out;
}

DiasBound dias_upper_bound(const CoverMap& cover, const SweepOptions& options) {
  const ConeSurface& T = cover.torus();
  DiasBound best;
  best.value = kInf;
  auto consider = [&](const std::string& source, double loop_length, SweepOut sw) {
    best.candidates.push_back({source, loop_length, sw.minimax});
    if (sw.minimax < best.value) {
      best.value = sw.minimax;
      best.witness = std::move(sw);
    }
  };
  double budget = 2. * min_vertex_distance(cover.sphere());
  for (int i = 0; i < 3; i++) {
    try {
      PointedSystole ps = pointed_systole_punctured(cover, i, budget);
      consider("two_domain:" + std::to_string(i), ps.length, two_domain_sweepout(cover, ps.torus_loop, options));
    } catch (const SearchExhausted&) {
    } catch (const InputError&) {
    }
  }
  std::optional<FigureEight> fig;
  Classification c = classify_systolic_projection(cover, torus_systole(T).loop);
  if (c.kind == Classification::Kind::FigureEight) fig = c.figure_eight;
  if (!fig && developed_lattice(T)) {
    Classification d = classify_systolic_projection(cover, off_vertex_systolic_loop(T));
    if (d.kind == Classification::Kind::FigureEight) fig = d.figure_eight;
  }
  if (fig) consider("three_domain", fig->torus_loop.total_length, three_domain_sweepout(cover, *fig, options));
  if (best.candidates.empty()) throw SearchExhausted("dias_upper_bound: no sweepout could be constructed");
  return best;
}

nlohmann::json to_json(const MarkedLoop& loop) {
  nlohmann::json marks = nlohmann::json::array();
  for (const auto& m : loop.marks) marks.push_back({{"tri", m.tri}, {"pos", {m.pos.x, m.pos.y}}});
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : loop.arcs) arcs.push_back(to_json(a));
  return {{"marks", marks}, {"arcs", arcs}, {"length", loop.length}, {"deck_power", loop.deck_power}};
}

nlohmann::json to_json(const SweepOut& sw) {
  nlohmann::json frames = nlohmann::json::array();
  for (const auto& f : sw.frames) {
    nlohmann::json loops = nlohmann::json::array();
    for (const auto& l : f.loops) loops.push_back(to_json(l));
    frames.push_back({{"mass", f.mass}, {"loops", loops}});
  }
  return {{"minimax", sw.minimax}, {"step", sw.step}, {"frames", frames}};
}

} // namespace sysw
