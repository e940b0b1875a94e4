#pragma once

#include <cmath>
#include <ostream>

namespace sysw {

struct Vec2 {
  double x = 0.;
  double y = 0.;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  Vec2 normalized() const { return *this / norm(); }
  // Rotation by +90 degrees.
  constexpr Vec2 perp() const { return {-y, x}; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Complex multiplication; `rot` is expected to be a unit vector (cos, sin).
constexpr Vec2 rotate(Vec2 v, Vec2 rot) { return {rot.x * v.x - rot.y * v.y, rot.y * v.x + rot.x * v.y}; }
inline Vec2 unit_at_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline std::ostream& operator<<(std::ostream& os, Vec2 v) { return os << "(" << v.x << ", " << v.y << ")"; }

// Orientation-preserving isometry of the plane: p -> rot * p + trans.
struct Rigid {
  Vec2 rot{1., 0.};
  Vec2 trans{0., 0.};

  constexpr Vec2 apply(Vec2 p) const { return rotate(p, rot) + trans; }
  constexpr Vec2 apply_dir(Vec2 d) const { return rotate(d, rot); }
  constexpr Rigid inverse() const {
    Vec2 inv{rot.x, -rot.y};
    return {inv, -rotate(trans, inv)};
  }
  // (this * other)(p) = this(other(p))
  constexpr Rigid operator*(const Rigid& other) const { return {rotate(other.rot, rot), apply(other.trans)}; }

  // The isometry sending a0 -> b0 and the direction of (a1 - a0) onto the direction of (b1 - b0).
  static Rigid from_segments(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    Vec2 da = (a1 - a0).normalized();
    Vec2 db = (b1 - b0).normalized();
    Vec2 r{dot(da, db), cross(da, db)};
    r = r.normalized();
    return {r, b0 - rotate(a0, r)};
  }
};

} // namespace sysw
