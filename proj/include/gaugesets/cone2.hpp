#pragma once
#include <vector>

#include "gaugesets/linalg.hpp"

namespace gaugesets {

/// Closed convex cone in the plane, kept in angular canonical form.
///
/// A convex cone in R^2 is one of: the origin, a ray, a line, a pointed
/// sector (arc of directions shorter than pi), a half-plane (arc of exactly
/// pi) or the whole plane. Boundary vectors are carried through polar and
/// intersection operations verbatim (only exact 90-degree rotations are ever
/// applied), so cone pipelines stay numerically exact.
class Cone2 {
 public:
  enum class Kind { Origin, Ray, Line, Sector, HalfPlane, Plane };

  static Cone2 origin();
  static Cone2 plane();
  static Cone2 from_generators(const std::vector<Vec2>& gens);
  /// Conic hull of the counterclockwise arc from start to end (a ray when
  /// the angles coincide, the plane once the arc exceeds pi).
  static Cone2 arc(Vec2 start, Vec2 end) { return make_arc(start, end); }

  Kind kind() const { return kind_; }
  bool is_origin() const { return kind_ == Kind::Origin; }
  bool is_plane() const { return kind_ == Kind::Plane; }

  /// Boundary vectors. For Ray/Line only start() is meaningful; the arc of a
  /// Sector/HalfPlane runs counterclockwise from start() to end().
  Vec2 start() const { return b0_; }
  Vec2 end() const { return b1_; }

  /// Start angle in [0, 2pi) and arc length in [0, pi]; 0 for Ray/Line.
  double start_angle() const { return a0_; }
  double arc_length() const { return len_; }

  Cone2 polar() const;
  Cone2 intersect(const Cone2& other) const;
  bool contains_dir(Vec2 v) const;

  /// Generators whose convex conic hull reproduces the cone exactly.
  std::vector<Vec2> generators() const;

 private:
  Kind kind_ = Kind::Origin;
  Vec2 b0_{1.0, 0.0}, b1_{1.0, 0.0};
  double a0_ = 0.0, len_ = 0.0;

  static Cone2 make_arc(Vec2 start, Vec2 end);
  static Cone2 make_ray(Vec2 v);
  static Cone2 make_line(Vec2 v);
};

}  // namespace gaugesets
