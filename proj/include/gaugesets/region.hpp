#pragma once
#include <optional>
#include <vector>

#include "gaugesets/cone2.hpp"
#include "gaugesets/geometry.hpp"

namespace gaugesets {

/// Vertex/ray description of a 2-D region: conv(vertices) + cone(rays)
/// equals the region exactly. Vertices follow the boundary counterclockwise;
/// rays generate the recession cone (up to three generators for half-planes).
struct Chain2D {
  std::vector<Vec2> vertices;
  std::vector<Vec2> rays;
  bool bounded() const { return rays.empty(); }
};

/// Output convex set as a half-space list, with the exact vertex/ray chain in
/// dimension 2. An empty constraint list with empty=false is the whole space.
class Region {
 public:
  static Region empty_region(int dim);
  static Region whole_space(int dim);

  int dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_whole_space() const { return !empty_ && constraints_.empty(); }
  const std::vector<HalfSpace>& constraints() const { return constraints_; }
  const std::optional<Chain2D>& chain() const { return chain_; }

  ExtReal support(const Vec& w) const;
  bool contains(const Vec& x, double tol = 1e-9) const;

 private:
  friend Region intersect_halfspaces_2d(const std::vector<HalfSpace>&);
  friend Region region_from_constraints(int, std::vector<HalfSpace>);
  friend Region region_from_body_2d(const ConvexBody&);
  int dim_ = 2;
  bool empty_ = false;
  std::vector<HalfSpace> constraints_;
  std::optional<Chain2D> chain_;
};

/// Exact vertex/ray chain of the intersection of half-planes, via angular
/// sort of the normals with tightest-offset merging of parallels and
/// per-line interval pruning. Emptiness is a result, never an error.
Region intersect_halfspaces_2d(const std::vector<HalfSpace>& constraints);

/// General-dimension region: stores the (finite) constraints; extracts the
/// chain when dim == 2.
Region region_from_constraints(int dim, std::vector<HalfSpace> constraints);

/// Exact H-rep of a 2-D V-rep body; the chain is taken from the body itself.
Region region_from_body_2d(const ConvexBody& body);

/// conv/cone body from a chain (EMPTY for empty regions).
ConvexBody chain_to_body(const Region& region);

/// Attach an H-rep when missing: exact in dimension 2, MissingHRepError
/// otherwise.
void ensure_hrep(ConvexBody& body);

/// Polar set {u : <u,v> <= 1 for vertices, <u,r> <= 0 for rays}.
/// Requires 0 in the body. Exact V-rep in dimension 2; H-rep-backed body in
/// higher dimension.
ConvexBody polar_set(const ConvexBody& body);

/// Polar cone of cone(generators) in the plane, computed exactly from the
/// extreme angular generators. Generators spanning all directions give the
/// origin body.
ConvexBody polar_cone_2d(const std::vector<Vec>& generators);

/// ConvexBody view of a Cone2 (vertices = {0}, generator rays, exact H-rep).
ConvexBody cone2_to_body(const Cone2& cone);

}  // namespace gaugesets
