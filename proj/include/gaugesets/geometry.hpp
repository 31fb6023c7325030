#pragma once
#include <optional>
#include <vector>

#include "gaugesets/ext_real.hpp"
#include "gaugesets/linalg.hpp"

namespace gaugesets {

/// Closed half-space {x : <normal, x> <= offset}.
/// offset = +inf or normal = 0 encodes the whole space; offset = -inf the
/// empty set.
struct HalfSpace {
  Vec normal;
  ExtReal offset;

  bool whole_space() const {
    if (offset.is_pos_inf()) return true;
    for (double c : normal)
      if (c != 0.0) return false;
    return !offset.is_neg_inf();
  }
  bool empty_set() const { return offset.is_neg_inf(); }
};

/// Generalized polyhedron conv(vertices) + cone(rays), with an optional
/// half-space representation attached lazily. The explicit EMPTY sentinel is
/// the only body without vertices. Bodies flagged !vrep_exact (polars in
/// dimension 3 and higher) answer support queries through their H-rep.
class ConvexBody {
 public:
  static ConvexBody empty(int dim);
  static ConvexBody point(Vec x);
  static ConvexBody box(const Vec& lo, const Vec& hi);
  static ConvexBody polytope(std::vector<Vec> vertices, std::vector<Vec> rays = {});
  static ConvexBody cone(int dim, std::vector<Vec> rays);
  static ConvexBody translated_cone(Vec x, std::vector<Vec> rays);
  static ConvexBody halfspace_body(const Vec& normal, double offset);

  int dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_cone() const { return is_cone_; }
  bool vrep_exact() const { return vrep_exact_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const std::optional<std::vector<HalfSpace>>& hrep() const { return hrep_; }

  void set_hrep(std::vector<HalfSpace> h) { hrep_ = std::move(h); }
  void mark_cone() { is_cone_ = true; }
  void mark_hrep_only() { vrep_exact_ = false; }

 private:
  int dim_ = 0;
  bool empty_ = false;
  bool is_cone_ = false;
  bool vrep_exact_ = true;
  std::vector<Vec> vertices_;
  std::vector<Vec> rays_;
  std::optional<std::vector<HalfSpace>> hrep_;
};

/// Support function h(body, w) = sup { <w,x> : x in body }.
/// +inf as soon as some ray has positive inner product with w; -inf for the
/// empty body.
ExtReal support(const ConvexBody& body, const Vec& w);

/// Minkowski sum: vertices are the pairwise sums, rays the union. Support
/// functions add exactly.
ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);

/// Image under an invertible matrix; vertices and rays map through gamma.
ConvexBody linear_image(const ConvexBody& body, const Mat& gamma);

/// Counterclockwise convex hull; collinear inputs collapse to the two
/// endpoints, a single point to itself.
std::vector<Vec2> hull2d(std::vector<Vec2> points);

}  // namespace gaugesets
