#include "gaugesets/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gaugesets/errors.hpp"

namespace gaugesets {

namespace {
Vec zero_vec(int dim) { return Vec(dim, 0.0); }

void check_dim(const std::vector<Vec>& pts, int dim, const char* what) {
  for (const Vec& p : pts)
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument(std::string(what) + ": inconsistent dimension");
}
}  // namespace

ConvexBody ConvexBody::empty(int dim) {
  ConvexBody b;
  b.dim_ = dim;
  b.empty_ = true;
  return b;
}

ConvexBody ConvexBody::point(Vec x) {
  ConvexBody b;
  b.dim_ = static_cast<int>(x.size());
  b.vertices_.push_back(std::move(x));
  return b;
}

ConvexBody ConvexBody::box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box: lo/hi mismatch");
  const int d = static_cast<int>(lo.size());
  for (int i = 0; i < d; ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("box: lo exceeds hi");
  ConvexBody b;
  b.dim_ = d;
  const std::size_t n = std::size_t(1) << d;
  for (std::size_t mask = 0; mask < n; ++mask) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    b.vertices_.push_back(std::move(v));
  }
  std::vector<HalfSpace> h;
  for (int i = 0; i < d; ++i) {
    Vec e = zero_vec(d);
    e[i] = 1.0;
    h.push_back({e, ExtReal(hi[i])});
    e[i] = -1.0;
    h.push_back({e, ExtReal(-lo[i])});
  }
  b.hrep_ = std::move(h);
  return b;
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices, std::vector<Vec> rays) {
  if (vertices.empty()) throw std::invalid_argument("polytope: no vertices");
  const int d = static_cast<int>(vertices[0].size());
  check_dim(vertices, d, "polytope");
  check_dim(rays, d, "polytope rays");
  ConvexBody b;
  b.dim_ = d;
  b.vertices_ = std::move(vertices);
  b.rays_ = std::move(rays);
  return b;
}

ConvexBody ConvexBody::cone(int dim, std::vector<Vec> rays) {
  check_dim(rays, dim, "cone");
  ConvexBody b;
  b.dim_ = dim;
  b.vertices_.push_back(zero_vec(dim));
  b.rays_ = std::move(rays);
  b.is_cone_ = true;
  return b;
}

ConvexBody ConvexBody::translated_cone(Vec x, std::vector<Vec> rays) {
  const int d = static_cast<int>(x.size());
  check_dim(rays, d, "translated_cone");
  ConvexBody b;
  b.dim_ = d;
  b.vertices_.push_back(std::move(x));
  b.rays_ = std::move(rays);
  return b;
}

ConvexBody ConvexBody::halfspace_body(const Vec& normal, double offset) {
  const int d = static_cast<int>(normal.size());
  const double nn = norm(normal);
  if (nn == 0.0) throw std::invalid_argument("halfspace_body: zero normal");
  ConvexBody b;
  b.dim_ = d;
  // anchor at the closest point to the origin
  b.vertices_.push_back(scale(offset / (nn * nn), normal));
  // recession cone: the boundary hyperplane directions plus the inward normal
  if (d == 2) {
    const Vec2 n2 = to_vec2(normal);
    b.rays_.push_back(from_vec2(rot90_ccw(n2)));
    b.rays_.push_back(from_vec2(rot90_cw(n2)));
  } else {
    // orthonormal tangent basis via Gram-Schmidt against the normal
    for (int i = 0; i < d; ++i) {
      Vec e = zero_vec(d);
      e[i] = 1.0;
      Vec t = sub(e, scale(dot(e, normal) / (nn * nn), normal));
      if (norm(t) > 1e-9) {
        b.rays_.push_back(t);
        b.rays_.push_back(negate(t));
      }
    }
  }
  b.rays_.push_back(negate(normal));
  b.hrep_ = std::vector<HalfSpace>{{normal, ExtReal(offset)}};
  return b;
}

ExtReal support(const ConvexBody& body, const Vec& w) {
  if (body.is_empty()) return ExtReal::neg_inf();
  if (static_cast<int>(w.size()) != body.dim())
    throw std::invalid_argument("support: dimension mismatch");

  if (!body.vrep_exact()) {
    // H-rep-backed body; defer to the LP path
    extern ExtReal support_of_hrep(const std::vector<HalfSpace>&, const Vec&);
    return support_of_hrep(*body.hrep(), w);
  }

  const double wn = norm(w);
  for (const Vec& r : body.rays()) {
    const double tol = 1e-12 * std::max(1.0, wn * norm(r));
    if (dot(w, r) > tol) return ExtReal::pos_inf();
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : body.vertices()) best = std::max(best, dot(w, v));
  return ExtReal(best);
}

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  if (a.is_empty() || b.is_empty())
    throw PreconditionError("minkowski_sum: operands must be nonempty");
  if (a.dim() != b.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Vec> verts;
  verts.reserve(a.vertices().size() * b.vertices().size());
  for (const Vec& u : a.vertices())
    for (const Vec& v : b.vertices()) verts.push_back(add(u, v));
  std::vector<Vec> rays = a.rays();
  rays.insert(rays.end(), b.rays().begin(), b.rays().end());
  ConvexBody out = ConvexBody::polytope(std::move(verts), std::move(rays));
  if (a.is_cone() && b.is_cone()) out.mark_cone();
  return out;
}

ConvexBody linear_image(const ConvexBody& body, const Mat& gamma) {
  if (static_cast<int>(gamma.size()) != body.dim())
    throw std::invalid_argument("linear_image: matrix dimension mismatch");
  double scale_abs = 0.0;
  for (const auto& row : gamma)
    for (double x : row) scale_abs = std::max(scale_abs, std::fabs(x));
  if (std::fabs(determinant(gamma)) <= 1e-12 * std::max(1.0, std::pow(scale_abs, body.dim())))
    throw SingularMatrixError("linear_image: matrix is singular");
  if (body.is_empty()) return body;
  std::vector<Vec> verts, rays;
  for (const Vec& v : body.vertices()) verts.push_back(mat_vec(gamma, v));
  for (const Vec& r : body.rays()) rays.push_back(mat_vec(gamma, r));
  ConvexBody out = ConvexBody::polytope(std::move(verts), std::move(rays));
  if (body.is_cone()) out.mark_cone();
  return out;
}

std::vector<Vec2> hull2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a[0] == b[0] && a[1] == b[1]; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Vec2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross2({h[k - 1][0] - h[k - 2][0], h[k - 1][1] - h[k - 2][1]},
                            {pts[i][0] - h[k - 2][0], pts[i][1] - h[k - 2][1]}) <= 0.0)
      --k;
    h[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower && cross2({h[k - 1][0] - h[k - 2][0], h[k - 1][1] - h[k - 2][1]},
                                {pts[i][0] - h[k - 2][0], pts[i][1] - h[k - 2][1]}) <= 0.0)
      --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 2) {  // all collinear: keep the extreme pair
    return {pts.front(), pts.back()};
  }
  return h;
}

}  // namespace gaugesets
