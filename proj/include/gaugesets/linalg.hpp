#pragma once
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace gaugesets {

using Vec = std::vector<double>;
using Vec2 = std::array<double, 2>;
using Mat = std::vector<std::vector<double>>;  // row major, square in practice

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vec scale(double c, const Vec& a) {
  Vec r(a);
  for (double& x : r) x *= c;
  return r;
}

inline Vec negate(const Vec& a) { return scale(-1.0, a); }

inline Vec mat_vec(const Mat& m, const Vec& x) {
  Vec r(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
  return r;
}

inline Mat transpose(const Mat& m) {
  const std::size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
  Mat t(c, std::vector<double>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}

/// Determinant by partial-pivot elimination; square matrices only.
double determinant(Mat m);

/// Inverse by Gauss-Jordan; throws SingularMatrixError when rank-deficient.
Mat inverse(const Mat& m);

/// Lower-triangular Cholesky factor; throws NotPositiveDefiniteError unless
/// the matrix is symmetric positive definite.
Mat cholesky(const Mat& m);

inline double dot2(Vec2 a, Vec2 b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm2(Vec2 a) { return std::hypot(a[0], a[1]); }
inline double cross2(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
inline Vec2 rot90_ccw(Vec2 a) { return {-a[1], a[0]}; }
inline Vec2 rot90_cw(Vec2 a) { return {a[1], -a[0]}; }
inline Vec2 scale2(double c, Vec2 a) { return {c * a[0], c * a[1]}; }
inline Vec2 add2(Vec2 a, Vec2 b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 neg2(Vec2 a) { return {-a[0], -a[1]}; }

inline Vec2 to_vec2(const Vec& v) { return {v[0], v[1]}; }
inline Vec from_vec2(Vec2 v) { return {v[0], v[1]}; }

}  // namespace gaugesets
