#include "gaugesets/cone2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gaugesets {

namespace {
constexpr double kAngTol = 1e-10;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

double ang_of(Vec2 v) {
  double a = std::atan2(v[1], v[0]);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// offset of angle t from base a, in [0, 2pi)
double ang_fwd(double a, double t) {
  double d = t - a;
  while (d < 0.0) d += kTwoPi;
  while (d >= kTwoPi) d -= kTwoPi;
  return d;
}
}  // namespace

Cone2 Cone2::origin() { return Cone2(); }

Cone2 Cone2::plane() {
  Cone2 c;
  c.kind_ = Kind::Plane;
  return c;
}

Cone2 Cone2::make_ray(Vec2 v) {
  Cone2 c;
  c.kind_ = Kind::Ray;
  c.b0_ = c.b1_ = v;
  c.a0_ = ang_of(v);
  c.len_ = 0.0;
  return c;
}

Cone2 Cone2::make_line(Vec2 v) {
  Cone2 c;
  c.kind_ = Kind::Line;
  c.b0_ = v;
  c.b1_ = neg2(v);
  c.a0_ = ang_of(v);
  c.len_ = 0.0;
  return c;
}

Cone2 Cone2::make_arc(Vec2 start, Vec2 end) {
  Cone2 c;
  c.b0_ = start;
  c.b1_ = end;
  c.a0_ = ang_of(start);
  c.len_ = ang_fwd(c.a0_, ang_of(end));
  if (c.len_ <= kAngTol) {
    c.kind_ = Kind::Ray;
    c.len_ = 0.0;
    c.b1_ = start;
  } else if (std::fabs(c.len_ - kPi) <= kAngTol) {
    c.kind_ = Kind::HalfPlane;
    c.len_ = kPi;
  } else if (c.len_ < kPi) {
    c.kind_ = Kind::Sector;
  } else {
    c.kind_ = Kind::Plane;
  }
  return c;
}

Cone2 Cone2::from_generators(const std::vector<Vec2>& gens) {
  std::vector<Vec2> g;
  for (const Vec2& v : gens)
    if (norm2(v) > 0.0) g.push_back(v);
  if (g.empty()) return origin();
  if (g.size() == 1) return make_ray(g[0]);

  std::vector<double> ang(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ang[i] = ang_of(g[i]);

  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });

  // minimal containing arc = complement of the largest cyclic gap
  double max_gap = -1.0;
  std::size_t gap_at = 0;  // gap sits after order[gap_at]
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t j = (i + 1) % order.size();
    double gap = ang[order[j]] - ang[order[i]];
    if (j == 0) gap += kTwoPi;
    if (gap > max_gap) {
      max_gap = gap;
      gap_at = i;
    }
  }
  const double span = kTwoPi - max_gap;
  if (span > kPi + kAngTol) return plane();

  const Vec2 start = g[order[(gap_at + 1) % order.size()]];
  const Vec2 end = g[order[gap_at]];

  if (span <= kAngTol) return make_ray(start);
  if (std::fabs(span - kPi) <= kAngTol) {
    // distinguish a genuine half-plane from a line of antipodal generators
    const double sa = ang_of(start);
    bool interior = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = ang_fwd(sa, ang[i]);
      if (d > kAngTol && d < kPi - kAngTol) {
        interior = true;
        break;
      }
    }
    if (!interior) return make_line(start);
  }
  return make_arc(start, end);
}

Cone2 Cone2::polar() const {
  switch (kind_) {
    case Kind::Origin: return plane();
    case Kind::Plane: return origin();
    case Kind::Line: return make_line(rot90_ccw(b0_));
    case Kind::Ray: return make_arc(rot90_ccw(b0_), rot90_cw(b0_));
    case Kind::HalfPlane: return make_ray(rot90_cw(b0_));
    case Kind::Sector: return make_arc(rot90_ccw(b1_), rot90_cw(b0_));
  }
  throw std::logic_error("Cone2::polar: unreachable");
}

bool Cone2::contains_dir(Vec2 v) const {
  if (norm2(v) == 0.0) return true;
  const double t = ang_of(v);
  switch (kind_) {
    case Kind::Origin: return false;
    case Kind::Plane: return true;
    case Kind::Ray: {
      const double d = ang_fwd(a0_, t);
      return d <= kAngTol || d >= kTwoPi - kAngTol;
    }
    case Kind::Line: {
      const double d = ang_fwd(a0_, t);
      return d <= kAngTol || d >= kTwoPi - kAngTol ||
             std::fabs(d - kPi) <= kAngTol;
    }
    case Kind::Sector:
    case Kind::HalfPlane: {
      const double d = ang_fwd(a0_, t);
      return d <= len_ + kAngTol || d >= kTwoPi - kAngTol;
    }
  }
  return false;
}

Cone2 Cone2::intersect(const Cone2& other) const {
  if (kind_ == Kind::Origin || other.kind_ == Kind::Origin) return origin();
  if (kind_ == Kind::Plane) return other;
  if (other.kind_ == Kind::Plane) return *this;

  const bool a_pts = kind_ == Kind::Ray || kind_ == Kind::Line;
  const bool b_pts = other.kind_ == Kind::Ray || other.kind_ == Kind::Line;

  if (a_pts && b_pts) {
    std::vector<Vec2> shared;
    auto dirs_a = kind_ == Kind::Line ? std::vector<Vec2>{b0_, neg2(b0_)}
                                      : std::vector<Vec2>{b0_};
    for (const Vec2& d : dirs_a)
      if (other.contains_dir(d)) shared.push_back(d);
    if (shared.empty()) return origin();
    if (shared.size() == 2) return make_line(shared[0]);
    return make_ray(shared[0]);
  }
  if (a_pts || b_pts) {
    const Cone2& pts = a_pts ? *this : other;
    const Cone2& arc = a_pts ? other : *this;
    std::vector<Vec2> shared;
    auto dirs = pts.kind_ == Kind::Line
                    ? std::vector<Vec2>{pts.b0_, neg2(pts.b0_)}
                    : std::vector<Vec2>{pts.b0_};
    for (const Vec2& d : dirs)
      if (arc.contains_dir(d)) shared.push_back(d);
    if (shared.empty()) return origin();
    if (shared.size() == 2) return make_line(shared[0]);
    return make_ray(shared[0]);
  }

  // two arcs, lengths in (0, pi]
  struct Comp {
    double s, e;
    Vec2 vs, ve;
  };
  std::vector<Comp> comps;
  for (int k = -1; k <= 1; ++k) {
    const double b0 = other.a0_ + k * kTwoPi;
    const double s = std::max(a0_, b0);
    const double e = std::min(a0_ + len_, b0 + other.len_);
    if (e >= s - kAngTol) {
      Comp c;
      c.s = s;
      c.e = std::max(e, s);
      c.vs = (a0_ >= b0) ? b0_ : other.b0_;
      c.ve = (a0_ + len_ <= b0 + other.len_) ? b1_ : other.b1_;
      comps.push_back(c);
    }
  }
  if (comps.empty()) return origin();
  if (comps.size() == 1) {
    const Comp& c = comps[0];
    if (c.e - c.s <= kAngTol) return make_ray(c.vs);
    return make_arc(c.vs, c.ve);
  }
  // two touching endpoints; for convex inputs both are degenerate and
  // antipodal, which is a line
  return make_line(comps[0].vs);
}

std::vector<Vec2> Cone2::generators() const {
  switch (kind_) {
    case Kind::Origin: return {};
    case Kind::Ray: return {b0_};
    case Kind::Line: return {b0_, b1_};
    case Kind::Sector: return {b0_, b1_};
    case Kind::HalfPlane: return {b0_, rot90_ccw(b0_), b1_};
    case Kind::Plane:
      return {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  }
  return {};
}

}  // namespace gaugesets
