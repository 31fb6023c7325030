#include "gaugesets/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gaugesets/errors.hpp"
#include "gaugesets/simplex.hpp"

namespace gaugesets {

namespace {

constexpr double kAngTol = 1e-10;  // parallel-normal merging
constexpr double kInf = std::numeric_limits<double>::infinity();

struct NormC {
  Vec2 u;       // unit normal
  double t;     // offset after normalisation
  double theta; // angle of u in [0, 2pi)
};

struct Edge {
  std::size_t idx;  // into the merged constraint array
  double lo, hi;    // feasible parameter range on the boundary line
  Vec2 p, d;        // line anchor and direction (CCW travel)
};

double ang_norm(double a) {
  const double two_pi = 6.283185307179586476925286766559;
  while (a < 0.0) a += two_pi;
  while (a >= two_pi) a -= two_pi;
  return a;
}

}  // namespace

Region Region::empty_region(int dim) {
  Region r;
  r.dim_ = dim;
  r.empty_ = true;
  return r;
}

Region Region::whole_space(int dim) {
  Region r;
  r.dim_ = dim;
  if (dim == 2)
    r.chain_ = Chain2D{{{0.0, 0.0}},
                       {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};
  return r;
}

ExtReal Region::support(const Vec& w) const {
  if (empty_) return ExtReal::neg_inf();
  if (constraints_.empty()) return norm(w) == 0.0 ? ExtReal(0.0) : ExtReal::pos_inf();
  if (dim_ == 2 && chain_) {
    const Vec2 w2 = to_vec2(w);
    const double wn = norm2(w2);
    for (const Vec2& r : chain_->rays) {
      const double tol = 1e-12 * std::max(1.0, wn * norm2(r));
      if (dot2(w2, r) > tol) return ExtReal::pos_inf();
    }
    double best = -kInf;
    for (const Vec2& v : chain_->vertices) best = std::max(best, dot2(w2, v));
    return ExtReal(best);
  }
  return support_of_hrep(constraints_, w);
}

bool Region::contains(const Vec& x, double tol) const {
  if (empty_) return false;
  for (const HalfSpace& hs : constraints_) {
    if (hs.whole_space()) continue;
    if (hs.empty_set()) return false;
    const double t = hs.offset.value();
    if (dot(hs.normal, x) > t + tol * std::max(1.0, std::fabs(t)))
      return false;
  }
  return true;
}

Region intersect_halfspaces_2d(const std::vector<HalfSpace>& constraints) {
  Region out;
  out.dim_ = 2;

  bool has_empty_set = false;
  std::vector<NormC> cs;
  for (const HalfSpace& hs : constraints) {
    if (hs.empty_set()) {
      has_empty_set = true;
      continue;
    }
    if (hs.whole_space() || !hs.offset.finite()) continue;
    if (hs.normal.size() != 2)
      throw std::invalid_argument("intersect_halfspaces_2d: normals must be 2-D");
    out.constraints_.push_back(hs);
    const Vec2 n = to_vec2(hs.normal);
    const double nn = norm2(n);
    NormC c;
    c.u = scale2(1.0 / nn, n);
    c.t = hs.offset.value() / nn;
    c.theta = ang_norm(std::atan2(c.u[1], c.u[0]));
    cs.push_back(c);
  }
  if (has_empty_set) {
    out.empty_ = true;
    return out;
  }
  if (cs.empty()) {
    Region whole = Region::whole_space(2);
    return whole;
  }

  // angular sort, then merge parallels keeping the tightest offset
  std::sort(cs.begin(), cs.end(),
            [](const NormC& a, const NormC& b) { return a.theta < b.theta; });
  std::vector<NormC> merged;
  for (const NormC& c : cs) {
    if (!merged.empty() && c.theta - merged.back().theta <= kAngTol) {
      merged.back().t = std::min(merged.back().t, c.t);
    } else {
      merged.push_back(c);
    }
  }
  if (merged.size() > 1 &&
      merged.front().theta + 6.283185307179586 - merged.back().theta <= kAngTol) {
    merged.front().t = std::min(merged.front().t, merged.back().t);
    merged.pop_back();
  }

  double scale_t = 1.0;
  for (const NormC& c : merged) scale_t = std::max(scale_t, std::fabs(c.t));
  const double feas_tol = 1e-9 * scale_t;

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    Edge e;
    e.idx = i;
    e.p = scale2(merged[i].t, merged[i].u);
    e.d = rot90_ccw(merged[i].u);
    e.lo = -kInf;
    e.hi = kInf;
    bool alive = true;
    for (std::size_t j = 0; j < merged.size() && alive; ++j) {
      if (j == i) continue;
      const double c = dot2(merged[j].u, e.d);
      const double rhs = merged[j].t - dot2(merged[j].u, e.p);
      if (std::fabs(c) <= 1e-12) {
        if (rhs < -feas_tol) alive = false;  // parallel and violated
        continue;
      }
      const double s = rhs / c;
      if (c > 0.0)
        e.hi = std::min(e.hi, s);
      else
        e.lo = std::max(e.lo, s);
    }
    if (!alive) continue;
    if (e.lo > e.hi) {
      if (e.lo - e.hi > 1e-7 * scale_t) continue;  // pruned (redundant/grazing)
      e.lo = e.hi = 0.5 * (e.lo + e.hi);           // degenerate touching edge
    }
    edges.push_back(e);
  }

  if (edges.empty()) {
    out.empty_ = true;  // constraints retained: empty <=> infeasible system
    return out;
  }

  Chain2D chain;
  const auto push_vertex = [&](Vec2 v) {
    if (!chain.vertices.empty()) {
      const Vec2 last = chain.vertices.back();
      if (std::fabs(last[0] - v[0]) <= 1e-9 * scale_t &&
          std::fabs(last[1] - v[1]) <= 1e-9 * scale_t)
        return;
    }
    chain.vertices.push_back(v);
  };

  std::vector<const Edge*> full_lines;
  for (const Edge& e : edges)
    if (e.lo == -kInf && e.hi == kInf) full_lines.push_back(&e);

  if (!full_lines.empty()) {
    const Edge& e = *full_lines[0];
    if (full_lines.size() == 1) {  // a single half-plane
      chain.vertices = {e.p};
      chain.rays = {e.d, neg2(e.d), neg2(merged[e.idx].u)};
    } else {  // strip or line between opposite half-planes
      const Edge& f = *full_lines[1];
      const double width = merged[e.idx].t + merged[f.idx].t;
      if (width > feas_tol) {
        chain.vertices = {e.p, f.p};
        chain.rays = {e.d, neg2(e.d)};
      } else {
        chain.vertices = {e.p};
        chain.rays = {e.d, neg2(e.d)};
      }
    }
    out.chain_ = std::move(chain);
    return out;
  }

  // edges are sorted by normal angle already (merged order)
  std::size_t n_in = 0, n_out = 0, in_at = 0;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].lo == -kInf) {
      ++n_in;
      in_at = k;
    }
    if (edges[k].hi == kInf) ++n_out;
  }
  if (n_in != n_out || n_in > 1)
    throw std::logic_error("intersect_halfspaces_2d: inconsistent unbounded edges");

  if (n_in == 0) {  // bounded polygon (possibly degenerate)
    for (const Edge& e : edges) push_vertex(add2(e.p, scale2(e.hi, e.d)));
    if (chain.vertices.size() > 1) {
      const Vec2 a = chain.vertices.front(), b = chain.vertices.back();
      if (std::fabs(a[0] - b[0]) <= 1e-9 * scale_t &&
          std::fabs(a[1] - b[1]) <= 1e-9 * scale_t)
        chain.vertices.pop_back();
    }
  } else {  // open chain from the incoming to the outgoing edge
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const Edge& e = edges[(in_at + k) % edges.size()];
      if (e.hi == kInf) {
        chain.rays = {neg2(edges[in_at].d), e.d};
        break;
      }
      push_vertex(add2(e.p, scale2(e.hi, e.d)));
    }
    if (chain.rays.size() == 2) {
      const Vec2 a = chain.rays[0], b = chain.rays[1];
      if (std::fabs(a[0] - b[0]) <= 1e-12 && std::fabs(a[1] - b[1]) <= 1e-12)
        chain.rays.pop_back();
    }
  }
  out.chain_ = std::move(chain);
  return out;
}

Region region_from_constraints(int dim, std::vector<HalfSpace> constraints) {
  if (dim == 2) return intersect_halfspaces_2d(constraints);
  Region out;
  out.dim_ = dim;
  for (const HalfSpace& hs : constraints) {
    if (hs.empty_set()) {
      out.empty_ = true;
      continue;
    }
    if (hs.whole_space() || !hs.offset.finite()) continue;
    out.constraints_.push_back(hs);
  }
  if (!out.empty_ && !out.constraints_.empty() &&
      !hrep_feasible_point(out.constraints_, dim))
    out.empty_ = true;
  return out;
}

ConvexBody chain_to_body(const Region& region) {
  if (region.is_empty()) return ConvexBody::empty(region.dim());
  if (region.dim() != 2 || !region.chain())
    throw std::invalid_argument("chain_to_body: 2-D chain required");
  const Chain2D& ch = *region.chain();
  std::vector<Vec> verts, rays;
  for (const Vec2& v : ch.vertices) verts.push_back(from_vec2(v));
  for (const Vec2& r : ch.rays) rays.push_back(from_vec2(r));
  ConvexBody body = ConvexBody::polytope(std::move(verts), std::move(rays));
  body.set_hrep(region.constraints());
  return body;
}

Region region_from_body_2d(const ConvexBody& body) {
  if (body.dim() != 2) throw std::invalid_argument("region_from_body_2d: 2-D only");
  if (body.is_empty()) return Region::empty_region(2);

  std::vector<Vec2> pts;
  for (const Vec& v : body.vertices()) pts.push_back(to_vec2(v));
  std::vector<Vec2> hull = hull2d(pts);

  std::vector<Vec2> gens;
  for (const Vec& r : body.rays()) gens.push_back(to_vec2(r));
  const Cone2 rec = Cone2::from_generators(gens);
  if (rec.is_plane()) return Region::whole_space(2);

  double scale_t = 1.0;
  for (const Vec2& v : hull)
    scale_t = std::max({scale_t, std::fabs(v[0]), std::fabs(v[1])});

  // candidate outward normals: recession-polar boundary plus hull edge
  // normals inside the polar arc
  const Cone2 pol = rec.polar();
  std::vector<Vec2> candidates;
  for (const Vec2& g : pol.generators()) candidates.push_back(g);
  std::vector<Vec2> edge_normals;
  if (hull.size() >= 3) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vec2 a = hull[i], b = hull[(i + 1) % hull.size()];
      edge_normals.push_back(rot90_cw({b[0] - a[0], b[1] - a[1]}));
    }
  } else if (hull.size() == 2) {
    const Vec2 d{hull[1][0] - hull[0][0], hull[1][1] - hull[0][1]};
    edge_normals = {rot90_cw(d), rot90_ccw(d), d, neg2(d)};
  } else {
    edge_normals = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  }
  for (const Vec2& n : edge_normals)
    if (pol.contains_dir(n)) candidates.push_back(n);

  std::vector<HalfSpace> constraints;
  for (const Vec2& n : candidates) {
    const double nn = norm2(n);
    if (nn == 0.0) continue;
    double t = -kInf;
    for (const Vec2& v : hull) t = std::max(t, dot2(n, v));
    constraints.push_back({from_vec2(n), ExtReal(t)});
  }

  Region out;
  out.dim_ = 2;
  out.constraints_ = std::move(constraints);
  Chain2D chain;
  chain.vertices = hull;
  chain.rays = rec.generators();
  out.chain_ = std::move(chain);
  return out;
}

void ensure_hrep(ConvexBody& body) {
  if (body.hrep() || body.is_empty()) return;
  if (body.dim() != 2)
    throw MissingHRepError("ensure_hrep: no H-representation supplied in dimension " +
                           std::to_string(body.dim()));
  body.set_hrep(region_from_body_2d(body).constraints());
}

ConvexBody polar_set(const ConvexBody& body) {
  if (body.is_empty() || !body_contains(body, Vec(body.dim(), 0.0)))
    throw PreconditionError("polar_set: origin must belong to the body");

  std::vector<HalfSpace> constraints;
  for (const Vec& v : body.vertices()) {
    if (norm(v) == 0.0) continue;
    constraints.push_back({v, ExtReal(1.0)});
  }
  for (const Vec& r : body.rays()) {
    if (norm(r) == 0.0) continue;
    constraints.push_back({r, ExtReal(0.0)});
  }

  if (body.dim() == 2) {
    Region reg = intersect_halfspaces_2d(constraints);
    ConvexBody out = chain_to_body(reg);
    if (body.is_cone()) out.mark_cone();
    return out;
  }
  ConvexBody out = ConvexBody::point(Vec(body.dim(), 0.0));
  out.set_hrep(std::move(constraints));
  out.mark_hrep_only();
  if (body.is_cone()) out.mark_cone();
  return out;
}

ConvexBody cone2_to_body(const Cone2& cone) {
  std::vector<Vec> rays;
  for (const Vec2& g : cone.generators()) rays.push_back(from_vec2(g));
  ConvexBody body = ConvexBody::cone(2, std::move(rays));
  std::vector<HalfSpace> hrep;
  for (const Vec2& n : cone.polar().generators())
    hrep.push_back({from_vec2(n), ExtReal(0.0)});
  body.set_hrep(std::move(hrep));
  return body;
}

ConvexBody polar_cone_2d(const std::vector<Vec>& generators) {
  std::vector<Vec2> gens;
  for (const Vec& g : generators) {
    if (g.size() != 2) throw std::invalid_argument("polar_cone_2d: 2-D only");
    gens.push_back(to_vec2(g));
  }
  return cone2_to_body(Cone2::from_generators(gens).polar());
}

}  // namespace gaugesets
