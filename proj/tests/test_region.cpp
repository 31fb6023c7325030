#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gaugesets/errors.hpp"
#include "gaugesets/grid.hpp"
#include "gaugesets/region.hpp"
#include "gaugesets/simplex.hpp"

using namespace gaugesets;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 gen(9917);
  return gen;
}

HalfSpace hs(double nx, double ny, double t) { return {{nx, ny}, ExtReal(t)}; }

std::vector<HalfSpace> unit_square_hs() {
  return {hs(1, 0, 1), hs(-1, 0, 0), hs(0, 1, 1), hs(0, -1, 0)};
}

bool close2(Vec2 a, Vec2 b, double tol = 1e-9) {
  return std::fabs(a[0] - b[0]) <= tol && std::fabs(a[1] - b[1]) <= tol;
}

bool has_vertex(const Chain2D& ch, Vec2 v, double tol = 1e-9) {
  for (const Vec2& x : ch.vertices)
    if (close2(x, v, tol)) return true;
  return false;
}

}  // namespace

TEST_CASE("intersect_halfspaces_2d: square") {
  const Region r = intersect_halfspaces_2d(unit_square_hs());
  REQUIRE_FALSE(r.is_empty());
  REQUIRE(r.chain());
  CHECK(r.chain()->vertices.size() == 4);
  CHECK(r.chain()->rays.empty());
  CHECK(has_vertex(*r.chain(), {0, 0}));
  CHECK(has_vertex(*r.chain(), {1, 1}));
  CHECK(r.contains({0.5, 0.5}));
  CHECK_FALSE(r.contains({1.5, 0.5}));
}

TEST_CASE("intersect_halfspaces_2d: infeasible pair") {
  const Region r = intersect_halfspaces_2d({hs(1, 0, 0), hs(-1, 0, -1)});
  CHECK(r.is_empty());
}

TEST_CASE("intersect_halfspaces_2d: wedge") {
  const Region r = intersect_halfspaces_2d({hs(1, 0, 0), hs(0, 1, 0)});
  REQUIRE(r.chain());
  REQUIRE(r.chain()->vertices.size() == 1);
  CHECK(close2(r.chain()->vertices[0], {0, 0}));
  REQUIRE(r.chain()->rays.size() == 2);
  CHECK(r.support({1.0, 1.0}).value() == Catch::Approx(0.0));
  CHECK(r.support({-1.0, -1.0}).is_pos_inf());
}

TEST_CASE("intersect_halfspaces_2d: degenerate shapes") {
  SECTION("half-plane") {
    const Region r = intersect_halfspaces_2d({hs(0, 1, 2)});
    REQUIRE(r.chain());
    CHECK(r.chain()->rays.size() == 3);
    CHECK(r.contains({100.0, -50.0}));
    CHECK_FALSE(r.contains({0.0, 2.5}));
  }
  SECTION("strip") {
    const Region r = intersect_halfspaces_2d({hs(0, 1, 1), hs(0, -1, 0)});
    REQUIRE(r.chain());
    CHECK(r.chain()->vertices.size() == 2);
    CHECK(r.chain()->rays.size() == 2);
    CHECK(r.contains({57.0, 0.5}));
    CHECK_FALSE(r.contains({0.0, 1.5}));
  }
  SECTION("line") {
    const Region r = intersect_halfspaces_2d({hs(0, 1, 0), hs(0, -1, 0)});
    REQUIRE(r.chain());
    CHECK(r.chain()->vertices.size() == 1);
    CHECK(r.chain()->rays.size() == 2);
    CHECK(r.contains({13.0, 0.0}));
  }
  SECTION("point") {
    const Region r = intersect_halfspaces_2d(
        {hs(1, 0, 0), hs(-1, 0, 0), hs(0, 1, 0), hs(0, -1, 0)});
    REQUIRE(r.chain());
    CHECK(r.chain()->vertices.size() == 1);
    CHECK(r.chain()->rays.empty());
  }
  SECTION("segment") {
    const Region r = intersect_halfspaces_2d(
        {hs(1, 0, 0), hs(-1, 0, 0), hs(0, 1, 1), hs(0, -1, 0)});
    REQUIRE(r.chain());
    CHECK(r.chain()->vertices.size() == 2);
    CHECK(r.chain()->rays.empty());
  }
  SECTION("half-strip") {
    const Region r = intersect_halfspaces_2d({hs(0, 1, 1), hs(0, -1, 0), hs(1, 0, 0)});
    REQUIRE(r.chain());
    CHECK(r.chain()->vertices.size() == 2);
    REQUIRE(r.chain()->rays.size() == 1);
    CHECK(close2(r.chain()->rays[0], {-1, 0}));
  }
  SECTION("whole plane") {
    const Region r = intersect_halfspaces_2d({});
    CHECK(r.is_whole_space());
    CHECK(r.contains({1e6, -1e6}));
  }
}

TEST_CASE("chain feasibility property") {
  // random half-space sets: every chain vertex satisfies all constraints,
  // interior samples are feasible, points past any single constraint are not
  std::uniform_real_distribution<double> ad(0.0, 2 * M_PI), td(0.5, 3.0);
  for (int k = 0; k < 120; ++k) {
    std::vector<HalfSpace> cs;
    const int n = 3 + static_cast<int>(rng()() % 8);
    for (int i = 0; i < n; ++i) {
      const double a = ad(rng());
      cs.push_back(hs(std::cos(a), std::sin(a), td(rng())));
    }
    const Region r = intersect_halfspaces_2d(cs);
    if (r.is_empty()) continue;
    REQUIRE(r.chain());
    for (const Vec2& v : r.chain()->vertices) {
      CHECK(r.contains({v[0], v[1]}, 1e-9));
    }
    // all offsets positive, so the origin is interior
    CHECK(r.contains({0.0, 0.0}));
  }
}

TEST_CASE("region_from_body round trip") {
  std::uniform_real_distribution<double> vd(-4.0, 4.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<Vec> pts;
    const int n = 3 + static_cast<int>(rng()() % 6);
    for (int i = 0; i < n; ++i) pts.push_back({vd(rng()), vd(rng())});
    const ConvexBody body = ConvexBody::polytope(pts);
    const Region reg = region_from_body_2d(body);

    // LP/geometry agreement after the H<->V round trip
    for (int j = 0; j < 8; ++j) {
      std::uniform_real_distribution<double> ad(0.0, 2 * M_PI);
      const double a = ad(rng());
      const Vec w{std::cos(a), std::sin(a)};
      const double via_body = support(body, w).value();
      const double via_lp = support_of_hrep(reg.constraints(), w).value();
      CHECK(via_lp == Catch::Approx(via_body).margin(1e-7));
    }
  }
}

TEST_CASE("region_from_body with rays") {
  const ConvexBody quad = ConvexBody::translated_cone({2.0, 3.0}, {{-1, 0}, {0, -1}});
  const Region reg = region_from_body_2d(quad);
  CHECK(reg.contains({-5.0, -5.0}));
  CHECK(reg.contains({2.0, 3.0}));
  CHECK_FALSE(reg.contains({2.1, 3.0}));
  CHECK(reg.support({1.0, 0.0}).value() == Catch::Approx(2.0));
  CHECK(reg.support({1.0, 1.0}).value() == Catch::Approx(5.0));
  CHECK(reg.support({-1.0, 0.0}).is_pos_inf());
}

TEST_CASE("support_of_hrep") {
  CHECK(support_of_hrep(unit_square_hs(), {1.0, 1.0}).value() == Catch::Approx(2.0));
  CHECK(support_of_hrep({hs(1, 0, 0)}, {0.0, 1.0}).is_pos_inf());
  CHECK(support_of_hrep({hs(1, 0, 0), hs(-1, 0, -1)}, {1.0, 0.0}).is_neg_inf());
  CHECK(support_of_hrep({}, {0.0, 0.0}).value() == 0.0);

  // 3-D box through the LP
  std::vector<HalfSpace> box3;
  for (int i = 0; i < 3; ++i) {
    Vec e(3, 0.0);
    e[i] = 1.0;
    box3.push_back({e, ExtReal(1.0)});
    e[i] = -1.0;
    box3.push_back({e, ExtReal(0.5)});
  }
  CHECK(support_of_hrep(box3, {1.0, 1.0, 1.0}).value() == Catch::Approx(3.0));
  CHECK(support_of_hrep(box3, {-1.0, -1.0, -1.0}).value() == Catch::Approx(1.5));
}

TEST_CASE("hrep_feasible_point") {
  const auto p = hrep_feasible_point(unit_square_hs(), 2);
  REQUIRE(p);
  CHECK((*p)[0] >= -1e-9);
  CHECK((*p)[0] <= 1.0 + 1e-9);
  CHECK_FALSE(hrep_feasible_point({hs(1, 0, 0), hs(-1, 0, -1)}, 2));
}

TEST_CASE("polar set") {
  // square [-1,1]^2 -> cross-polytope
  const ConvexBody sq = ConvexBody::box({-1.0, -1.0}, {1.0, 1.0});
  const ConvexBody cross = polar_set(sq);
  CHECK(support(cross, {1.0, 0.0}).value() == Catch::Approx(1.0));
  CHECK(support(cross, {1.0, 1.0}).value() == Catch::Approx(1.0));
  CHECK(body_contains(cross, {0.6, 0.6}) == false);
  CHECK(body_contains(cross, {0.4, 0.4}));

  // cone R_-^2 -> R_+^2
  const ConvexBody neg = ConvexBody::cone(2, {{-1, 0}, {0, -1}});
  const ConvexBody pos = polar_set(neg);
  CHECK(pos.is_cone());
  CHECK(support(pos, {-1.0, -1.0}).value() == Catch::Approx(0.0));
  CHECK(support(pos, {1.0, 0.5}).is_pos_inf());

  CHECK_THROWS_AS(polar_set(ConvexBody::box({1.0, 1.0}, {2.0, 2.0})), PreconditionError);

  // bipolar: support agreement on a grid for bodies with 0 interior
  std::uniform_real_distribution<double> vd(0.5, 3.0), ad(0.0, 2 * M_PI);
  GridSpec gs;
  gs.n = 64;
  const auto dirs = direction_grid(2, gs);
  for (int k = 0; k < 30; ++k) {
    std::vector<Vec> pts;
    for (int i = 0; i < 6; ++i) {
      const double a = ad(rng()), r = vd(rng());
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    pts.push_back({0.3, 0.0});
    pts.push_back({-0.3, 0.1});
    pts.push_back({0.0, -0.3});  // keep 0 in the interior
    const ConvexBody b = ConvexBody::polytope(pts);
    const ConvexBody bb = polar_set(polar_set(b));
    for (const Vec& w : dirs)
      CHECK(support(bb, w).value() == Catch::Approx(support(b, w).value()).margin(1e-7));
  }
}

TEST_CASE("polar cone 2d") {
  const ConvexBody p = polar_cone_2d({{1.0, 0.0}, {0.0, 1.0}});
  REQUIRE(p.is_cone());
  REQUIRE(p.rays().size() == 2);
  // rays {(0,-1),(-1,0)} up to order
  const bool match =
      (close2(to_vec2(p.rays()[0]), {0, -1}) && close2(to_vec2(p.rays()[1]), {-1, 0})) ||
      (close2(to_vec2(p.rays()[0]), {-1, 0}) && close2(to_vec2(p.rays()[1]), {0, -1}));
  CHECK(match);

  // the worked cone containing the positive quadrant with boundary points
  // (-1,2) and (2,-1): its polar has boundary rays through (-2,-1), (-1,-2)
  const ConvexBody q = polar_cone_2d({{-1.0, 2.0}, {1.0, 1.0}, {2.0, -1.0}});
  REQUIRE(q.rays().size() == 2);
  for (const Vec& r : q.rays()) {
    const bool hit = close2({r[0] / norm(r), r[1] / norm(r)},
                            {-2.0 / std::sqrt(5.0), -1.0 / std::sqrt(5.0)}, 1e-9) ||
                     close2({r[0] / norm(r), r[1] / norm(r)},
                            {-1.0 / std::sqrt(5.0), -2.0 / std::sqrt(5.0)}, 1e-9);
    CHECK(hit);
  }

  // half-plane -> single outward-normal ray
  const ConvexBody hp = polar_cone_2d({{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}});
  REQUIRE(hp.rays().size() == 1);
  CHECK(close2({hp.rays()[0][0], hp.rays()[0][1]}, {0.0, -1.0}));

  // all directions -> origin body
  const ConvexBody origin = polar_cone_2d({{1.0, 0.0}, {0.0, 1.0}, {-1.0, -1.0}});
  CHECK(origin.rays().empty());
  CHECK(origin.vertices().size() == 1);

  // involution up to positive scaling
  const ConvexBody back = polar_cone_2d({p.rays()[0], p.rays()[1]});
  REQUIRE(back.rays().size() == 2);
  for (const Vec& r : back.rays()) {
    const Vec2 u{r[0] / norm(r), r[1] / norm(r)};
    CHECK((close2(u, {1, 0}) || close2(u, {0, 1})));
  }
}

TEST_CASE("chain support agrees with the LP across random systems") {
  // two independent routes to the same numbers: the exact 2-D vertex/ray
  // chain versus the dense simplex on the raw H-rep
  std::uniform_real_distribution<double> ad(0.0, 2 * M_PI), td(-2.0, 3.0);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    std::vector<HalfSpace> cs;
    const int n = 1 + static_cast<int>(rng()() % 7);
    for (int i = 0; i < n; ++i) {
      const double a = ad(rng());
      cs.push_back(hs(std::cos(a), std::sin(a), td(rng())));
    }
    const Region reg = intersect_halfspaces_2d(cs);
    const bool lp_feasible = hrep_feasible_point(cs, 2).has_value();
    CHECK(reg.is_empty() != lp_feasible);
    if (reg.is_empty()) continue;
    for (int j = 0; j < 6; ++j) {
      const double a = ad(rng());
      const Vec w{std::cos(a), std::sin(a)};
      const ExtReal via_chain = reg.support(w);
      const ExtReal via_lp = support_of_hrep(cs, w);
      if (via_chain.is_pos_inf() || via_lp.is_pos_inf()) {
        // unbounded: allow tolerance-boundary disagreement only when the
        // direction grazes the recession cone
        if (via_chain.is_pos_inf() != via_lp.is_pos_inf()) {
          const double finite =
              via_chain.finite() ? via_chain.value() : via_lp.value();
          CHECK(std::fabs(finite) >= 1e3);  // would have to be near-unbounded
        }
      } else {
        CHECK(via_chain.value() == Catch::Approx(via_lp.value()).margin(1e-7));
        ++checked;
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("ensure_hrep") {
  ConvexBody tri = ConvexBody::polytope({{0, 0}, {2, 0}, {0, 2}});
  ensure_hrep(tri);
  REQUIRE(tri.hrep());
  CHECK(tri.hrep()->size() >= 3);

  ConvexBody tetra = ConvexBody::polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(ensure_hrep(tetra), MissingHRepError);
}
