#pragma once
#include <optional>
#include <vector>

#include "gaugesets/geometry.hpp"

namespace gaugesets {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double value = 0.0;
  Vec solution;  // meaningful for Optimal
};

/// min c^T z subject to M z = r, z >= 0.
/// Dense two-phase simplex with Bland's rule (degeneracy-safe); intended for
/// tableaus with few rows and up to a few thousand columns.
LpResult simplex_solve(const Mat& M, const Vec& r, const Vec& c);

/// sup of <w, x> over {x : constraints}; +inf when unbounded, -inf when the
/// system is infeasible. Whole-space constraints are ignored; an offset of
/// -inf makes the system empty.
ExtReal support_of_hrep(const std::vector<HalfSpace>& constraints, const Vec& w);

/// A point satisfying all constraints within 1e-9, when one exists.
std::optional<Vec> hrep_feasible_point(const std::vector<HalfSpace>& constraints, int dim);

/// Membership x in conv(vertices) + cone(rays), decided by LP feasibility.
bool body_contains(const ConvexBody& body, const Vec& x);

}  // namespace gaugesets
