#include "gaugesets/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gaugesets {

namespace {

constexpr double kEps = 1e-9;
constexpr double kPivotEps = 1e-11;

// Dense tableau: rows 0..m-1 are constraints (with rhs in the last column),
// row m is the objective expressed over nonbasic variables.
struct Tableau {
  std::size_t m, n;          // constraints, structural+artificial columns
  std::vector<double> t;     // (m+1) x (n+1)
  std::vector<std::size_t> basis;

  double& at(std::size_t r, std::size_t c) { return t[r * (n + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * (n + 1) + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double pv = at(pr, pc);
    for (std::size_t c = 0; c <= n; ++c) at(pr, c) /= pv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  }

  // Bland's rule: entering = lowest-index eligible column, leaving = lowest
  // basis index among minimum-ratio rows. Returns false when optimal.
  // Throws on unboundedness via the out-flag.
  bool step(std::size_t ncols, bool* unbounded) {
    std::size_t pc = n + 1;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (at(m, c) < -kEps) {
        pc = c;
        break;
      }
    }
    if (pc == n + 1) return false;
    std::size_t pr = m + 1;
    double best_ratio = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (at(r, pc) > kPivotEps) {
        const double ratio = at(r, n) / at(r, pc);
        if (pr == m + 1 || ratio < best_ratio - kPivotEps ||
            (std::fabs(ratio - best_ratio) <= kPivotEps && basis[r] < basis[pr])) {
          pr = r;
          best_ratio = ratio;
        }
      }
    }
    if (pr == m + 1) {
      *unbounded = true;
      return false;
    }
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

LpResult simplex_solve(const Mat& M, const Vec& r, const Vec& c) {
  const std::size_t m = M.size();
  const std::size_t n = c.size();
  for (const auto& row : M)
    if (row.size() != n) throw std::invalid_argument("simplex_solve: ragged matrix");
  if (r.size() != m) throw std::invalid_argument("simplex_solve: rhs size mismatch");

  Tableau tb;
  tb.m = m;
  tb.n = n + m;  // structural + artificial
  tb.t.assign((m + 1) * (tb.n + 1), 0.0);
  tb.basis.resize(m);

  for (std::size_t i = 0; i < m; ++i) {
    const double sgn = r[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tb.at(i, j) = sgn * M[i][j];
    tb.at(i, n + i) = 1.0;
    tb.at(i, tb.n) = sgn * r[i];
    tb.basis[i] = n + i;
  }
  // phase-1 objective: minimize the artificial sum, priced out
  for (std::size_t j = 0; j <= tb.n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += tb.at(i, j);
    tb.at(m, j) = (j >= n && j < tb.n) ? 1.0 - s : -s;
  }

  bool unbounded = false;
  std::size_t guard = 0;
  const std::size_t max_iter = 50000 + 50 * (m + tb.n);
  while (tb.step(tb.n, &unbounded)) {
    if (++guard > max_iter) throw std::logic_error("simplex_solve: phase 1 stalled");
  }
  double rscale = 1.0;
  for (double x : r) rscale = std::max(rscale, std::fabs(x));
  if (-tb.at(m, tb.n) > 1e-7 * rscale) {
    return {LpResult::Status::Infeasible, 0.0, {}};
  }
  // drive leftover artificials out where possible; redundant rows keep a
  // zero-valued artificial which simply never re-enters
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] >= n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::fabs(tb.at(i, j)) > 1e-7) {
          tb.pivot(i, j);
          break;
        }
      }
    }
  }

  // phase-2 objective priced out against the current basis
  for (std::size_t j = 0; j <= tb.n; ++j) tb.at(m, j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) tb.at(m, j) = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = tb.basis[i];
    const double cb = bj < n ? c[bj] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t jj = 0; jj <= tb.n; ++jj) tb.at(m, jj) -= cb * tb.at(i, jj);
  }

  unbounded = false;
  guard = 0;
  while (tb.step(n, &unbounded)) {  // artificials barred from entering
    if (++guard > max_iter) throw std::logic_error("simplex_solve: phase 2 stalled");
  }
  if (unbounded) return {LpResult::Status::Unbounded, 0.0, {}};

  LpResult out;
  out.status = LpResult::Status::Optimal;
  out.solution.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] < n) out.solution[tb.basis[i]] = tb.at(i, tb.n);
  out.value = dot(out.solution, c);
  return out;
}

namespace {

struct DenseHrep {
  Mat a;   // m x d
  Vec b;   // m
  bool empty_constraint = false;
};

DenseHrep collect(const std::vector<HalfSpace>& constraints) {
  DenseHrep h;
  for (const HalfSpace& hs : constraints) {
    if (hs.empty_set()) {
      h.empty_constraint = true;
      return h;
    }
    if (hs.whole_space() || !hs.offset.finite()) continue;
    h.a.push_back(hs.normal);
    h.b.push_back(hs.offset.value());
  }
  return h;
}

}  // namespace

ExtReal support_of_hrep(const std::vector<HalfSpace>& constraints, const Vec& w) {
  const std::size_t d = w.size();
  DenseHrep h = collect(constraints);
  if (h.empty_constraint) return ExtReal::neg_inf();
  const std::size_t m = h.a.size();
  if (m == 0) return norm(w) == 0.0 ? ExtReal(0.0) : ExtReal::pos_inf();

  double bscale = 1.0;
  for (double x : h.b) bscale = std::max(bscale, std::fabs(x));

  // feasibility through the dual of (min t : Ax - t <= b):
  //   min b'y  s.t. A'y = 0, sum y = 1, y >= 0; feasible iff value >= 0
  {
    Mat M(d + 1, Vec(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < d; ++j) M[j][i] = h.a[i][j];
      M[d][i] = 1.0;
    }
    Vec r(d + 1, 0.0);
    r[d] = 1.0;
    const LpResult fr = simplex_solve(M, r, h.b);
    if (fr.status == LpResult::Status::Optimal && fr.value < -1e-9 * bscale)
      return ExtReal::neg_inf();
    // dual infeasible means some direction strictly decreases every
    // constraint row, so the primal is (strictly) feasible
  }

  // support through the dual: max <w,x> = min b'y s.t. A'y = w, y >= 0
  {
    Mat M(d, Vec(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < d; ++j) M[j][i] = h.a[i][j];
    const LpResult sr = simplex_solve(M, w, h.b);
    if (sr.status == LpResult::Status::Infeasible) return ExtReal::pos_inf();
    if (sr.status == LpResult::Status::Unbounded) return ExtReal::neg_inf();
    return ExtReal(sr.value);
  }
}

std::optional<Vec> hrep_feasible_point(const std::vector<HalfSpace>& constraints, int dim) {
  const std::size_t d = static_cast<std::size_t>(dim);
  DenseHrep h = collect(constraints);
  if (h.empty_constraint) return std::nullopt;
  const std::size_t m = h.a.size();
  if (m == 0) return Vec(d, 0.0);

  // min t subject to A(x+ - x-) - t + s = b, all variables >= 0
  const std::size_t ncols = 2 * d + 1 + m;
  Mat M(m, Vec(ncols, 0.0));
  Vec r(m), c(ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      M[i][j] = h.a[i][j];
      M[i][d + j] = -h.a[i][j];
    }
    M[i][2 * d] = -1.0;
    M[i][2 * d + 1 + i] = 1.0;
    r[i] = h.b[i];
  }
  c[2 * d] = 1.0;

  double bscale = 1.0;
  for (double x : h.b) bscale = std::max(bscale, std::fabs(x));

  const LpResult res = simplex_solve(M, r, c);
  if (res.status != LpResult::Status::Optimal || res.value > 1e-9 * bscale)
    return std::nullopt;
  Vec x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = res.solution[j] - res.solution[d + j];
  return x;
}

bool body_contains(const ConvexBody& body, const Vec& x) {
  if (body.is_empty()) return false;
  const std::size_t d = static_cast<std::size_t>(body.dim());
  const std::size_t nv = body.vertices().size(), nr = body.rays().size();
  Mat M(d + 1, Vec(nv + nr, 0.0));
  Vec r(d + 1, 0.0), c(nv + nr, 0.0);
  for (std::size_t k = 0; k < nv; ++k) {
    for (std::size_t j = 0; j < d; ++j) M[j][k] = body.vertices()[k][j];
    M[d][k] = 1.0;
  }
  for (std::size_t k = 0; k < nr; ++k)
    for (std::size_t j = 0; j < d; ++j) M[j][nv + k] = body.rays()[k][j];
  for (std::size_t j = 0; j < d; ++j) r[j] = x[j];
  r[d] = 1.0;
  return simplex_solve(M, r, c).status == LpResult::Status::Optimal;
}

}  // namespace gaugesets
