#include "gaugesets/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gaugesets/errors.hpp"
#include "gaugesets/grid.hpp"
#include "gaugesets/scalar_gauge.hpp"

namespace gaugesets::oracle {

namespace {
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw DomainError("normal_quantile: argument must lie strictly inside (0,1)");

  // Acklam's rational approximation
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00, 2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= phigh) {
    const double q = u - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley step against the erfc-based CDF
  const double e = normal_cdf(x) - u;
  const double t = e / normal_pdf(x);
  x -= t / (1.0 + 0.5 * t * x);
  return x;
}

namespace {

// closed-form partial moments: E(Z - z)_+ and E(Z - z)_- for standard Z
double normal_pos_part(double z) { return normal_pdf(z) - z * (1.0 - normal_cdf(z)); }
double normal_neg_part(double z) { return normal_pdf(z) + z * normal_cdf(z); }

double normal_expectile(double tau) {
  if (tau == 0.5) return 0.0;
  double lo = -20.0, hi = 20.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = tau * normal_pos_part(mid) - (1.0 - tau) * normal_neg_part(mid);
    if (f >= 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double normal_gauge_constant(const GaugeSpec& gauge) {
  using K = GaugeSpec::Kind;
  switch (gauge.kind()) {
    case K::Expectation:
      return 0.0;
    case K::QuantileLower:
      if (gauge.alpha() >= 1.0)
        throw UnsupportedGaugeError("normal_gauge_constant: esssup of a normal is infinite");
      return normal_quantile(gauge.alpha());
    case K::AvgQuantileRight: {
      const double a = gauge.alpha();
      if (a == 0.0) return 0.0;
      return normal_pdf(normal_quantile(a)) / (1.0 - a);
    }
    case K::AvgQuantileLeft: {
      const double a = gauge.alpha();
      if (a == 1.0) return 0.0;
      return -normal_pdf(normal_quantile(a)) / a;
    }
    case K::Expectile:
      return normal_expectile(gauge.tau());
    case K::NormGauge: {
      // E Z_+^p = 2^{p/2 - 1} Gamma((p+1)/2) / sqrt(pi)
      const double p = gauge.p();
      const double moment =
          std::pow(2.0, 0.5 * p - 1.0) * std::tgamma(0.5 * (p + 1.0)) / std::sqrt(M_PI);
      return gauge.a() * std::pow(moment, 1.0 / p);
    }
    default:
      throw UnsupportedGaugeError("normal_gauge_constant: unsupported gauge kind");
  }
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t v = mix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ull);
  return static_cast<double>(v >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace

std::vector<Vec> mc_gaussian(const Vec& mu, const Mat& sigma, std::size_t n, std::uint64_t seed) {
  const std::size_t d = mu.size();
  const Mat l = cholesky(sigma);
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec z(d);
    for (std::size_t j = 0; j < d; ++j)
      z[j] = normal_quantile(counter_uniform(seed, k * d + j));
    Vec x(mu);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j <= i; ++j) x[i] += l[i][j] * z[j];
    out.push_back(std::move(x));
  }
  return out;
}

double scan_quantile(std::vector<std::pair<double, double>> vw, double alpha, bool lower) {
  if (vw.empty()) throw std::invalid_argument("scan_quantile: empty sample");
  double total = 0.0;
  for (const auto& [v, w] : vw) total += w;
  std::sort(vw.begin(), vw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double cum = 0.0;
  for (const auto& [v, w] : vw) {
    cum += w / total;
    if (lower ? cum >= alpha : cum > alpha) return v;
  }
  return vw.back().first;
}

bool brute_region_membership(const RandomSetModel& model, const GaugeSpec& gauge,
                             const std::vector<Vec>& dense_dirs, const Vec& x, double tol) {
  for (const Vec& w : dense_dirs) {
    const ExtReal t = eval_gauge(gauge, scalarize(model, w));
    if (t.is_pos_inf()) continue;
    if (t.is_neg_inf()) return false;
    if (dot(x, w) > t.value() + tol * std::max(1.0, std::fabs(t.value()))) return false;
  }
  return true;
}

std::vector<AtomHrep> brute_conditional_enumeration(const RandomSetModel& model,
                                                    const Partition& partition,
                                                    const GaugeSpec& gauge, int lattice_n) {
  if (model.size() > 6 || partition.atom_count() > 3 || lattice_n > 48)
    throw SizeLimitError("brute_conditional_enumeration: limits are 6 scenarios, 3 atoms, 48 directions");
  if (model.dim() != 2)
    throw SizeLimitError("brute_conditional_enumeration: 2-D lattice only");

  GridSpec gs;
  gs.n = lattice_n;
  gs.scheme = GridScheme::Uniform2D;
  const std::vector<Vec> lattice = direction_grid(2, gs);

  const std::size_t na = partition.atom_count();
  const std::size_t nd = lattice.size();

  // conditional gauge per (atom, direction), computed once
  std::vector<std::vector<ExtReal>> t(na, std::vector<ExtReal>(nd, ExtReal(0.0)));
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t k = 0; k < nd; ++k)
      t[a][k] = eval_gauge(gauge, conditional_scalarize(model, partition,
                                                        partition.atom(a).label, lattice[k]));

  // every map atoms -> directions; each assignment contributes, per atom,
  // the half-space of that atom's chosen direction
  std::vector<std::vector<ExtReal>> best(na, std::vector<ExtReal>(nd, ExtReal::pos_inf()));
  std::vector<std::size_t> pick(na, 0);
  const std::size_t total_assignments = [&] {
    std::size_t p = 1;
    for (std::size_t a = 0; a < na; ++a) p *= nd;
    return p;
  }();
  for (std::size_t code = 0; code < total_assignments; ++code) {
    std::size_t rest = code;
    for (std::size_t a = 0; a < na; ++a) {
      pick[a] = rest % nd;
      rest /= nd;
    }
    for (std::size_t a = 0; a < na; ++a) {
      const std::size_t k = pick[a];
      if (t[a][k] < best[a][k]) best[a][k] = t[a][k];
    }
  }

  std::vector<AtomHrep> out;
  for (std::size_t a = 0; a < na; ++a) {
    AtomHrep h;
    h.label = partition.atom(a).label;
    for (std::size_t k = 0; k < nd; ++k) {
      if (best[a][k].is_pos_inf()) continue;
      h.constraints.push_back({lattice[k], best[a][k]});
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace gaugesets::oracle
