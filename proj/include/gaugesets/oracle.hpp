#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gaugesets/engine.hpp"
#include "gaugesets/gauge_spec.hpp"
#include "gaugesets/scenario.hpp"

namespace gaugesets::oracle {

/// Standard normal CDF / density / quantile. The quantile uses a rational
/// approximation refined by one Halley step against the erfc-based CDF;
/// absolute error is well below 1e-9. DomainError at u in {0,1}.
double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double u);

/// Exact gauge of a standard normal scalar for the supported kinds
/// (quantile, average quantiles, expectile, norm gauge, expectation).
double normal_gauge_constant(const GaugeSpec& gauge);

/// Reproducible Gaussian sample: counter-based uniforms pushed through the
/// inverse CDF and the Cholesky factor of sigma.
std::vector<Vec> mc_gaussian(const Vec& mu, const Mat& sigma, std::size_t n, std::uint64_t seed);

/// Independent quantile oracle: sorts the raw (value, weight) pairs without
/// tie merging and scans the cumulative weights.
double scan_quantile(std::vector<std::pair<double, double>> vw, double alpha, bool lower);

/// x is feasible iff <x,w> <= gauge(scalarisation at w) on every dense-grid
/// direction; the independent membership test sandwiching wulff_region.
bool brute_region_membership(const RandomSetModel& model, const GaugeSpec& gauge,
                             const std::vector<Vec>& dense_dirs, const Vec& x,
                             double tol = 1e-9);

struct AtomHrep {
  std::string label;
  std::vector<HalfSpace> constraints;
};

/// Enumerates every piecewise-constant direction assignment atoms -> lattice
/// and accumulates, per atom, the tightest half-space each assignment
/// induces. Validates the per-atom decomposition of the conditional gauge.
/// Limits: 6 scenarios, 3 atoms, 48 lattice directions (SizeLimitError).
std::vector<AtomHrep> brute_conditional_enumeration(const RandomSetModel& model,
                                                    const Partition& partition,
                                                    const GaugeSpec& gauge, int lattice_n);

}  // namespace gaugesets::oracle
