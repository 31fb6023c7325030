#pragma once
#include "gaugesets/ext_real.hpp"
#include "gaugesets/gauge_spec.hpp"
#include "gaugesets/weighted_sample.hpp"

namespace gaugesets {

/// Lower alpha-quantile inf{t : F(t) >= alpha}, alpha in (0,1].
/// Returns +inf when all mass at or above level alpha sits at +inf.
ExtReal quantile_lower(const WeightedSample& s, double alpha);

/// Upper alpha-quantile inf{t : F(t) > alpha}, alpha in [0,1).
/// alpha = 0 yields the essential infimum.
ExtReal quantile_upper(const WeightedSample& s, double alpha);

ExtReal ess_inf(const WeightedSample& s);
ExtReal ess_sup(const WeightedSample& s);

/// Right-average quantile (expected shortfall of the upper tail):
/// (1-alpha)^{-1} * integral of q_t over t in [alpha, 1]. Any +inf mass
/// forces +inf. alpha = 0 gives the expectation.
ExtReal avg_quantile_right(const WeightedSample& s, double alpha);

/// Left-average quantile: alpha^{-1} * integral of q_t over t in [0, alpha].
/// Finite whenever the +inf mass fits strictly above level alpha.
ExtReal avg_quantile_left(const WeightedSample& s, double alpha);

/// Unique root z of tau*E(X-z)_+ = (1-tau)*E(X-z)_-. Solved by bisection on
/// [min, max] to relative tolerance 1e-12; tau = 1/2 returns the mean.
/// Any +inf mass forces +inf.
ExtReal expectile(const WeightedSample& s, double tau);

/// E X + a * (E (X - E X)_+^p)^{1/p}; +inf on any +inf mass.
ExtReal norm_gauge(const WeightedSample& s, double p, double a);

/// Dual gauge -g(-X). Throws DomainError when s carries +inf mass.
ExtReal dual_eval(const GaugeSpec& inner, const WeightedSample& s);

enum class IidMode { Max, Min };

/// Exact pushforward distribution of the max/min of m i.i.d. copies of s,
/// obtained by differencing F^m (resp. 1-(1-F)^m) at the support points.
WeightedSample iid_extension(const WeightedSample& s, int m, IidMode mode);

/// Dispatch over every GaugeSpec kind; MaxExt/MinExt pre-compose
/// iid_extension with the inner gauge.
ExtReal eval_gauge(const GaugeSpec& spec, const WeightedSample& s);

}  // namespace gaugesets
