#include "gaugesets/scalar_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaugesets/errors.hpp"

namespace gaugesets {

ExtReal quantile_lower(const WeightedSample& s, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("quantile_lower: alpha must lie in (0,1]");
  double cum = 0.0;
  for (std::size_t i = 0; i < s.atoms(); ++i) {
    cum += s.weight(i);
    if (cum >= alpha) return ExtReal(s.value(i));
  }
  // cumulative sum fell short of alpha by rounding; the top atom is the inf
  return s.max_value();
}

ExtReal quantile_upper(const WeightedSample& s, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("quantile_upper: alpha must lie in [0,1)");
  double cum = 0.0;
  for (std::size_t i = 0; i < s.atoms(); ++i) {
    cum += s.weight(i);
    if (cum > alpha) return ExtReal(s.value(i));
  }
  return s.max_value();
}

ExtReal ess_inf(const WeightedSample& s) { return quantile_upper(s, 0.0); }
ExtReal ess_sup(const WeightedSample& s) { return quantile_lower(s, 1.0); }

ExtReal avg_quantile_right(const WeightedSample& s, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("avg_quantile_right: alpha must lie in [0,1)");
  if (s.has_pos_inf()) return ExtReal::pos_inf();  // (g9)
  double remaining = 1.0 - alpha;
  double acc = 0.0;
  for (std::size_t k = s.atoms(); k-- > 0 && remaining > 0.0;) {
    const double take = std::min(s.weight(k), remaining);
    acc += take * s.value(k);
    remaining -= take;
  }
  return ExtReal(acc / (1.0 - alpha));
}

ExtReal avg_quantile_left(const WeightedSample& s, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("avg_quantile_left: alpha must lie in (0,1]");
  double remaining = alpha;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.atoms() && remaining > 0.0; ++i) {
    const double take = std::min(s.weight(i), remaining);
    if (take > 0.0 && std::isinf(s.value(i))) return ExtReal::pos_inf();
    acc += take * s.value(i);
    remaining -= take;
  }
  return ExtReal(acc / alpha);
}

namespace {

// Newey-Powell residual tau*E(X-z)_+ - (1-tau)*E(X-z)_-, evaluated with
// prefix sums; strictly decreasing in z on [min, max].
struct ExpectileCurve {
  std::vector<double> cw;   // prefix weights
  std::vector<double> cwv;  // prefix weight*value
  const WeightedSample* s;

  explicit ExpectileCurve(const WeightedSample& sample) : s(&sample) {
    cw.resize(sample.atoms());
    cwv.resize(sample.atoms());
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < sample.atoms(); ++i) {
      a += sample.weight(i);
      b += sample.weight(i) * sample.value(i);
      cw[i] = a;
      cwv[i] = b;
    }
  }

  double operator()(double z, double tau) const {
    // index of the last atom with value <= z
    const auto& vals = s->values();
    const auto it = std::upper_bound(vals.begin(), vals.end(), z);
    const std::size_t n = vals.size();
    const std::size_t k = static_cast<std::size_t>(it - vals.begin());  // atoms <= z
    const double w_lo = k ? cw[k - 1] : 0.0;
    const double wv_lo = k ? cwv[k - 1] : 0.0;
    const double w_hi = cw[n - 1] - w_lo;
    const double wv_hi = cwv[n - 1] - wv_lo;
    const double pos = wv_hi - z * w_hi;  // E(X-z)_+
    const double neg = z * w_lo - wv_lo;  // E(X-z)_-
    return tau * pos - (1.0 - tau) * neg;
  }
};

}  // namespace

ExtReal expectile(const WeightedSample& s, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("expectile: tau must lie in (0,1)");
  if (s.has_pos_inf()) return ExtReal::pos_inf();
  if (s.atoms() == 1) return ExtReal(s.value(0));
  if (tau == 0.5) return s.mean();  // E(X-z) = 0 has the mean as its root

  const ExpectileCurve f(s);
  double a = s.value(0), b = s.value(s.atoms() - 1);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (f(mid, tau) >= 0.0)
      a = mid;
    else
      b = mid;
    if (b - a <= 1e-12 * (1.0 + std::min(std::fabs(a), std::fabs(b)))) break;
  }
  return ExtReal(0.5 * (a + b));
}

ExtReal norm_gauge(const WeightedSample& s, double p, double a) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("norm_gauge: p must lie in [1, inf)");
  if (!(a >= 0.0 && a <= 1.0))
    throw std::invalid_argument("norm_gauge: a must lie in [0,1]");
  if (s.has_pos_inf()) return ExtReal::pos_inf();
  const double m = s.mean().value();
  double dev = 0.0;
  for (std::size_t i = 0; i < s.atoms(); ++i) {
    const double d = s.value(i) - m;
    if (d > 0.0) dev += s.weight(i) * std::pow(d, p);
  }
  return ExtReal(m + a * std::pow(dev, 1.0 / p));
}

ExtReal dual_eval(const GaugeSpec& inner, const WeightedSample& s) {
  if (s.has_pos_inf())
    throw DomainError("dual_eval: sample carries +inf mass, negation leaves the domain");
  return -eval_gauge(inner, s.negated());
}

WeightedSample iid_extension(const WeightedSample& s, int m, IidMode mode) {
  if (m < 1) throw std::invalid_argument("iid_extension: m must be >= 1");
  if (m == 1) return s;
  const std::size_t n = s.atoms();
  std::vector<double> v(s.values()), w(n);
  double cum_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cum = (i + 1 == n) ? 1.0 : cum_prev + s.weight(i);
    if (mode == IidMode::Max)
      w[i] = std::pow(cum, m) - std::pow(cum_prev, m);
    else
      w[i] = std::pow(1.0 - cum_prev, m) - std::pow(1.0 - cum, m);
    cum_prev = cum;
  }
  return WeightedSample(std::move(v), std::move(w));
}

ExtReal eval_gauge(const GaugeSpec& spec, const WeightedSample& s) {
  using K = GaugeSpec::Kind;
  switch (spec.kind()) {
    case K::QuantileLower: return quantile_lower(s, spec.alpha());
    case K::QuantileUpper: return quantile_upper(s, spec.alpha());
    case K::EssInf: return ess_inf(s);
    case K::EssSup: return ess_sup(s);
    case K::Expectation: return s.mean();
    case K::AvgQuantileRight: return avg_quantile_right(s, spec.alpha());
    case K::AvgQuantileLeft: return avg_quantile_left(s, spec.alpha());
    case K::Expectile: return expectile(s, spec.tau());
    case K::NormGauge: return norm_gauge(s, spec.p(), spec.a());
    case K::Dual: return dual_eval(spec.inner(), s);
    case K::MaxExt: return eval_gauge(spec.inner(), iid_extension(s, spec.m(), IidMode::Max));
    case K::MinExt: return eval_gauge(spec.inner(), iid_extension(s, spec.m(), IidMode::Min));
  }
  throw std::logic_error("eval_gauge: unreachable");
}

}  // namespace gaugesets
