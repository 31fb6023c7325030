#pragma once
#include <cstddef>
#include <vector>

#include "gaugesets/ext_real.hpp"

namespace gaugesets {

/// A finite discrete distribution on (-inf, +inf].
///
/// Values may include +inf (mass escaping to infinity) but never -inf.
/// Construction canonicalises: weights are validated (nonnegative, summing to
/// one within 1e-9) and renormalised exactly once, values are sorted
/// ascending, exact ties are merged and zero-weight atoms dropped.
class WeightedSample {
 public:
  WeightedSample(std::vector<double> values, std::vector<double> weights);

  static WeightedSample equal_weights(std::vector<double> values);
  static WeightedSample delta(double value) { return WeightedSample({value}, {1.0}); }

  std::size_t atoms() const { return values_.size(); }
  double value(std::size_t i) const { return values_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

  bool has_pos_inf() const { return inf_mass_ > 0.0; }
  double pos_inf_mass() const { return inf_mass_; }

  /// Least and greatest support points (the latter may be +inf).
  ExtReal min_value() const { return ExtReal(values_.front()); }
  ExtReal max_value() const { return ExtReal(values_.back()); }

  /// Expectation; +inf when any mass sits at +inf.
  ExtReal mean() const;

  /// Distribution of -X. Throws DomainError when +inf mass is present,
  /// since -inf values are outside the domain.
  WeightedSample negated() const;

  /// Distribution of c*X for c > 0.
  WeightedSample scaled(double c) const;

  /// Distribution of X + c for finite c.
  WeightedSample shifted(double c) const;

 private:
  std::vector<double> values_;   // sorted ascending, +inf last
  std::vector<double> weights_;  // positive, sum to 1
  double inf_mass_ = 0.0;
};

/// Distribution of X + Y for independent X, Y (full product coupling).
WeightedSample independent_sum(const WeightedSample& x, const WeightedSample& y);

}  // namespace gaugesets
