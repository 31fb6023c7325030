#include "gaugesets/weighted_sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "gaugesets/errors.hpp"

namespace gaugesets {

namespace {
constexpr double kWeightSumTol = 1e-9;

// LSD radix sort over the order-preserving bit image of a double (NaN-free
// input). Pays off on the large Monte-Carlo samples the engine feeds in.
void radix_sort_doubles(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::uint64_t> keys(n), tmp(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t u;
    std::memcpy(&u, &v[i], 8);
    keys[i] = (u & 0x8000000000000000ull) ? ~u : (u | 0x8000000000000000ull);
  }
  std::size_t count[1 << 16];
  for (int pass = 0; pass < 4; ++pass) {
    const int shift = 16 * pass;
    std::memset(count, 0, sizeof count);
    for (std::size_t i = 0; i < n; ++i) ++count[(keys[i] >> shift) & 0xFFFF];
    std::size_t pos = 0;
    for (std::size_t b = 0; b < (1 << 16); ++b) {
      const std::size_t c = count[b];
      count[b] = pos;
      pos += c;
    }
    for (std::size_t i = 0; i < n; ++i) tmp[count[(keys[i] >> shift) & 0xFFFF]++] = keys[i];
    keys.swap(tmp);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t u = keys[i];
    u = (u & 0x8000000000000000ull) ? (u & 0x7FFFFFFFFFFFFFFFull) : ~u;
    std::memcpy(&v[i], &u, 8);
  }
}
}  // namespace

WeightedSample::WeightedSample(std::vector<double> values, std::vector<double> weights) {
  if (values.empty()) throw std::invalid_argument("WeightedSample: empty support");
  if (values.size() != weights.size())
    throw std::invalid_argument("WeightedSample: values/weights length mismatch");

  double sum = 0.0;
  bool all_equal = true;
  const double w0 = weights[0];
  for (double w : weights) {
    if (std::isnan(w) || w < -1e-12)
      throw std::invalid_argument("WeightedSample: negative weight");
    sum += w;
    all_equal = all_equal && w == w0;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("WeightedSample: weights must sum to 1 within 1e-9");
  for (double v : values) {
    if (std::isnan(v)) throw std::invalid_argument("WeightedSample: NaN value");
    if (std::isinf(v) && v < 0)
      throw DomainError("WeightedSample: -inf values are outside the domain");
  }

  if (all_equal && w0 > 0.0) {
    // uniform weights: sort the bare values and merge runs
    if (values.size() >= 4096)
      radix_sort_doubles(values);
    else
      std::sort(values.begin(), values.end());
    const double w = w0 / sum;
    values_.reserve(values.size());
    weights_.reserve(values.size());
    for (double v : values) {
      if (!values_.empty() && values_.back() == v)
        weights_.back() += w;
      else {
        values_.push_back(v);
        weights_.push_back(w);
      }
    }
  } else {
    std::vector<std::pair<double, double>> vw(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) vw[i] = {values[i], weights[i]};
    std::sort(vw.begin(), vw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    values_.reserve(vw.size());
    weights_.reserve(vw.size());
    for (const auto& [v, w_raw] : vw) {
      const double w = w_raw / sum;  // renormalise once, here only
      if (w <= 0.0) continue;
      if (!values_.empty() && values_.back() == v) {
        weights_.back() += w;
      } else {
        values_.push_back(v);
        weights_.push_back(w);
      }
    }
    if (values_.empty()) {
      // all weights vanished numerically; keep the largest original atom
      values_.push_back(vw.back().first);
      weights_.push_back(1.0);
    }
  }
  if (std::isinf(values_.back())) inf_mass_ = weights_.back();
}

WeightedSample WeightedSample::equal_weights(std::vector<double> values) {
  std::vector<double> w(values.size(), 1.0 / static_cast<double>(values.size()));
  return WeightedSample(std::move(values), std::move(w));
}

ExtReal WeightedSample::mean() const {
  if (has_pos_inf()) return ExtReal::pos_inf();
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) m += weights_[i] * values_[i];
  return ExtReal(m);
}

WeightedSample WeightedSample::negated() const {
  if (has_pos_inf())
    throw DomainError("WeightedSample::negated: +inf mass would map to -inf");
  std::vector<double> v(values_.size()), w(weights_);
  for (std::size_t i = 0; i < values_.size(); ++i) v[i] = -values_[i];
  return WeightedSample(std::move(v), std::move(w));
}

WeightedSample WeightedSample::scaled(double c) const {
  if (!(c > 0)) throw std::invalid_argument("WeightedSample::scaled: factor must be > 0");
  std::vector<double> v(values_.size()), w(weights_);
  for (std::size_t i = 0; i < values_.size(); ++i) v[i] = c * values_[i];
  return WeightedSample(std::move(v), std::move(w));
}

WeightedSample WeightedSample::shifted(double c) const {
  if (!std::isfinite(c)) throw std::invalid_argument("WeightedSample::shifted: shift must be finite");
  std::vector<double> v(values_.size()), w(weights_);
  for (std::size_t i = 0; i < values_.size(); ++i) v[i] = values_[i] + c;
  return WeightedSample(std::move(v), std::move(w));
}

WeightedSample independent_sum(const WeightedSample& x, const WeightedSample& y) {
  std::vector<double> v, w;
  v.reserve(x.atoms() * y.atoms());
  w.reserve(x.atoms() * y.atoms());
  for (std::size_t i = 0; i < x.atoms(); ++i)
    for (std::size_t j = 0; j < y.atoms(); ++j) {
      v.push_back(x.value(i) + y.value(j));
      w.push_back(x.weight(i) * y.weight(j));
    }
  return WeightedSample(std::move(v), std::move(w));
}

}  // namespace gaugesets
