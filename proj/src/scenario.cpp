#include "gaugesets/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "gaugesets/errors.hpp"

namespace gaugesets {

RandomSetModel::RandomSetModel(std::vector<Scenario> scenarios, double sum_tol) {
  if (scenarios.empty())
    throw std::invalid_argument("RandomSetModel: at least one scenario required");
  double sum = 0.0;
  for (const Scenario& s : scenarios) {
    if (std::isnan(s.prob) || s.prob < 0.0)
      throw std::invalid_argument("RandomSetModel: negative probability");
    if (s.body.is_empty())
      throw std::invalid_argument("RandomSetModel: scenario bodies must be nonempty");
    sum += s.prob;
  }
  if (std::fabs(sum - 1.0) > sum_tol)
    throw std::invalid_argument("RandomSetModel: probabilities must sum to 1");
  dim_ = scenarios.front().body.dim();
  for (Scenario& s : scenarios) {
    if (s.body.dim() != dim_)
      throw std::invalid_argument("RandomSetModel: mixed dimensions");
    if (s.prob == 0.0) continue;
    s.prob /= sum;
    scenarios_.push_back(std::move(s));
  }
  if (scenarios_.empty())
    throw std::invalid_argument("RandomSetModel: all probabilities are zero");

  const bool all_points = std::all_of(
      scenarios_.begin(), scenarios_.end(), [](const Scenario& s) {
        return s.body.vertices().size() == 1 && s.body.rays().empty();
      });
  if (all_points) {
    packed_points_.reserve(scenarios_.size() * dim_);
    probs_.reserve(scenarios_.size());
    for (const Scenario& s : scenarios_) {
      const Vec& v = s.body.vertices()[0];
      packed_points_.insert(packed_points_.end(), v.begin(), v.end());
      probs_.push_back(s.prob);
    }
  }
}

bool RandomSetModel::all_cones() const {
  return std::all_of(scenarios_.begin(), scenarios_.end(),
                     [](const Scenario& s) { return s.body.is_cone(); });
}

Partition Partition::from_model(const RandomSetModel& model) {
  Partition p;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const std::string& label = model.scenario(i).atom;
    auto it = std::find_if(p.atoms_.begin(), p.atoms_.end(),
                           [&](const Atom& a) { return a.label == label; });
    if (it == p.atoms_.end()) {
      p.atoms_.push_back(Atom{label, {}, {}, 0.0});
      it = p.atoms_.end() - 1;
    }
    it->indices.push_back(i);
    it->prob += model.scenario(i).prob;
  }
  for (Atom& a : p.atoms_) {
    a.cond_weights.reserve(a.indices.size());
    for (std::size_t i : a.indices) a.cond_weights.push_back(model.scenario(i).prob / a.prob);
  }
  return p;
}

Partition Partition::trivial(const RandomSetModel& model) {
  Partition p;
  Atom a;
  a.label = "";
  a.prob = 1.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    a.indices.push_back(i);
    a.cond_weights.push_back(model.scenario(i).prob);
  }
  p.atoms_.push_back(std::move(a));
  return p;
}

const Partition::Atom& Partition::atom(const std::string& label) const {
  for (const Atom& a : atoms_)
    if (a.label == label) return a;
  throw UnknownAtomError("Partition: unknown atom '" + label + "'");
}

bool Partition::has_atom(const std::string& label) const {
  return std::any_of(atoms_.begin(), atoms_.end(),
                     [&](const Atom& a) { return a.label == label; });
}

WeightedSample scalarize(const RandomSetModel& model, const Vec& w) {
  if (model.packed()) {
    const std::size_t n = model.size();
    const std::size_t d = static_cast<std::size_t>(model.dim());
    const double* pts = model.packed_points().data();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += pts[i * d + j] * w[j];
      values[i] = s;
    }
    return WeightedSample(std::move(values), model.probs());
  }
  std::vector<double> values, weights;
  values.reserve(model.size());
  weights.reserve(model.size());
  for (const Scenario& s : model.scenarios()) {
    values.push_back(support(s.body, w).value());
    weights.push_back(s.prob);
  }
  return WeightedSample(std::move(values), std::move(weights));
}

WeightedSample conditional_scalarize(const RandomSetModel& model, const Partition& partition,
                                     const std::string& atom, const Vec& w) {
  const Partition::Atom& a = partition.atom(atom);
  std::vector<double> values, weights;
  values.reserve(a.indices.size());
  for (std::size_t k = 0; k < a.indices.size(); ++k) {
    values.push_back(support(model.scenario(a.indices[k]).body, w).value());
    weights.push_back(a.cond_weights[k]);
  }
  return WeightedSample(std::move(values), std::move(weights));
}

PointIngest from_point_samples(const std::vector<Vec>& rows, const std::vector<double>& weights,
                               const std::vector<std::string>& atoms) {
  if (rows.empty()) throw FormatError("from_point_samples: no rows");
  const std::size_t d = rows.front().size();
  for (const Vec& r : rows)
    if (r.size() != d) throw FormatError("from_point_samples: ragged rows");
  if (!weights.empty() && weights.size() != rows.size())
    throw FormatError("from_point_samples: weight column length mismatch");
  if (!atoms.empty() && atoms.size() != rows.size())
    throw FormatError("from_point_samples: atom column length mismatch");

  bool renormalized = false;
  std::vector<double> w;
  if (weights.empty()) {
    w.assign(rows.size(), 1.0 / static_cast<double>(rows.size()));
  } else {
    double sum = 0.0;
    for (double x : weights) {
      if (std::isnan(x) || x < 0.0) throw FormatError("from_point_samples: bad weight");
      sum += x;
    }
    if (sum <= 0.0) throw FormatError("from_point_samples: weights sum to zero");
    if (std::fabs(sum - 1.0) > 1e-9) {
      renormalized = true;
      std::fprintf(stderr, "warning: weights sum to %.9g, renormalizing\n", sum);
    }
    w.reserve(weights.size());
    for (double x : weights) w.push_back(x / sum);
  }

  std::vector<Scenario> scen;
  scen.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Scenario s;
    s.prob = w[i];
    s.body = ConvexBody::point(rows[i]);
    s.atom = atoms.empty() ? std::string() : atoms[i];
    scen.push_back(std::move(s));
  }
  RandomSetModel model(std::move(scen));
  Partition part = atoms.empty() ? Partition::trivial(model) : Partition::from_model(model);
  return PointIngest{std::move(model), std::move(part), renormalized};
}

double barrier_probability(const RandomSetModel& model, const Vec& w) {
  double p = 0.0;
  for (const Scenario& s : model.scenarios())
    if (support(s.body, w).finite()) p += s.prob;
  return p;
}

std::vector<std::string> equal_frequency_bins(const std::vector<double>& values, int bins) {
  if (bins < 1) throw std::invalid_argument("equal_frequency_bins: bins must be >= 1");
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::string> labels(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    const int b = std::min<int>(bins - 1, static_cast<int>(rank * bins / n));
    char buf[24];
    std::snprintf(buf, sizeof buf, "bin%02d", b + 1);
    labels[order[rank]] = buf;
  }
  return labels;
}

}  // namespace gaugesets
