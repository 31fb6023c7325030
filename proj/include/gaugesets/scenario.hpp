#pragma once
#include <map>
#include <string>
#include <vector>

#include "gaugesets/geometry.hpp"
#include "gaugesets/weighted_sample.hpp"

namespace gaugesets {

/// One realisation of the random closed convex set: a probability, a
/// nonempty body and the conditioning atom it belongs to.
struct Scenario {
  double prob = 0.0;
  ConvexBody body;
  std::string atom;
};

/// Finite-scenario model of a random closed convex set. Probabilities must
/// sum to one within tol (renormalised once); zero-probability scenarios are
/// dropped on construction.
class RandomSetModel {
 public:
  explicit RandomSetModel(std::vector<Scenario> scenarios, double sum_tol = 1e-9);

  int dim() const { return dim_; }
  std::size_t size() const { return scenarios_.size(); }
  const Scenario& scenario(std::size_t i) const { return scenarios_[i]; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }

  bool all_cones() const;

  /// Contiguous coordinate matrix, filled when every scenario is a singleton
  /// point; lets scalarisations stream large Monte-Carlo models.
  bool packed() const { return !packed_points_.empty(); }
  const std::vector<double>& packed_points() const { return packed_points_; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  int dim_ = 0;
  std::vector<Scenario> scenarios_;
  std::vector<double> packed_points_;  // size * dim, row major
  std::vector<double> probs_;
};

/// Finitely generated conditioning: atoms partition the scenario index set,
/// with conditional weights renormalised within each atom.
class Partition {
 public:
  struct Atom {
    std::string label;
    std::vector<std::size_t> indices;
    std::vector<double> cond_weights;
    double prob = 0.0;
  };

  static Partition from_model(const RandomSetModel& model);
  static Partition trivial(const RandomSetModel& model);

  std::size_t atom_count() const { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  const Atom& atom(const std::string& label) const;
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_atom(const std::string& label) const;

 private:
  std::vector<Atom> atoms_;
};

/// Scalarisation h(X, w) as a weighted sample; +inf support values are kept.
WeightedSample scalarize(const RandomSetModel& model, const Vec& w);

/// Scalarisation restricted to one atom under its conditional weights: the
/// discrete regular conditional distribution of h(X,w) given the partition.
WeightedSample conditional_scalarize(const RandomSetModel& model, const Partition& partition,
                                     const std::string& atom, const Vec& w);

struct PointIngest {
  RandomSetModel model;
  Partition partition;
  bool weights_renormalized = false;
};

/// Singleton-scenario model from point rows; the partition comes from the
/// atom labels (trivial when absent). Weights not summing to one are
/// renormalised with a warning on stderr.
PointIngest from_point_samples(const std::vector<Vec>& rows,
                               const std::vector<double>& weights = {},
                               const std::vector<std::string>& atoms = {});

/// P{w lies in the barrier cone of X}: total probability of scenarios whose
/// support value at w is finite.
double barrier_probability(const RandomSetModel& model, const Vec& w);

/// Equal-frequency bin labels for conditioning on a continuous column.
std::vector<std::string> equal_frequency_bins(const std::vector<double>& values, int bins);

}  // namespace gaugesets
