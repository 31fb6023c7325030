#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugesets/cone2.hpp"
#include "gaugesets/gauge_spec.hpp"
#include "gaugesets/grid.hpp"
#include "gaugesets/region.hpp"
#include "gaugesets/scenario.hpp"

namespace gaugesets {

enum class ExactPath { None, Cone, TranslatedCone, Gaussian };

/// Declarative request for a region computation.
struct RegionRequest {
  GaugeSpec gauge = GaugeSpec::expectation();
  GridSpec grid;
  std::optional<Partition> partition;
  ExactPath exact_path = ExactPath::None;
};

struct AtomRegion {
  std::string label;
  Region region = Region::whole_space(2);
  std::size_t directions_used = 0;
  std::size_t dropped_infinite = 0;
};

struct ConditionalRegionResult {
  std::vector<AtomRegion> atoms;
  const AtomRegion& atom(const std::string& label) const;
};

/// Outer Wulff-shape approximation of the unconditional set-valued gauge:
/// one half-space per grid direction at the gauge of the scalarisation,
/// +inf offsets dropped, -inf collapsing to the empty region. Exact at grid
/// directions for sublinear gauges with finite support data.
Region wulff_region(const RandomSetModel& model, const GaugeSpec& gauge,
                    const std::vector<Vec>& dirs);
Region wulff_region(const RandomSetModel& model, const GaugeSpec& gauge, const GridSpec& grid);

/// Per-atom Wulff regions of the conditional scalarisations; reduces to the
/// unconditional region on the trivial partition.
ConditionalRegionResult conditional_regions(const RandomSetModel& model,
                                            const Partition& partition, const GaugeSpec& gauge,
                                            const std::vector<Vec>& dirs);

/// Routes a RegionRequest (validates the exact-path hint against the model).
ConditionalRegionResult compute_regions(const RandomSetModel& model, const RegionRequest& request);

/// Per-atom weighted Minkowski average of the scenario bodies; satisfies
/// h(E X, w) = E h(X, w) exactly.
std::vector<std::pair<std::string, ConvexBody>> selection_expectation(const RandomSetModel& model,
                                                                      const Partition& partition);

/// Per-atom intersection of the scenario bodies (largest measurable subset).
std::vector<std::pair<std::string, ConvexBody>> conditional_core(const RandomSetModel& model,
                                                                 const Partition& partition);

/// Per-atom convex hull of the union (smallest measurable superset); its
/// support function is the atomwise essential supremum of the scalarisation.
std::vector<std::pair<std::string, ConvexBody>> conditional_hull(const RandomSetModel& model,
                                                                 const Partition& partition);

/// (m(C°))° for a 2-D random cone model under any gauge sensitive to
/// infinity; the origin body when the polar intersection collapses to {0}.
ConvexBody cone_gauge_g9(const RandomSetModel& cone_model);

/// Closed arc of directions [start, end] counterclockwise; length 0 is a ray.
struct AngularArc {
  Vec2 start, end;
  double start_angle = 0.0;
  double length = 0.0;
};

/// Union of closed arcs on the circle (possibly the full circle or empty).
class AngularSet {
 public:
  static AngularSet full();
  static AngularSet none();
  static AngularSet of(std::vector<AngularArc> arcs);
  bool is_full() const { return full_; }
  bool is_none() const { return !full_ && arcs_.empty(); }
  const std::vector<AngularArc>& arcs() const { return arcs_; }
  bool contains_dir(Vec2 v, double tol = 1e-10) const;

 private:
  bool full_ = false;
  std::vector<AngularArc> arcs_;
};

/// Exact circle sweep of the coverage function P{w in C°} for a 2-D cone
/// model: the angular set where coverage >= alpha (the Vorob'ev quantile of
/// the polar as a direction set).
AngularSet vorobev_quantile_arcs(const RandomSetModel& cone_model, double alpha);

/// Convex components of the Vorob'ev quantile as cone bodies.
std::vector<ConvexBody> vorobev_quantile(const RandomSetModel& cone_model, double alpha);

/// Grid-sampled Vorob'ev quantile for dimension >= 3: the subset of
/// directions whose coverage probability reaches alpha.
std::vector<Vec> vorobev_grid_subset(const RandomSetModel& cone_model, double alpha,
                                     const std::vector<Vec>& dirs);

/// (Q_alpha(C°))°, the quantile-type cone gauge (also valid for left-average
/// quantiles). Computed literally as the intersection of the per-arc polars.
ConvexBody cone_gauge_quantile(const RandomSetModel& cone_model, double alpha);

/// G(X + cone) for a singleton model under a sublinear gauge: the singleton
/// region over grid directions inside the polar cone, Minkowski-summed with
/// the cone. Falls back to the Wulff region of the summed model when the
/// gauge is not sublinear.
Region translated_cone_gauge(const RandomSetModel& point_model, const ConvexBody& cone,
                             const GaugeSpec& gauge, const std::vector<Vec>& dirs);

/// Depth-trimmed region presets over singleton models.
Region depth_region_tukey(const RandomSetModel& point_model, double alpha,
                          const std::vector<Vec>& dirs);
Region depth_region_zonoid(const RandomSetModel& point_model, double alpha,
                           const std::vector<Vec>& dirs);
Region depth_region_expectile(const RandomSetModel& point_model, double tau,
                              const std::vector<Vec>& dirs);
Region depth_region_norm(const RandomSetModel& point_model, double p, double a,
                         const std::vector<Vec>& dirs);

/// Translated ellipsoid mu + g1 * Sigma^{1/2} B as a support evaluator,
/// where g1 is the gauge of a standard normal scalar.
class GaussianRegion {
 public:
  GaussianRegion(Vec mu, Mat sigma, double g1);
  double support(const Vec& u) const;
  Region to_region(const std::vector<Vec>& dirs) const;

 private:
  Vec mu_;
  Mat sigma_;
  double g1_;
};

struct CollapseResult {
  std::string label;
  bool empty = false;
  Vec point;
};

/// For a superlinear gauge on a singleton model, the region degenerates per
/// atom to the componentwise conditional gauge point, or to EMPTY when some
/// direction has negative gauge-width.
std::vector<CollapseResult> singleton_collapse_check(const RandomSetModel& point_model,
                                                     const Partition& partition,
                                                     const GaugeSpec& gauge,
                                                     const std::vector<Vec>& dirs,
                                                     double tol = 1e-9);

}  // namespace gaugesets
