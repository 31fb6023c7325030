#include "gaugesets/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "gaugesets/errors.hpp"
#include "gaugesets/scalar_gauge.hpp"
#include "gaugesets/simplex.hpp"

namespace gaugesets {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kAngTol = 1e-10;

double ang_of2(Vec2 v) {
  double a = std::atan2(v[1], v[0]);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

struct WulffAccum {
  std::vector<HalfSpace> constraints;
  std::size_t dropped = 0;
  bool minus_inf = false;
};

// Per-direction evaluations are independent; large grids fan out over a few
// worker threads, with results folded back in grid order.
template <typename SampleFn>
WulffAccum accumulate_wulff(const std::vector<Vec>& dirs, const GaugeSpec& gauge,
                            SampleFn&& sample_at) {
  const std::size_t n = dirs.size();
  std::vector<ExtReal> offsets(n, ExtReal(0.0));

  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers = std::min<unsigned>(hw == 0 ? 1 : hw, 16);
  if (n >= 64 && workers > 1) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
      try {
        for (std::size_t k = next.fetch_add(1); k < n && !failed.load();
             k = next.fetch_add(1))
          offsets[k] = eval_gauge(gauge, sample_at(dirs[k]));
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  } else {
    for (std::size_t k = 0; k < n; ++k)
      offsets[k] = eval_gauge(gauge, sample_at(dirs[k]));
  }

  WulffAccum acc;
  for (std::size_t k = 0; k < n; ++k) {
    if (offsets[k].is_pos_inf()) {
      ++acc.dropped;
      continue;
    }
    if (offsets[k].is_neg_inf()) {
      acc.minus_inf = true;
      return acc;
    }
    acc.constraints.push_back({dirs[k], offsets[k]});
  }
  return acc;
}

ConvexBody prune_body(ConvexBody body) {
  if (body.dim() != 2 || body.is_empty()) return body;
  std::vector<Vec2> pts;
  for (const Vec& v : body.vertices()) pts.push_back(to_vec2(v));
  const std::vector<Vec2> hull = hull2d(pts);
  std::vector<Vec2> gens;
  for (const Vec& r : body.rays()) gens.push_back(to_vec2(r));
  const Cone2 rec = Cone2::from_generators(gens);
  std::vector<Vec> verts, rays;
  for (const Vec2& v : hull) verts.push_back(from_vec2(v));
  for (const Vec2& g : rec.generators()) rays.push_back(from_vec2(g));
  ConvexBody out = ConvexBody::polytope(std::move(verts), std::move(rays));
  if (body.is_cone()) out.mark_cone();
  return out;
}

ConvexBody scaled_body(const ConvexBody& body, double c) {
  std::vector<Vec> verts;
  for (const Vec& v : body.vertices()) verts.push_back(scale(c, v));
  ConvexBody out = ConvexBody::polytope(std::move(verts), body.rays());
  if (body.is_cone()) out.mark_cone();
  return out;
}

void require_singletons(const RandomSetModel& model, const char* what) {
  for (const Scenario& s : model.scenarios())
    if (s.body.vertices().size() != 1 || !s.body.rays().empty())
      throw PreconditionError(std::string(what) + ": singleton scenarios required");
}

Cone2 scenario_polar(const Scenario& s) {
  std::vector<Vec2> gens;
  for (const Vec& r : s.body.rays()) gens.push_back(to_vec2(r));
  return Cone2::from_generators(gens).polar();
}

void require_cones(const RandomSetModel& model, const char* what) {
  if (!model.all_cones())
    throw PreconditionError(std::string(what) + ": all scenario bodies must be cones");
}

}  // namespace

const AtomRegion& ConditionalRegionResult::atom(const std::string& label) const {
  for (const AtomRegion& a : atoms)
    if (a.label == label) return a;
  throw UnknownAtomError("ConditionalRegionResult: unknown atom '" + label + "'");
}

Region wulff_region(const RandomSetModel& model, const GaugeSpec& gauge,
                    const std::vector<Vec>& dirs) {
  WulffAccum acc = accumulate_wulff(
      dirs, gauge, [&](const Vec& w) { return scalarize(model, w); });
  if (acc.minus_inf) return Region::empty_region(model.dim());
  return region_from_constraints(model.dim(), std::move(acc.constraints));
}

Region wulff_region(const RandomSetModel& model, const GaugeSpec& gauge, const GridSpec& grid) {
  return wulff_region(model, gauge, direction_grid(model.dim(), grid));
}

ConditionalRegionResult conditional_regions(const RandomSetModel& model,
                                            const Partition& partition, const GaugeSpec& gauge,
                                            const std::vector<Vec>& dirs) {
  ConditionalRegionResult out;
  for (const Partition::Atom& atom : partition.atoms()) {
    WulffAccum acc = accumulate_wulff(dirs, gauge, [&](const Vec& w) {
      return conditional_scalarize(model, partition, atom.label, w);
    });
    AtomRegion ar;
    ar.label = atom.label;
    ar.dropped_infinite = acc.dropped;
    ar.directions_used = dirs.size() - acc.dropped;
    ar.region = acc.minus_inf
                    ? Region::empty_region(model.dim())
                    : region_from_constraints(model.dim(), std::move(acc.constraints));
    out.atoms.push_back(std::move(ar));
  }
  return out;
}

ConditionalRegionResult compute_regions(const RandomSetModel& model,
                                        const RegionRequest& request) {
  if (request.grid.n < 4)
    throw std::invalid_argument("compute_regions: grid size must be >= 4");
  const Partition partition =
      request.partition ? *request.partition : Partition::trivial(model);

  switch (request.exact_path) {
    case ExactPath::None: {
      const std::vector<Vec> dirs = direction_grid(model.dim(), request.grid);
      return conditional_regions(model, partition, request.gauge, dirs);
    }
    case ExactPath::Cone: {
      require_cones(model, "compute_regions");
      if (!request.gauge.is_g9())
        throw std::invalid_argument(
            "compute_regions: cone exact path requires a gauge sensitive to infinity");
      ConditionalRegionResult out;
      for (const Partition::Atom& atom : partition.atoms()) {
        Cone2 m = Cone2::plane();
        for (std::size_t i : atom.indices)
          m = m.intersect(scenario_polar(model.scenario(i)));
        const ConvexBody body =
            m.is_origin() ? ConvexBody::cone(2, {}) : cone2_to_body(m.polar());
        AtomRegion ar;
        ar.label = atom.label;
        ar.region = region_from_body_2d(body);
        ar.directions_used = 0;
        out.atoms.push_back(std::move(ar));
      }
      return out;
    }
    case ExactPath::TranslatedCone:
    case ExactPath::Gaussian:
      throw std::invalid_argument(
          "compute_regions: this exact path needs its dedicated entry point "
          "(translated_cone_gauge / GaussianRegion)");
  }
  throw std::logic_error("compute_regions: unreachable");
}

std::vector<std::pair<std::string, ConvexBody>> selection_expectation(
    const RandomSetModel& model, const Partition& partition) {
  std::vector<std::pair<std::string, ConvexBody>> out;
  for (const Partition::Atom& atom : partition.atoms()) {
    ConvexBody acc = scaled_body(model.scenario(atom.indices[0]).body, atom.cond_weights[0]);
    for (std::size_t k = 1; k < atom.indices.size(); ++k) {
      acc = minkowski_sum(acc, scaled_body(model.scenario(atom.indices[k]).body,
                                           atom.cond_weights[k]));
      if (model.dim() == 2) acc = prune_body(std::move(acc));
    }
    out.emplace_back(atom.label, std::move(acc));
  }
  return out;
}

std::vector<std::pair<std::string, ConvexBody>> conditional_core(const RandomSetModel& model,
                                                                 const Partition& partition) {
  std::vector<std::pair<std::string, ConvexBody>> out;
  for (const Partition::Atom& atom : partition.atoms()) {
    std::vector<HalfSpace> constraints;
    for (std::size_t i : atom.indices) {
      ConvexBody body = model.scenario(i).body;
      ensure_hrep(body);
      constraints.insert(constraints.end(), body.hrep()->begin(), body.hrep()->end());
    }
    if (model.dim() == 2) {
      out.emplace_back(atom.label, chain_to_body(intersect_halfspaces_2d(constraints)));
    } else {
      const auto feasible = hrep_feasible_point(constraints, model.dim());
      if (!feasible) {
        out.emplace_back(atom.label, ConvexBody::empty(model.dim()));
      } else {
        ConvexBody body = ConvexBody::point(*feasible);
        body.set_hrep(std::move(constraints));
        body.mark_hrep_only();
        out.emplace_back(atom.label, std::move(body));
      }
    }
  }
  return out;
}

std::vector<std::pair<std::string, ConvexBody>> conditional_hull(const RandomSetModel& model,
                                                                 const Partition& partition) {
  std::vector<std::pair<std::string, ConvexBody>> out;
  for (const Partition::Atom& atom : partition.atoms()) {
    std::vector<Vec> verts, rays;
    for (std::size_t i : atom.indices) {
      const ConvexBody& b = model.scenario(i).body;
      verts.insert(verts.end(), b.vertices().begin(), b.vertices().end());
      rays.insert(rays.end(), b.rays().begin(), b.rays().end());
    }
    ConvexBody hull = ConvexBody::polytope(std::move(verts), std::move(rays));
    if (model.dim() == 2) hull = prune_body(std::move(hull));
    out.emplace_back(atom.label, std::move(hull));
  }
  return out;
}

ConvexBody cone_gauge_g9(const RandomSetModel& cone_model) {
  require_cones(cone_model, "cone_gauge_g9");
  if (cone_model.dim() != 2)
    throw PreconditionError("cone_gauge_g9: exact path requires dimension 2");
  Cone2 m = Cone2::plane();
  for (const Scenario& s : cone_model.scenarios()) m = m.intersect(scenario_polar(s));
  if (m.is_origin()) return ConvexBody::cone(2, {});
  return cone2_to_body(m.polar());
}

AngularSet AngularSet::full() {
  AngularSet s;
  s.full_ = true;
  return s;
}

AngularSet AngularSet::none() { return AngularSet(); }

AngularSet AngularSet::of(std::vector<AngularArc> arcs) {
  AngularSet s;
  s.arcs_ = std::move(arcs);
  return s;
}

bool AngularSet::contains_dir(Vec2 v, double tol) const {
  if (full_) return true;
  const double t = ang_of2(v);
  for (const AngularArc& a : arcs_) {
    double d = t - a.start_angle;
    while (d < 0.0) d += kTwoPi;
    while (d >= kTwoPi) d -= kTwoPi;
    if (d <= a.length + tol || d >= kTwoPi - tol) return true;
  }
  return false;
}

AngularSet vorobev_quantile_arcs(const RandomSetModel& cone_model, double alpha) {
  require_cones(cone_model, "vorobev_quantile");
  if (cone_model.dim() != 2)
    throw PreconditionError("vorobev_quantile: arc sweep requires dimension 2");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("vorobev_quantile: alpha must lie in (0,1]");

  std::vector<Cone2> polars;
  std::vector<double> probs;
  for (const Scenario& s : cone_model.scenarios()) {
    polars.push_back(scenario_polar(s));
    probs.push_back(s.prob);
  }

  // event angles with their source vectors
  std::vector<std::pair<double, Vec2>> events;
  for (const Cone2& c : polars) {
    switch (c.kind()) {
      case Cone2::Kind::Origin:
      case Cone2::Kind::Plane:
        break;
      case Cone2::Kind::Ray:
        events.push_back({ang_of2(c.start()), c.start()});
        break;
      case Cone2::Kind::Line:
        events.push_back({ang_of2(c.start()), c.start()});
        events.push_back({ang_of2(c.end()), c.end()});
        break;
      default:
        events.push_back({ang_of2(c.start()), c.start()});
        events.push_back({ang_of2(c.end()), c.end()});
        break;
    }
  }
  const auto coverage_at = [&](Vec2 v) {
    double p = 0.0;
    for (std::size_t i = 0; i < polars.size(); ++i)
      if (polars[i].contains_dir(v)) p += probs[i];
    return p;
  };

  if (events.empty()) {
    // every scenario polar is the plane or the origin
    return coverage_at({1.0, 0.0}) >= alpha - 1e-12 ? AngularSet::full() : AngularSet::none();
  }

  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<double, Vec2>> ev;
  for (const auto& e : events)
    if (ev.empty() || e.first - ev.back().first > kAngTol) ev.push_back(e);
  if (ev.size() > 1 && ev.front().first + kTwoPi - ev.back().first <= kAngTol) ev.pop_back();

  const std::size_t m = ev.size();
  // pieces alternate: point e_0, open interval (e_0,e_1), point e_1, ...
  std::vector<bool> inc(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    inc[2 * i] = coverage_at(ev[i].second) >= alpha - 1e-12;
    const double a0 = ev[i].first;
    const double a1 = (i + 1 < m) ? ev[i + 1].first : ev[0].first + kTwoPi;
    const double mid = 0.5 * (a0 + a1);
    inc[2 * i + 1] = coverage_at({std::cos(mid), std::sin(mid)}) >= alpha - 1e-12;
  }

  if (std::all_of(inc.begin(), inc.end(), [](bool b) { return b; })) return AngularSet::full();
  if (std::none_of(inc.begin(), inc.end(), [](bool b) { return b; })) return AngularSet::none();

  // runs of included pieces always start and end on point pieces (coverage
  // is upper semicontinuous over closed sectors)
  std::size_t anchor = 0;
  while (inc[anchor]) ++anchor;
  std::vector<AngularArc> arcs;
  const std::size_t total = 2 * m;
  for (std::size_t step = 0; step < total;) {
    std::size_t idx = (anchor + step) % total;
    if (!inc[idx]) {
      ++step;
      continue;
    }
    const std::size_t run_start = idx;
    std::size_t run_len = 0;
    while (run_len < total && inc[(run_start + run_len) % total]) ++run_len;
    step += run_len;

    const std::size_t first_pt = run_start % 2 == 0 ? run_start : (run_start + 1) % total;
    const std::size_t last_idx = (run_start + run_len - 1) % total;
    const std::size_t last_pt = last_idx % 2 == 0 ? last_idx : (last_idx + total - 1) % total;
    AngularArc arc;
    arc.start = ev[first_pt / 2].second;
    arc.end = ev[last_pt / 2].second;
    arc.start_angle = ev[first_pt / 2].first;
    double len = ev[last_pt / 2].first - arc.start_angle;
    while (len < 0.0) len += kTwoPi;
    arc.length = len;
    arcs.push_back(arc);
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const AngularArc& a, const AngularArc& b) { return a.start_angle < b.start_angle; });
  return AngularSet::of(std::move(arcs));
}

std::vector<ConvexBody> vorobev_quantile(const RandomSetModel& cone_model, double alpha) {
  const AngularSet set = vorobev_quantile_arcs(cone_model, alpha);
  std::vector<ConvexBody> out;
  if (set.is_full()) {
    out.push_back(cone2_to_body(Cone2::plane()));
    return out;
  }
  if (set.is_none()) {
    out.push_back(ConvexBody::cone(2, {}));
    return out;
  }
  for (const AngularArc& a : set.arcs()) {
    const Cone2 hull = a.length <= kAngTol ? Cone2::from_generators({a.start})
                                           : Cone2::arc(a.start, a.end);
    out.push_back(cone2_to_body(hull));
  }
  return out;
}

std::vector<Vec> vorobev_grid_subset(const RandomSetModel& cone_model, double alpha,
                                     const std::vector<Vec>& dirs) {
  require_cones(cone_model, "vorobev_grid_subset");
  std::vector<Vec> kept;
  for (const Vec& w : dirs)
    if (barrier_probability(cone_model, w) >= alpha - 1e-12) kept.push_back(w);
  return kept;
}

ConvexBody cone_gauge_quantile(const RandomSetModel& cone_model, double alpha) {
  const AngularSet set = vorobev_quantile_arcs(cone_model, alpha);
  if (set.is_full()) return ConvexBody::cone(2, {});
  if (set.is_none()) return ConvexBody::cone(2, {});  // see decisions ledger
  Cone2 polar = Cone2::plane();
  for (const AngularArc& a : set.arcs()) {
    const Cone2 hull = a.length <= kAngTol ? Cone2::from_generators({a.start})
                                           : Cone2::arc(a.start, a.end);
    polar = polar.intersect(hull.polar());
  }
  if (polar.is_origin()) return ConvexBody::cone(2, {});
  return cone2_to_body(polar);
}

Region translated_cone_gauge(const RandomSetModel& point_model, const ConvexBody& cone,
                             const GaugeSpec& gauge, const std::vector<Vec>& dirs) {
  require_singletons(point_model, "translated_cone_gauge");
  if (!cone.is_cone())
    throw PreconditionError("translated_cone_gauge: deterministic cone body required");

  if (!gauge.is_sublinear()) {
    // fallback: Wulff region of the summed model
    std::vector<Scenario> scen;
    for (const Scenario& s : point_model.scenarios())
      scen.push_back({s.prob, minkowski_sum(s.body, cone), s.atom});
    return wulff_region(RandomSetModel(std::move(scen)), gauge, dirs);
  }

  std::vector<Vec> kept;
  for (const Vec& w : dirs)
    if (support(cone, w).finite()) kept.push_back(w);
  if (point_model.dim() == 2) {
    // exact polar boundary directions sharpen the recession cone
    std::vector<Vec2> gens;
    for (const Vec& r : cone.rays()) gens.push_back(to_vec2(r));
    for (const Vec2& g : Cone2::from_generators(gens).polar().generators())
      kept.push_back(from_vec2(g));
  }

  Region base = wulff_region(point_model, gauge, kept);
  if (base.is_empty() || point_model.dim() != 2) return base;
  if (base.is_whole_space()) return base;
  const ConvexBody summed = minkowski_sum(chain_to_body(base), cone);
  return region_from_body_2d(prune_body(summed));
}

Region depth_region_tukey(const RandomSetModel& point_model, double alpha,
                          const std::vector<Vec>& dirs) {
  require_singletons(point_model, "depth_region");
  return wulff_region(point_model, GaugeSpec::quantile_lower(alpha), dirs);
}

Region depth_region_zonoid(const RandomSetModel& point_model, double alpha,
                           const std::vector<Vec>& dirs) {
  require_singletons(point_model, "depth_region");
  return wulff_region(point_model, GaugeSpec::avg_quantile_right(alpha), dirs);
}

Region depth_region_expectile(const RandomSetModel& point_model, double tau,
                              const std::vector<Vec>& dirs) {
  require_singletons(point_model, "depth_region");
  return wulff_region(point_model, GaugeSpec::expectile(tau), dirs);
}

Region depth_region_norm(const RandomSetModel& point_model, double p, double a,
                         const std::vector<Vec>& dirs) {
  require_singletons(point_model, "depth_region");
  return wulff_region(point_model, GaugeSpec::norm_gauge(p, a), dirs);
}

GaussianRegion::GaussianRegion(Vec mu, Mat sigma, double g1)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), g1_(g1) {
  cholesky(sigma_);  // SPD or throw
}

double GaussianRegion::support(const Vec& u) const {
  return dot(mu_, u) + g1_ * std::sqrt(dot(u, mat_vec(sigma_, u)));
}

Region GaussianRegion::to_region(const std::vector<Vec>& dirs) const {
  std::vector<HalfSpace> hs;
  for (const Vec& w : dirs) hs.push_back({w, ExtReal(support(w))});
  return region_from_constraints(static_cast<int>(mu_.size()), std::move(hs));
}

std::vector<CollapseResult> singleton_collapse_check(const RandomSetModel& point_model,
                                                     const Partition& partition,
                                                     const GaugeSpec& gauge,
                                                     const std::vector<Vec>& dirs, double tol) {
  require_singletons(point_model, "singleton_collapse_check");
  if (!gauge.is_superlinear())
    throw PreconditionError("singleton_collapse_check: superlinear gauge required");

  std::vector<CollapseResult> out;
  const int d = point_model.dim();
  for (const Partition::Atom& atom : partition.atoms()) {
    CollapseResult res;
    res.label = atom.label;
    double min_width = 0.0;
    for (const Vec& w : dirs) {
      const ExtReal tp = eval_gauge(gauge, conditional_scalarize(point_model, partition,
                                                                 atom.label, w));
      const ExtReal tm = eval_gauge(gauge, conditional_scalarize(point_model, partition,
                                                                 atom.label, negate(w)));
      if (!tp.finite() || !tm.finite()) continue;  // no width bound there
      const double width = tp.value() + tm.value();
      min_width = std::min(min_width, width);
      if (width > tol)
        throw std::logic_error("singleton_collapse_check: positive width under a superlinear gauge");
    }
    if (min_width < -tol) {
      res.empty = true;
    } else {
      res.point.resize(d);
      for (int j = 0; j < d; ++j) {
        Vec e(d, 0.0);
        e[j] = 1.0;
        res.point[j] = eval_gauge(gauge, conditional_scalarize(point_model, partition,
                                                               atom.label, e))
                           .value();
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace gaugesets
