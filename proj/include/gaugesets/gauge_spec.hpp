#pragma once
#include <memory>
#include <string>

namespace gaugesets {

/// Declarative description of a scalar gauge function.
///
/// Leaf kinds carry their parameter; Dual/MaxExt/MinExt wrap an inner spec
/// (nesting depth capped at 8). The sublinear/superlinear/g9 flags are
/// derived per kind and drive the set-valued engine's preconditions.
class GaugeSpec {
 public:
  enum class Kind {
    QuantileLower,   // alpha in (0,1]
    QuantileUpper,   // alpha in [0,1)
    EssInf,
    EssSup,
    Expectation,
    AvgQuantileRight,  // alpha in [0,1)
    AvgQuantileLeft,   // alpha in (0,1]
    Expectile,         // tau in (0,1)
    NormGauge,         // p >= 1, a in [0,1]
    Dual,
    MaxExt,
    MinExt,
  };

  static GaugeSpec quantile_lower(double alpha);
  static GaugeSpec quantile_upper(double alpha);
  static GaugeSpec ess_inf();
  static GaugeSpec ess_sup();
  static GaugeSpec expectation();
  static GaugeSpec avg_quantile_right(double alpha);
  static GaugeSpec avg_quantile_left(double alpha);
  static GaugeSpec expectile(double tau);
  static GaugeSpec norm_gauge(double p, double a);
  static GaugeSpec dual(GaugeSpec inner);
  static GaugeSpec max_ext(int m, GaugeSpec inner);
  static GaugeSpec min_ext(int m, GaugeSpec inner);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double tau() const { return tau_; }
  double p() const { return p_; }
  double a() const { return a_; }
  int m() const { return m_; }
  const GaugeSpec& inner() const { return *inner_; }

  /// Wrapper (Dual/MaxExt/MinExt) nesting depth; leaves have depth 0.
  int depth() const;

  bool is_sublinear() const;
  bool is_superlinear() const;
  /// (g9): any positive mass at +inf forces the gauge to +inf.
  bool is_g9() const;

  /// Round-trips through the CLI gauge grammar.
  std::string str() const;

 private:
  GaugeSpec() = default;
  Kind kind_ = Kind::Expectation;
  double alpha_ = 0.0, tau_ = 0.0, p_ = 0.0, a_ = 0.0;
  int m_ = 0;
  std::shared_ptr<const GaugeSpec> inner_;
};

}  // namespace gaugesets
