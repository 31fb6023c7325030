#include "gaugesets/grid.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gaugesets {

namespace {

double snap(double x) {
  if (std::fabs(x) < 1e-15) return 0.0;
  if (std::fabs(x - 1.0) < 1e-15) return 1.0;
  if (std::fabs(x + 1.0) < 1e-15) return -1.0;
  return x;
}

std::vector<Vec> axes(int dim) {
  std::vector<Vec> out;
  for (int i = 0; i < dim; ++i) {
    Vec e(dim, 0.0);
    e[i] = 1.0;
    out.push_back(e);
    e[i] = -1.0;
    out.push_back(e);
  }
  return out;
}

}  // namespace

std::vector<Vec> direction_grid(int dim, const GridSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("direction_grid: n must be >= 4");
  if (dim < 2) throw std::invalid_argument("direction_grid: dim must be >= 2");

  std::vector<Vec> out;
  out.reserve(spec.n);

  switch (spec.scheme) {
    case GridScheme::Uniform2D: {
      if (dim != 2) throw std::invalid_argument("direction_grid: uniform2d needs dim 2");
      for (int k = 0; k < spec.n; ++k) {
        const double a = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(spec.n);
        out.push_back({snap(std::cos(a)), snap(std::sin(a))});
      }
      break;
    }
    case GridScheme::Fibonacci: {
      if (dim != 3) throw std::invalid_argument("direction_grid: fibonacci needs dim 3");
      const int m = spec.n - 2 * dim;
      if (m < 0) throw std::invalid_argument("direction_grid: n too small for axes");
      const double golden = M_PI * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < m; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / m;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = golden * k;
        out.push_back({r * std::cos(a), r * std::sin(a), z});
      }
      for (Vec& e : axes(dim)) out.push_back(std::move(e));
      break;
    }
    case GridScheme::Random: {
      const int m = spec.n - 2 * dim;
      if (m < 0) throw std::invalid_argument("direction_grid: n too small for axes");
      std::mt19937_64 rng(spec.seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int k = 0; k < m; ++k) {
        Vec v(dim);
        double nn = 0.0;
        do {
          for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
          nn = norm(v);
        } while (nn < 1e-6);
        for (double& x : v) x /= nn;
        out.push_back(std::move(v));
      }
      for (Vec& e : axes(dim)) out.push_back(std::move(e));
      break;
    }
  }
  return out;
}

}  // namespace gaugesets
