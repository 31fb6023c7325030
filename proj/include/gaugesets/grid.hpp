#pragma once
#include <cstdint>
#include <vector>

#include "gaugesets/linalg.hpp"

namespace gaugesets {

enum class GridScheme { Uniform2D, Fibonacci, Random };

struct GridSpec {
  int n = 720;
  GridScheme scheme = GridScheme::Uniform2D;
  std::uint64_t seed = 0;
};

/// n unit directions. Uniform2D is the exact angular lattice 2*pi*k/n
/// (axis-snapped, so +/-e_i are exact whenever 4 | n); Fibonacci covers the
/// 2-sphere; Random is reproducible from the seed. The non-lattice schemes
/// always append the 2d signed axis vectors.
std::vector<Vec> direction_grid(int dim, const GridSpec& spec);

}  // namespace gaugesets
