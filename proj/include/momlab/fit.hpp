#pragma once

#include <utility>
#include <vector>

#include "momlab/types.hpp"

namespace momlab {

struct FitResult {
  double exponent = 0.0;
  double log_coefficient = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;
};

/// Unweighted least squares of log y on log s. Needs at least 3 points with
/// strictly increasing scales s > 1 and values y > 0.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Growth exponent of mom over N (or log T): unitary k²β²−k+1, symplectic
/// kβ(2kβ+1)−k, orthogonal kβ(2kβ−1)−k except (1,1), which grows like 2(N+1).
int expected_exponent(const MomParams& params, Symmetry symmetry);

}  // namespace momlab
