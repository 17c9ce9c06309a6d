#include "momlab/fit.hpp"

#include <algorithm>
#include <cmath>

#include "momlab/errors.hpp"

namespace momlab {

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("fit_power_law: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [s, y] = points[i];
    if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("fit_power_law: scales must exceed 1");
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("fit_power_law: values must be positive");
    if (i > 0 && !(s > points[i - 1].first)) throw DomainError("fit_power_law: scales must increase strictly");
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [s, y] : points) {
    mx += std::log(s);
    my += std::log(y);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [s, y] : points) {
    const double dx = std::log(s) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  FitResult out;
  out.points = points;
  out.exponent = sxy / sxx;
  out.log_coefficient = my - out.exponent * mx;
  // A constant series is fitted exactly.
  out.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return out;
}

int expected_exponent(const MomParams& params, Symmetry symmetry) {
  const int k = params.k;
  const int n = params.n();
  switch (symmetry) {
    case Symmetry::unitary: return n * n - k + 1;
    case Symmetry::symplectic: return n * (2 * n + 1) - k;
    case Symmetry::orthogonal:
      if (k == 1 && params.beta == 1) return 1;
      return n * (2 * n - 1) - k;
  }
  throw DomainError("expected_exponent: unknown symmetry");
}

}  // namespace momlab
