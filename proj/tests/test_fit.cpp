#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "momlab/errors.hpp"
#include "momlab/fit.hpp"

using namespace momlab;

TEST_CASE("exact power law") {
  const auto f = fit_power_law({{10, 1e3}, {20, 8e3}, {40, 6.4e4}});
  CHECK(f.exponent == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.log_coefficient == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(f.points.size() == 3);
}

TEST_CASE("noisy quadratic") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<std::pair<double, double>> pts;
  for (double s : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) pts.emplace_back(s, 5.0 * s * s * (1.0 + noise(rng)));
  const auto f = fit_power_law(pts);
  CHECK(std::abs(f.exponent - 2.0) < 0.1);
  CHECK(std::exp(f.log_coefficient) == doctest::Approx(5.0).epsilon(0.1));
  CHECK(f.r_squared > 0.99);
  CHECK(f.r_squared <= 1.0);
}

TEST_CASE("constant series") {
  const auto f = fit_power_law({{2, 7}, {3, 7}, {5, 7}});
  CHECK(f.exponent == doctest::Approx(0.0).scale(1.0));
  CHECK(f.log_coefficient == doctest::Approx(std::log(7.0)));
}

TEST_CASE("scale invariance and reparametrization") {
  const std::vector<std::pair<double, double>> pts{{3, 2.0}, {5, 9.0}, {11, 30.0}, {17, 41.0}};
  const auto base = fit_power_law(pts);
  std::vector<std::pair<double, double>> scaled;
  std::vector<std::pair<double, double>> squared;
  for (const auto& [s, y] : pts) {
    scaled.emplace_back(s, 13.0 * y);
    squared.emplace_back(s * s, y);
  }
  const auto a = fit_power_law(scaled);
  CHECK(std::abs(a.exponent - base.exponent) < 1e-12);
  CHECK(a.log_coefficient == doctest::Approx(base.log_coefficient + std::log(13.0)));
  CHECK(std::abs(fit_power_law(squared).exponent - base.exponent / 2.0) < 1e-12);
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(fit_power_law({{2, 1}, {3, 1}}), DomainError);
  CHECK_THROWS_AS(fit_power_law({{2, 1}, {2, 1}, {3, 1}}), DomainError);
  CHECK_THROWS_AS(fit_power_law({{0.5, 1}, {2, 1}, {3, 1}}), DomainError);
  CHECK_THROWS_AS(fit_power_law({{2, 1}, {3, -1}, {4, 1}}), DomainError);
}

TEST_CASE("expected exponents") {
  CHECK(expected_exponent({2, 1}, Symmetry::unitary) == 3);
  CHECK(expected_exponent({1, 2}, Symmetry::unitary) == 4);
  CHECK(expected_exponent({1, 1}, Symmetry::symplectic) == 2);
  CHECK(expected_exponent({2, 1}, Symmetry::symplectic) == 8);
  CHECK(expected_exponent({1, 1}, Symmetry::orthogonal) == 1);
  CHECK(expected_exponent({2, 1}, Symmetry::orthogonal) == 4);
  CHECK(expected_exponent({1, 2}, Symmetry::orthogonal) == 5);
}
