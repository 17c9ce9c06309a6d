#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "momlab/errors.hpp"
#include "momlab/specfun.hpp"

using namespace momlab;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("complex_gamma values") {
  CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-12);
  CHECK(std::abs(complex_gamma(0.5) - std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel(complex_gamma({3.3, 2.1}), {-0.907040604066263319, 0.937476764532419752}) < 1e-13);
  CHECK(rel(complex_gamma({-2.5, 0.5}), {-0.333875203522432337, -0.206457307963608415}) < 1e-12);
  CHECK_THROWS_AS(complex_gamma(0.0), PoleError);
  CHECK_THROWS_AS(complex_gamma(-3.0), PoleError);
}

TEST_CASE("complex_gamma recurrence on random strip points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(1.0, 10.0);
  std::uniform_real_distribution<double> im(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z{re(rng), im(rng)};
    worst = std::max(worst, rel(complex_gamma(z + 1.0), z * complex_gamma(z)));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("barnes_g values and recurrence") {
  CHECK(barnes_g(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(barnes_g(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(barnes_g(3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(barnes_g(4.0) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(barnes_g(5.0) == doctest::Approx(12.0).epsilon(1e-11));
  CHECK(barnes_g(1.5) == doctest::Approx(1.06922264926641295).epsilon(1e-11));
  CHECK(barnes_g(7.5) == doctest::Approx(733746.383952146369).epsilon(1e-11));
  CHECK(barnes_g(20.0) == doctest::Approx(4.30619256499771538e120).epsilon(1e-10));
  CHECK_THROWS_AS(barnes_g(0.5), DomainError);
  for (double z = 1.0; z <= 15.0; z += 0.125) {
    const double lhs = barnes_g(z + 1.0);
    const double rhs = std::tgamma(z) * barnes_g(z);
    CHECK(std::abs(lhs / rhs - 1.0) < 1e-9);
  }
}

TEST_CASE("fk_coefficient") {
  CHECK(fk_coefficient(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fk_coefficient(2) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(fk_coefficient(3) == doctest::Approx(4.0 / 34560.0).epsilon(1e-11));
  CHECK(6.0 / (std::numbers::pi * std::numbers::pi) * fk_coefficient(2) ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("zeta on the critical line") {
  CHECK(std::abs(zeta_critical(0.0) - Complex(-1.4603545088095868, 0.0)) < 1e-12);
  CHECK(std::abs(zeta_critical(14.134725141734693)) < 1e-6);
  CHECK(std::abs(zeta_critical(100.0) - Complex(2.69261988568132409, -0.0203860296025981618)) < 1e-10);
  CHECK(std::abs(zeta_critical(5000.0) - Complex(0.406842713635432559, -0.693764159198085102)) < 1e-9);
  CHECK(std::abs(zeta_critical(40000.0) - Complex(3.26966619582050948, 5.92999696213917340)) < 1e-9);
  CHECK_THROWS_AS(zeta_critical(6e4), RangeError);
  for (double t : {3.0, 27.5, 431.0, 2999.9}) {
    CHECK(std::abs(zeta_critical(t) - std::conj(zeta_critical(-t))) < 1e-9);
    CHECK(std::abs(std::abs(zeta_critical(t)) - std::abs(zeta_critical(-t))) < 1e-9);
  }
}

TEST_CASE("general zeta") {
  CHECK(rel(zeta({1.5, 0.0}), 2.61237534868548834) < 1e-13);
  CHECK(rel(zeta({1.3, 0.2}), {2.90651243501095836, -1.52449438239218886}) < 1e-12);
  CHECK(rel(zeta({0.7, -3.0}), {0.571251872435164746, 0.0923228739071497881}) < 1e-12);
  CHECK_THROWS_AS(zeta(1.0), PoleError);
}

TEST_CASE("zeta_near_one") {
  const Complex s{1e-9, 0.0};
  CHECK(std::abs(zeta_near_one(s) - 1.0 / s - kEulerGamma) < 1e-8);
  CHECK(std::abs(zeta_near_one(0.5) - 2.61237534868548834) < 1e-10);
  const Complex w{0.0, 0.1};
  CHECK(std::abs(zeta_near_one(std::conj(w)) - std::conj(zeta_near_one(w))) < 1e-14);
  CHECK_THROWS_AS(zeta_near_one(0.0), PoleError);
  CHECK_THROWS_AS(zeta_near_one(0.8), DomainError);
  CHECK(stieltjes(0) == doctest::Approx(kEulerGamma).epsilon(1e-15));
  for (double y = -0.2; y <= 0.2001; y += 0.01) {
    const Complex t{0.3, y};
    CHECK(std::abs(zeta_near_one(t) - zeta(1.0 + t)) < 1e-8);
  }
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10).primes == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(2).primes == std::vector<std::int64_t>{2});
  const auto big = primes_up_to(1'000'000);
  CHECK(big.primes.size() == 78498);
  CHECK(std::is_sorted(big.primes.begin(), big.primes.end()));
  CHECK_THROWS(primes_up_to(1));
  CHECK_THROWS(primes_up_to(200'000'000));
}
