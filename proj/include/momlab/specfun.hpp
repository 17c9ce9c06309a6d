#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace momlab {

using Complex = std::complex<double>;

/// Default ceiling on t for critical-line evaluations.
inline constexpr double kDefaultZetaHeight = 5.0e4;
/// Default ceiling for the prime sieve.
inline constexpr std::int64_t kDefaultSieveMax = 100'000'000;
/// Number of embedded Stieltjes constants.
inline constexpr int kStieltjesCount = 24;

/// Γ(z) via a 15-term Lanczos approximation (g = 607/128) with reflection for
/// Re z < 1/2. Throws PoleError at non-positive integers.
Complex complex_gamma(Complex z);

/// log Γ(z) for real z > 0.
double log_gamma(double z);

/// Barnes G(z) for real 1 <= z <= 20. The asymptotic series for log G is
/// evaluated at a base point >= 21 and recursed down with G(z) = G(z+1)/Γ(z).
double barnes_g(double z);
double log_barnes_g(double z);

/// G²(1+β)/G(1+2β), the leading coefficient of the unitary 2β-th moment.
double fk_coefficient(int beta);

/// ζ(1/2 + it) by Euler–Maclaurin, main sum of ⌈1+|t|⌉ terms and 8 Bernoulli
/// corrections; absolute error well below 1e-9 for |t| <= t_max.
Complex zeta_critical(double t, double t_max = kDefaultZetaHeight);

/// ζ(s) for general complex s != 1 by Euler–Maclaurin. Intended for moderate
/// |s| (the contour integrands stay within |s| <~ 10).
Complex zeta(Complex s);

/// ζ(1+s) from the Laurent series 1/s + Σ (-1)^j 𝔰_j s^j / j! for 0 < |s| <= 1/2.
Complex zeta_near_one(Complex s);

/// ζ(1+s) choosing the Laurent series on |s| <= 1/2 and Euler–Maclaurin elsewhere.
Complex zeta_one_plus(Complex s);

/// Stieltjes constant 𝔰_j, 0 <= j < kStieltjesCount.
double stieltjes(int j);

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

struct PrimeTable {
  std::int64_t limit = 0;
  std::vector<std::int64_t> primes;
};

/// Sieve of Eratosthenes. Throws DomainError for limit < 2 and RangeError above max_limit.
PrimeTable primes_up_to(std::int64_t limit, std::int64_t max_limit = kDefaultSieveMax);

}  // namespace momlab
