#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "momlab/specfun.hpp"

namespace momlab {

/// A truncated Euler product together with a bound on the omitted tail
/// (relative: |full/truncated - 1| <= tail_bound under the standing assumptions).
struct EulerProductResult {
  Complex value{};
  std::int64_t prime_cutoff = 0;
  double tail_bound = 0.0;
};

inline constexpr std::int64_t kDefaultPrimeCutoff = 100'000;
/// Minimum separation of the second-half shifts for the partial-fraction local factor.
inline constexpr double kCoincidenceThreshold = 1e-4;

/// Local factor at p from the θ-integral definition: the double product
/// ∏(1 - p^{z_m - z_l - 1}) times ∫_0^1 ∏(1 - e(θ)p^{-1/2-z_j})^{-1}(1 - e(-θ)p^{-1/2+z_{n+j}})^{-1} dθ.
/// z has length 2n. The θ-integral uses the trapezoid rule with at least theta_nodes
/// points, raised as needed so the aliasing error stays below 1e-17.
Complex a_local_def(std::int64_t p, std::span<const Complex> z, int theta_nodes = 64);

/// Local factor at p from the partial-fraction form
/// Σ_m ∏_{n≠m} [∏_j (1 - p^{-1-z_j+z_{n'}})] / (1 - p^{z_{n'} - z_{m'}}).
/// Throws DomainError when two second-half shifts are closer than kCoincidenceThreshold.
Complex a_local_alt(std::int64_t p, std::span<const Complex> z);

/// ∏_{p <= cutoff} of the local factor (partial-fraction form when safe,
/// θ-integral form otherwise) with tail bound exp(C·Σ_{p>cutoff} p^{-2+2ε}) - 1,
/// C = (kβ)² + 2kβ and ε = max|Re z_j|.
EulerProductResult a_global(int k, int beta, std::span<const Complex> z,
                            std::int64_t prime_cutoff = kDefaultPrimeCutoff);

/// α_{k,β} = A_{kβ}(0,…,0) = ∏_p (1-1/p)^{(kβ-1)²} Σ_m C(kβ-1, m)² p^{-m}.
EulerProductResult a_zero(int k, int beta, std::int64_t prime_cutoff = kDefaultPrimeCutoff);

/// Rigorous upper bound for Σ_{p > cutoff} p^{-s}, s > 1.
double prime_tail_sum(std::int64_t cutoff, double s);

/// Tail constant C(n) = n² + 2n used in the Euler-product tail bound.
inline double tail_constant(int n) { return static_cast<double>(n) * n + 2.0 * n; }

/// Evaluates A_n(z) repeatedly for many z of the same length 2n. n = 1 gives 1;
/// n = 2 uses the exact identity A_2(z) = 1/ζ(2 + z_1 + z_2 - z_3 - z_4) unless
/// `closed_form_two` is off; otherwise ∏_{p <= cutoff} of local factors. Powers
/// p^{∓z} can be supplied precomputed per variable, which is how the contour
/// integrands use it.
class ArithmeticFactor {
 public:
  ArithmeticFactor(int n, std::int64_t prime_cutoff, bool closed_form_two = true);

  /// True when operator() needs no prime powers.
  bool closed_form() const { return n_ == 1 || closed_two_; }

  int n() const { return n_; }
  std::int64_t prime_cutoff() const { return cutoff_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }
  const std::vector<double>& log_primes() const { return log_primes_; }

  /// Direct evaluation at z (length 2n).
  Complex operator()(std::span<const Complex> z) const;

  /// Evaluation from per-variable power tables: powers[v][i] = p_i^{-z_v} for
  /// v < n and p_i^{+z_v} for v >= n.
  Complex from_powers(std::span<const Complex* const> powers) const;

  /// Fills out[i] = p_i^{sign·z}.
  void fill_powers(Complex z, double sign, std::span<Complex> out) const;

 private:
  int n_;
  std::int64_t cutoff_;
  bool closed_two_;
  std::vector<std::int64_t> primes_;
  std::vector<double> log_primes_;
};

namespace detail {
/// Local factor from p^{-z_j} (first half) and p^{z_{n+j}} (second half).
Complex local_factor_from_powers(double p, std::span<const Complex> first, std::span<const Complex> second,
                                 double denominator_floor);
/// θ-integral form from the same powers; exposed for cross-checks.
Complex local_factor_def_from_powers(double p, std::span<const Complex> first, std::span<const Complex> second,
                                     int theta_nodes);
}  // namespace detail

}  // namespace momlab
