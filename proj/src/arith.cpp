#include "momlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "momlab/errors.hpp"

namespace momlab {
namespace {

void check_shape(std::span<const Complex> z) {
  if (z.empty() || z.size() % 2 != 0) throw DomainError("arithmetic factor: z must have even, positive length");
}

void split_powers(double p, std::span<const Complex> z, std::vector<Complex>& first, std::vector<Complex>& second) {
  const std::size_t n = z.size() / 2;
  const double log_p = std::log(p);
  first.resize(n);
  second.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    first[j] = std::exp(-z[j] * log_p);
    second[j] = std::exp(z[n + j] * log_p);
  }
}

int theta_nodes_for(double ratio, std::size_t n, int floor_nodes) {
  // Aliasing of the trapezoid rule ~ C(M+n, n)·ratio^M; push it below 1e-17.
  int m = std::max(32, floor_nodes);
  while (m < (1 << 16)) {
    const double log_err = m * std::log(ratio) + static_cast<double>(n) * std::log(static_cast<double>(m) + n);
    if (log_err < std::log(1e-17)) break;
    m *= 2;
  }
  return m;
}

}  // namespace

namespace detail {

Complex local_factor_def_from_powers(double p, std::span<const Complex> first, std::span<const Complex> second,
                                     int theta_nodes) {
  const std::size_t n = first.size();
  const double inv_sqrt_p = 1.0 / std::sqrt(p);
  std::vector<Complex> a(n);
  std::vector<Complex> b(n);
  double ratio = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = inv_sqrt_p * first[j];
    b[j] = inv_sqrt_p * second[j];
    ratio = std::max({ratio, std::abs(a[j]), std::abs(b[j])});
  }
  if (ratio >= 1.0) throw DomainError("a_local_def: |p^{-1/2±z}| >= 1, geometric factor singular");
  Complex prefactor = 1.0;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m) prefactor *= 1.0 - first[l] * second[m] / p;
  const int nodes = theta_nodes_for(ratio, n, theta_nodes);
  Complex acc = 0.0;
  for (int q = 0; q < nodes; ++q) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * q / nodes);
    Complex term = 1.0;
    for (std::size_t j = 0; j < n; ++j) term *= (1.0 - e * a[j]) * (1.0 - std::conj(e) * b[j]);
    acc += 1.0 / term;
  }
  return prefactor * acc / static_cast<double>(nodes);
}

Complex local_factor_from_powers(double p, std::span<const Complex> first, std::span<const Complex> second,
                                 double denominator_floor) {
  const std::size_t n = first.size();
  if (n == 1) return 1.0;
  // Partial-fraction form if every 1 - p^{z_{n'} - z_{m'}} is safely away from zero.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(1.0 - second[a] / second[b]) < denominator_floor)
        return local_factor_def_from_powers(p, first, second, 64);
  Complex total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    Complex term = 1.0;
    for (std::size_t nn = 0; nn < n; ++nn) {
      if (nn == m) continue;
      Complex numerator = 1.0;
      for (std::size_t j = 0; j < n; ++j) numerator *= 1.0 - first[j] * second[nn] / p;
      term *= numerator / (1.0 - second[nn] / second[m]);
    }
    total += term;
  }
  return total;
}

}  // namespace detail

Complex a_local_def(std::int64_t p, std::span<const Complex> z, int theta_nodes) {
  check_shape(z);
  if (theta_nodes < 32) throw DomainError("a_local_def: theta_nodes must be >= 32");
  std::vector<Complex> first;
  std::vector<Complex> second;
  split_powers(static_cast<double>(p), z, first, second);
  return detail::local_factor_def_from_powers(static_cast<double>(p), first, second, theta_nodes);
}

Complex a_local_alt(std::int64_t p, std::span<const Complex> z) {
  check_shape(z);
  const std::size_t n = z.size() / 2;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(z[n + a] - z[n + b]) < kCoincidenceThreshold)
        throw DomainError("a_local_alt: second-half shifts nearly coincide; use a_local_def");
  std::vector<Complex> first;
  std::vector<Complex> second;
  split_powers(static_cast<double>(p), z, first, second);
  if (n == 1) return 1.0;
  Complex total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    Complex term = 1.0;
    for (std::size_t nn = 0; nn < n; ++nn) {
      if (nn == m) continue;
      Complex numerator = 1.0;
      for (std::size_t j = 0; j < n; ++j) numerator *= 1.0 - first[j] * second[nn] / static_cast<double>(p);
      const Complex denominator = 1.0 - second[nn] / second[m];
      if (std::abs(denominator) < kCoincidenceThreshold)
        throw DomainError("a_local_alt: singular partial-fraction denominator; use a_local_def");
      term *= numerator / denominator;
    }
    total += term;
  }
  return total;
}

double prime_tail_sum(std::int64_t cutoff, double s) {
  if (!(s > 1.0)) throw NonConvergence("prime_tail_sum: exponent must exceed 1");
  // π(u) <= 1.25506 u / log u, integrated by parts against u^{-s}.
  const double c = static_cast<double>(cutoff);
  return 1.25506 * s / std::log(c) * std::pow(c, 1.0 - s) / (s - 1.0);
}

EulerProductResult a_global(int k, int beta, std::span<const Complex> z, std::int64_t prime_cutoff) {
  if (k < 1 || beta < 1) throw DomainError("a_global: k and beta must be positive");
  const int n = k * beta;
  if (static_cast<int>(z.size()) != 2 * n) throw DomainError("a_global: z must have length 2kβ");
  if (prime_cutoff < 100) throw DomainError("a_global: prime cutoff must be >= 100");
  double eps = 0.0;
  for (const auto& v : z) eps = std::max(eps, std::abs(v.real()));
  if (eps >= 0.25) throw DomainError("a_global: |Re z| must stay below 1/4");
  bool coincide = false;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(z[n + a] - z[n + b]) < kCoincidenceThreshold) coincide = true;

  const auto table = primes_up_to(prime_cutoff);
  std::vector<Complex> first;
  std::vector<Complex> second;
  Complex product = 1.0;
  for (const auto p : table.primes) {
    const double pd = static_cast<double>(p);
    split_powers(pd, z, first, second);
    product *= coincide ? detail::local_factor_def_from_powers(pd, first, second, 64)
                        : detail::local_factor_from_powers(pd, first, second, kCoincidenceThreshold);
  }
  EulerProductResult out;
  out.value = product;
  out.prime_cutoff = prime_cutoff;
  out.tail_bound = n == 1 ? 0.0 : std::expm1(tail_constant(n) * prime_tail_sum(prime_cutoff, 2.0 - 2.0 * eps));
  return out;
}

EulerProductResult a_zero(int k, int beta, std::int64_t prime_cutoff) {
  if (k < 1 || beta < 1) throw DomainError("a_zero: k and beta must be positive");
  if (prime_cutoff < 100) throw DomainError("a_zero: prime cutoff must be >= 100");
  const int n = k * beta;
  std::vector<double> binom_sq(n);
  for (int m = 0; m < n; ++m) {
    const double c = std::exp(std::lgamma(n) - std::lgamma(m + 1.0) - std::lgamma(n - m));
    binom_sq[m] = std::round(c) * std::round(c);
  }
  const auto table = primes_up_to(prime_cutoff);
  double log_product = 0.0;
  for (const auto p : table.primes) {
    const double inv_p = 1.0 / static_cast<double>(p);
    double poly = 0.0;
    for (int m = n - 1; m >= 0; --m) poly = poly * inv_p + binom_sq[m];
    log_product += static_cast<double>((n - 1) * (n - 1)) * std::log1p(-inv_p) + std::log(poly);
  }
  EulerProductResult out;
  out.value = std::exp(log_product);
  out.prime_cutoff = prime_cutoff;
  out.tail_bound = n == 1 ? 0.0 : std::expm1(tail_constant(n) * prime_tail_sum(prime_cutoff, 2.0));
  return out;
}

ArithmeticFactor::ArithmeticFactor(int n, std::int64_t prime_cutoff, bool closed_form_two)
    : n_(n), cutoff_(prime_cutoff), closed_two_(closed_form_two && n == 2) {
  if (n < 1) throw DomainError("ArithmeticFactor: n must be positive");
  if (n > 1 && !closed_two_) {
    primes_ = primes_up_to(std::max<std::int64_t>(prime_cutoff, 2)).primes;
    log_primes_.reserve(primes_.size());
    for (auto p : primes_) log_primes_.push_back(std::log(static_cast<double>(p)));
  }
}

void ArithmeticFactor::fill_powers(Complex z, double sign, std::span<Complex> out) const {
  for (std::size_t i = 0; i < primes_.size(); ++i) out[i] = std::exp(sign * z * log_primes_[i]);
}

Complex ArithmeticFactor::from_powers(std::span<const Complex* const> powers) const {
  if (n_ == 1) return 1.0;
  if (closed_two_) throw DomainError("ArithmeticFactor: closed form takes z, not prime powers");
  std::vector<Complex> first(n_);
  std::vector<Complex> second(n_);
  Complex product = 1.0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    for (int j = 0; j < n_; ++j) {
      first[j] = powers[j][i];
      second[j] = powers[n_ + j][i];
    }
    product *= detail::local_factor_from_powers(static_cast<double>(primes_[i]), first, second, 1e-6);
  }
  return product;
}

Complex ArithmeticFactor::operator()(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != 2 * n_) throw DomainError("ArithmeticFactor: wrong argument length");
  if (n_ == 1) return 1.0;
  if (closed_two_) return 1.0 / zeta(2.0 + z[0] + z[1] - z[2] - z[3]);
  std::vector<std::vector<Complex>> tables(2 * n_, std::vector<Complex>(primes_.size()));
  std::vector<const Complex*> ptrs(2 * n_);
  for (int v = 0; v < 2 * n_; ++v) {
    fill_powers(z[v], v < n_ ? -1.0 : 1.0, tables[v]);
    ptrs[v] = tables[v].data();
  }
  return from_powers(ptrs);
}

}  // namespace momlab
