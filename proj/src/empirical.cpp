#include "momlab/empirical.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "momlab/errors.hpp"
#include "momlab/parallel.hpp"
#include "momlab/quad.hpp"

namespace momlab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(splitmix64(seed ^ splitmix64(index)) >> 11) * 0x1.0p-53;
}

double panel_width(double t) { return std::min(0.125, std::numbers::pi / std::log(2.0 + t)); }

double zeta_power(double h, int beta, double t_max) { return std::pow(std::norm(zeta_critical(h, t_max)), beta); }

double integrate(double a, double b, int beta, int order, double t_max) {
  return gl_panel_integral([&](double h) { return zeta_power(h, beta, t_max); }, a, b, panel_width(a), order);
}

void check_inputs(int beta, const EmpiricalConfig& config) {
  if (beta < 1) throw DomainError("empirical: beta must be >= 1");
  if (!(config.window > 0.0)) throw DomainError("empirical: window must be positive");
}

}  // namespace

double window_moment(double t, int beta, const EmpiricalConfig& config) {
  check_inputs(beta, config);
  if (t < 0.0) throw DomainError("window_moment: t must be >= 0");
  if (t + config.window > config.t_max) throw RangeError("window_moment: window exceeds t_max");
  const double a = t;
  const double b = t + config.window;
  if (!config.check_refinement) return integrate(a, b, beta, config.order, config.t_max);
  const double coarse = integrate(a, b, beta, config.order, config.t_max);
  const double fine = integrate(a, b, beta, 2 * config.order, config.t_max);
  if (std::abs(fine - coarse) > config.refinement_tol * std::abs(fine))
    throw NonConvergence("window_moment: order doubling moved the value beyond tolerance");
  return fine;
}

MomentEstimate mom_zeta(const MomParams& params, double T, std::int64_t n_samples, std::uint64_t seed,
                        const EmpiricalConfig& config) {
  if (params.k < 1) throw DomainError("mom_zeta: k must be >= 1");
  check_inputs(params.beta, config);
  if (n_samples < 100) throw DomainError("mom_zeta: n_samples must be >= 100");
  if (!(T > 0.0)) throw DomainError("mom_zeta: T must be positive");
  if (T + config.window > config.t_max) throw RangeError("mom_zeta: T exceeds t_max − window");
  const auto n = static_cast<std::size_t>(n_samples);
  const double width = T / static_cast<double>(n);
  std::vector<double> y(n);
  parallel_for(n, [&](std::size_t j) {
    const double t = width * (static_cast<double>(j) + uniform01(seed, j));
    y[j] = std::pow(window_moment(t, params.beta, config), params.k);
  });
  std::vector<double> sq;
  for (std::size_t j = 0; j + 1 < n; j += 2) sq.push_back((y[j] - y[j + 1]) * (y[j] - y[j + 1]));
  if (n % 2 == 1) sq.push_back(0.5 * (y[n - 1] - y[n - 2]) * (y[n - 1] - y[n - 2]));
  MomentEstimate out;
  out.value = pairwise_sum(y) / static_cast<double>(n);
  out.std_error = std::sqrt(pairwise_sum(sq)) / static_cast<double>(n);
  out.samples = n_samples;
  out.method = "stratified-monte-carlo";
  out.seed = seed;
  out.params = params;
  out.scale = T;
  return out;
}

double m_beta_empirical(int beta, double T, const EmpiricalConfig& config) {
  check_inputs(beta, config);
  if (!(T > 0.0)) throw DomainError("m_beta_empirical: T must be positive");
  if (T > config.t_max) throw RangeError("m_beta_empirical: T exceeds t_max");
  const auto units = static_cast<std::size_t>(std::ceil(T));
  std::vector<double> parts(units);
  parallel_for(units, [&](std::size_t j) {
    const double a = static_cast<double>(j);
    const double b = std::min(T, a + 1.0);
    parts[j] = b > a ? integrate(a, b, beta, config.order, config.t_max) : 0.0;
  });
  return pairwise_sum(parts) / T;
}

}  // namespace momlab
