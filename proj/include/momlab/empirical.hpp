#pragma once

#include <cstdint>

#include "momlab/specfun.hpp"
#include "momlab/types.hpp"

namespace momlab {

struct EmpiricalConfig {
  double t_max = kDefaultZetaHeight;
  double window = 1.0;  // length of the inner h-window
  int order = 16;       // Gauss–Legendre order per panel
  double refinement_tol = 1e-6;
  bool check_refinement = true;  // window_moment: compare against doubled order
};

/// ∫_t^{t+w} |ζ(1/2+ih)|^{2β} dh over the window w = config.window, on GL panels
/// of width min(1/8, π/log(2+t)). With check_refinement the result is the
/// doubled-order value and NonConvergence is raised if the two orders differ by
/// more than refinement_tol relative.
double window_moment(double t, int beta, const EmpiricalConfig& config = {});

/// Stratified Monte Carlo of window_moment(t)^k over t ∈ [0, T]: n_samples equal
/// strata, one uniform draw each, keyed by (seed, stratum). The standard error
/// pairs adjacent strata.
MomentEstimate mom_zeta(const MomParams& params, double T, std::int64_t n_samples, std::uint64_t seed,
                        const EmpiricalConfig& config = {});

/// (1/T)∫_0^T |ζ(1/2+it)|^{2β} dt by panel quadrature. check_refinement is
/// ignored here; compare two orders explicitly when needed.
double m_beta_empirical(int beta, double T, const EmpiricalConfig& config = {});

}  // namespace momlab
