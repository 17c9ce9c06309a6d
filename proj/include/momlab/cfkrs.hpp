#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "momlab/quad.hpp"
#include "momlab/specfun.hpp"
#include "momlab/types.hpp"

namespace momlab {

struct CfkrsConfig {
  // Inner contour integrals: stop when Σ|I(M) - I(M/2)| <= abs_tol + rel_tol·|I(M)|.
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  int start_nodes = 8;
  int max_refinements = 4;
  std::int64_t max_total_nodes = std::int64_t{1} << 25;
  // Primes used for A inside contour integrands when kβ >= 3.
  std::int64_t contour_prime_cutoff = 1000;
  bool closed_form_two = true;
  // Skip variable-to-pole assignments whose pole counts are unbalanced (they vanish).
  bool prune_unbalanced = true;
  // Realness check: |Im| <= imag_tol·|Re| + 10·refinement_delta.
  double imag_tol = 1e-6;
  // Outer h-quadrature of mom_p.
  double h_panel_width = 0.25;
  int h_order = 16;
  // Half-line δ-integrals (psi, gamma_coeff).
  double psi_cutoff = 200.0;
  double psi_panel_width = 1.0;
  int psi_order = 16;
};

/// A (m, n) pair of T with μ_m − μ_n = sign·(h_σ − h_τ), σ < τ (0-based).
struct TPair {
  int m = 0;
  int n = 0;
  int sigma = 0;
  int tau = 0;
  int sign = 1;
};

/// One ordering of contours around the poles: pole[j] is the shift index
/// attached to position j (0-based), μ_j = h[pole[j]].
struct LAssignment {
  std::vector<int> l;
  std::vector<int> pole;
  std::vector<double> mu;
  std::vector<std::pair<int, int>> S;  // first-group m, second-group n, μ_m = μ_n
  std::vector<TPair> T;                // μ_m ≠ μ_n
  std::int64_t weight = 0;             // c_l(k, β)

  std::vector<TPair> v_plus(int sigma, int tau) const;
  std::vector<TPair> v_minus(int sigma, int tau) const;
};

/// μ, S, T, V± and c_l for one l = (l_1, …, l_{k−1}). h has k entries.
LAssignment build_assignment(const MomParams& params, std::span<const int> l, std::span<const double> h);

/// All l in [0, 2β]^{k−1} with c_l > 0.
std::vector<LAssignment> enumerate_assignments(const MomParams& params, std::span<const double> h);

/// G(z) = A_{kβ}(z) ∏_{i ≤ kβ < j} ζ(1 + z_i − z_j), A truncated at prime_cutoff.
Complex g_func(const MomParams& params, std::span<const Complex> z, std::int64_t prime_cutoff = 1000);

struct CfkrsValue {
  double value = 0.0;
  double imag = 0.0;
  double refinement_delta = 0.0;
  std::int64_t nodes = 0;
  std::string method;
};

/// P_{k,β}(x; h) by contour integration. Poles closer than the clustering gap
/// share one circle; the remaining clusters get their own circles and the
/// integral is summed over variable-to-cluster assignments.
CfkrsValue p_direct(const MomParams& params, double x, std::span<const double> h, const CfkrsConfig& config = {});

/// (1/T)∫_0^T P_{k,β}(log(t/2π); h) dt with X = log(T/2π), computed exactly by
/// replacing e^{−xw/2} with e^{−Xw/2}/(1 − w/2), w = Σ_j (z_{kβ+j} − z_j).
CfkrsValue p_time_average(const MomParams& params, double X, std::span<const double> h,
                          const CfkrsConfig& config = {});

/// Large-x approximation of P by the sum over l of Γ₀-tensor integrals.
CfkrsValue p_decomposed(const MomParams& params, double x, std::span<const double> h,
                        const CfkrsConfig& config = {});

/// Ψ_{k,β}(v; l): the (k−1)-fold half-line δ-integral with oscillation e^{2iΣ(l_j−β)δ_j}.
HalfLineResult psi(const MomParams& params, std::span<const Complex> v, const LAssignment& assignment,
                   const CfkrsConfig& config = {});

/// Scaled leading-order kernel K(δ) (A ≡ 1, ζ(1+s) → 1/s, x = 2) with poles at
/// iδ_1, …, iδ_{k−1}, 0. δ has k − 1 entries.
CfkrsValue gamma_kernel(const MomParams& params, std::span<const double> delta, const CfkrsConfig& config = {});

struct GammaResult {
  double value = 0.0;
  double imag = 0.0;
  double uncertainty = 0.0;
  double tail = 0.0;
};

/// γ_{k,β} = 2^{−e} ∫_{ℝ^{k−1}} K(δ) dδ, e = k²β² − k + 1.
GammaResult gamma_coeff(const MomParams& params, const CfkrsConfig& config = {});

/// mom_P(T) = ∫_{[0,1]^k} (1/T)∫_0^T P dt dh. Method tag "direct-kernel".
MomentEstimate mom_p(const MomParams& params, double T, const CfkrsConfig& config = {});

/// α_{k,β}·γ_{k,β}·log(T/2π)^{k²β²−k+1}.
double leading_prediction(const MomParams& params, double T, const CfkrsConfig& config = {});

}  // namespace momlab
