#pragma once

#include <cstdint>
#include <vector>

#include "momlab/types.hpp"

namespace momlab {

/// Eigenphases of one Haar-random matrix. Unitary: N phases in [0, 2π).
/// SO(2N), Sp(2N): N representatives in [0, π]; each stands for the pair ±φ.
struct HaarSample {
  Symmetry group = Symmetry::unitary;
  int N = 0;
  std::vector<double> phases;
};

inline constexpr int kMaxMatrixRank = 512;

/// Haar sample number `index` of the stream keyed by `seed`. The generator is
/// seeded from (seed, index) alone, so samples do not depend on scheduling.
HaarSample sample_haar(Symmetry group, int N, std::uint64_t seed, std::uint64_t index = 0);

/// |P_N(A, θ)|^{2β} = ∏_j (2 − 2cos(φ_j − θ))^β over all eigenphases.
double char_poly_abs2beta(const HaarSample& sample, double theta, int beta);

/// (1/2π)∫_0^{2π} |P_N(A, θ)|^{2β} dθ by the trapezoid rule with `nodes` points
/// (0 selects 32·N). Throws NonConvergence if halving the nodes moves the value
/// by more than 1e-8 relative.
double window_moment_rmt(const HaarSample& sample, int beta, int nodes = 0);

/// Monte-Carlo mean of window_moment_rmt^k over n_samples Haar samples, with
/// standard error. Method tag "monte-carlo".
MomentEstimate mom_group(Symmetry group, int N, const MomParams& params, std::int64_t n_samples,
                         std::uint64_t seed);

/// Deterministic mom_G(N)(k,β) for k ∈ {1,2}: the Haar average of a product over
/// eigenphases is a Toeplitz (unitary) or Toeplitz±Hankel (SO(2N), Sp(2N))
/// determinant of Fourier coefficients, and the θ-window averages are
/// trapezoid sums exact for the trigonometric-polynomial integrands. Method tag
/// "heine-determinant"; quadrature_error is the node-halving difference.
MomentEstimate mom_group_exact(Symmetry group, int N, const MomParams& params);

/// Keating–Snaith ∏_{j=1}^N Γ(j)Γ(j+2β)/Γ(j+β)².
double ks_exact(int N, int beta);

}  // namespace momlab
