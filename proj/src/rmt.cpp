#include "momlab/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "momlab/errors.hpp"
#include "momlab/parallel.hpp"

namespace momlab {
namespace {

using Cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> unitary_phases(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMat z(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z(i, j) = Cd(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < N; ++j) {
    const Cd d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  Eigen::ComplexEigenSolver<CMat> es(q, false);
  std::vector<double> phases;
  for (int j = 0; j < N; ++j) {
    double a = std::arg(es.eigenvalues()(j));
    if (a < 0.0) a += kTwoPi;
    phases.push_back(a);
  }
  return phases;
}

// Fold 2N eigenvalues e^{±iφ} into N representatives φ ∈ [0, π].
std::vector<double> fold_pairs(const Eigen::VectorXcd& eig) {
  std::vector<double> mags;
  for (int j = 0; j < eig.size(); ++j) mags.push_back(std::abs(std::arg(eig(j))));
  std::sort(mags.begin(), mags.end());
  std::vector<double> reps;
  for (std::size_t j = 0; j + 1 < mags.size(); j += 2) {
    if (std::abs(mags[j] - mags[j + 1]) > 1e-8) throw ConsistencyError("eigenphases do not pair as ±φ");
    reps.push_back(0.5 * (mags[j] + mags[j + 1]));
  }
  return reps;
}

std::vector<double> orthogonal_phases(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int d = 2 * N;
  RMat z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = g(rng);
  Eigen::HouseholderQR<RMat> qr(z);
  RMat q = qr.householderQ();
  const RMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.row(0).swap(q.row(1));
  Eigen::EigenSolver<RMat> es(q, false);
  return fold_pairs(es.eigenvalues());
}

// Quaternion a + b·j stored as two complex numbers.
struct Quat {
  Cd a, b;
};
Quat qmul(const Quat& x, const Quat& y) {
  return {x.a * y.a - x.b * std::conj(y.b), x.a * y.b + x.b * std::conj(y.a)};
}
Quat qconj(const Quat& x) { return {std::conj(x.a), -x.b}; }

std::vector<double> symplectic_phases(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<Quat>> cols(N, std::vector<Quat>(N));
  for (auto& c : cols)
    for (auto& q : c) q = {Cd(g(rng), g(rng)), Cd(g(rng), g(rng))};
  // Gram–Schmidt in the right H-module H^N, applied twice for stability.
  for (int k = 0; k < N; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < k; ++i) {
        Quat ip{0.0, 0.0};
        for (int r = 0; r < N; ++r) {
          const Quat t = qmul(qconj(cols[i][r]), cols[k][r]);
          ip.a += t.a;
          ip.b += t.b;
        }
        for (int r = 0; r < N; ++r) {
          const Quat t = qmul(cols[i][r], ip);
          cols[k][r].a -= t.a;
          cols[k][r].b -= t.b;
        }
      }
    }
    double norm = 0.0;
    for (const auto& q : cols[k]) norm += std::norm(q.a) + std::norm(q.b);
    norm = std::sqrt(norm);
    if (!(norm > 1e-12)) throw ConsistencyError("degenerate quaternionic draw");
    for (auto& q : cols[k]) {
      q.a /= norm;
      q.b /= norm;
    }
  }
  CMat m(2 * N, 2 * N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      const Quat& q = cols[c][r];
      m(2 * r, 2 * c) = q.a;
      m(2 * r, 2 * c + 1) = q.b;
      m(2 * r + 1, 2 * c) = -std::conj(q.b);
      m(2 * r + 1, 2 * c + 1) = std::conj(q.a);
    }
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  return fold_pairs(es.eigenvalues());
}

double log_factor(double phi, double theta) { return std::log(2.0 - 2.0 * std::cos(phi - theta)); }

}  // namespace

HaarSample sample_haar(Symmetry group, int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1 || N > kMaxMatrixRank) throw DomainError("sample_haar: N must lie in [1, 512]");
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  HaarSample s;
  s.group = group;
  s.N = N;
  switch (group) {
    case Symmetry::unitary: s.phases = unitary_phases(N, rng); break;
    case Symmetry::orthogonal: s.phases = orthogonal_phases(N, rng); break;
    case Symmetry::symplectic: s.phases = symplectic_phases(N, rng); break;
  }
  return s;
}

double char_poly_abs2beta(const HaarSample& sample, double theta, int beta) {
  if (beta < 1) throw DomainError("char_poly_abs2beta: beta must be >= 1");
  double log_sum = 0.0;
  for (double phi : sample.phases) {
    log_sum += log_factor(phi, theta);
    if (sample.group != Symmetry::unitary) log_sum += log_factor(-phi, theta);
  }
  return std::exp(beta * log_sum);
}

double window_moment_rmt(const HaarSample& sample, int beta, int nodes) {
  if (nodes == 0) nodes = 32 * sample.N;
  if (nodes < 32 * sample.N) throw DomainError("window_moment_rmt: nodes must be >= 32·N");
  if (nodes % 2 != 0) ++nodes;
  double all = 0.0;
  double even = 0.0;
  for (int q = 0; q < nodes; ++q) {
    const double v = char_poly_abs2beta(sample, kTwoPi * q / nodes, beta);
    all += v;
    if (q % 2 == 0) even += v;
  }
  const double fine = all / nodes;
  const double coarse = even / (nodes / 2);
  if (std::abs(fine - coarse) > 1e-8 * std::abs(fine) + 1e-300)
    throw NonConvergence("window_moment_rmt: trapezoid refinement check failed");
  return fine;
}

MomentEstimate mom_group(Symmetry group, int N, const MomParams& params, std::int64_t n_samples,
                         std::uint64_t seed) {
  if (params.k < 1 || params.beta < 1) throw DomainError("mom_group: k and beta must be >= 1");
  if (n_samples < 2) throw DomainError("mom_group: need at least 2 samples");
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  parallel_for(values.size(), [&](std::size_t i) {
    const auto s = sample_haar(group, N, seed, i);
    values[i] = std::pow(window_moment_rmt(s, params.beta), params.k);
  });
  const double mean = pairwise_sum(values) / static_cast<double>(n_samples);
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(n_samples - 1);
  MomentEstimate out;
  out.value = mean;
  out.std_error = std::sqrt(var / static_cast<double>(n_samples));
  out.samples = n_samples;
  out.method = "monte-carlo";
  out.seed = seed;
  out.params = params;
  out.scale = N;
  return out;
}

double ks_exact(int N, int beta) {
  if (N < 1 || N > 1000) throw DomainError("ks_exact: N must lie in [1, 1000]");
  if (beta < 1 || beta > 6) throw DomainError("ks_exact: beta must lie in [1, 6]");
  double log_sum = 0.0;
  for (int j = 1; j <= N; ++j)
    log_sum += std::lgamma(j) + std::lgamma(j + 2.0 * beta) - 2.0 * std::lgamma(j + static_cast<double>(beta));
  return std::exp(log_sum);
}

}  // namespace momlab

namespace momlab {
namespace {

// Fourier coefficients ĉ_m, |m| <= D, of the trigonometric polynomial
// θ ↦ ∏_i |1 − e^{i(θ−a_i)}|^{2β} (times the mirrored factors when `paired`).
std::vector<Cd> weight_coefficients(const std::vector<double>& points, int beta, bool paired, int degree) {
  const int L = 4 * degree + 8;
  std::vector<Cd> coef(2 * degree + 1);
  std::vector<double> vals(L);
  for (int q = 0; q < L; ++q) {
    const double th = kTwoPi * q / L;
    double v = 1.0;
    for (double a : points) {
      v *= std::pow(2.0 - 2.0 * std::cos(th - a), beta);
      if (paired) v *= std::pow(2.0 - 2.0 * std::cos(th + a), beta);
    }
    vals[q] = v;
  }
  for (int m = -degree; m <= degree; ++m) {
    Cd acc = 0.0;
    for (int q = 0; q < L; ++q) acc += vals[q] * std::polar(1.0, -kTwoPi * m * q / L);
    coef[m + degree] = acc / static_cast<double>(L);
  }
  return coef;
}

// E_G[∏_j w(φ_j)] for the weight with the given Fourier coefficients.
double heine_average(Symmetry group, int N, const std::vector<Cd>& coef, int degree) {
  auto c = [&](int m) -> Cd { return std::abs(m) > degree ? Cd(0.0) : coef[m + degree]; };
  CMat m(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      switch (group) {
        case Symmetry::unitary: m(j, k) = c(j - k); break;
        case Symmetry::symplectic: m(j, k) = c(j - k) - c(j + k + 2); break;
        case Symmetry::orthogonal: m(j, k) = c(j - k) + c(j + k); break;
      }
    }
  double det = m.partialPivLu().determinant().real();
  if (group == Symmetry::orthogonal) det *= 0.5;
  return det;
}

double point_average(Symmetry group, int N, const std::vector<double>& points, int beta) {
  const bool paired = group != Symmetry::unitary;
  const int degree = beta * static_cast<int>(points.size()) * (paired ? 2 : 1);
  return heine_average(group, N, weight_coefficients(points, beta, paired, degree), degree);
}

}  // namespace

MomentEstimate mom_group_exact(Symmetry group, int N, const MomParams& params) {
  if (N < 1 || N > kMaxMatrixRank) throw DomainError("mom_group_exact: N must lie in [1, 512]");
  if (params.k < 1 || params.k > 2 || params.beta < 1 || params.beta > 4)
    throw DomainError("mom_group_exact: requires k ∈ {1,2} and 1 <= beta <= 4");
  const int beta = params.beta;
  const bool paired = group != Symmetry::unitary;
  // Degree of the window integrand in each θ variable.
  const int degree = (paired ? 2 : 1) * beta * N;
  const int M = 2 * (degree + 1);
  double fine = 0.0;
  double coarse = 0.0;
  if (params.k == 1 && !paired) {
    fine = coarse = point_average(group, N, {0.0}, beta);
  } else if (params.k == 1) {
    std::vector<double> v(M / 2 + 1);
    parallel_for(v.size(), [&](std::size_t q) { v[q] = point_average(group, N, {kTwoPi * q / M}, beta); });
    // Even in θ: node q and M − q coincide.
    for (int q = 0; q < M; ++q) {
      const double x = v[std::min(q, M - q)];
      fine += x;
      if (q % 2 == 0) coarse += x;
    }
    fine /= M;
    coarse /= M / 2;
  } else if (!paired) {
    // Rotation invariance reduces the double window to one difference variable.
    std::vector<double> v(M);
    parallel_for(v.size(), [&](std::size_t q) { v[q] = point_average(group, N, {0.0, kTwoPi * q / M}, beta); });
    for (int q = 0; q < M; ++q) {
      fine += v[q];
      if (q % 2 == 0) coarse += v[q];
    }
    fine /= M;
    coarse /= M / 2;
  } else {
    const int H = M / 2;
    std::vector<std::pair<int, int>> cells;
    for (int a = 0; a <= H; ++a)
      for (int b = a; b <= H; ++b) cells.emplace_back(a, b);
    std::vector<double> v(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
      v[i] = point_average(group, N, {kTwoPi * cells[i].first / M, kTwoPi * cells[i].second / M}, beta);
    });
    // Multiplicity of each folded cell in the full M×M grid (and in the even subgrid).
    auto mult = [&](int a) { return (a == 0 || a == H) ? 1.0 : 2.0; };
    std::vector<double> fterms(cells.size());
    std::vector<double> cterms(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto [a, b] = cells[i];
      const double w = mult(a) * mult(b) * (a == b ? 1.0 : 2.0);
      fterms[i] = w * v[i];
      cterms[i] = (a % 2 == 0 && b % 2 == 0) ? w * v[i] : 0.0;
    }
    fine = pairwise_sum(fterms) / (static_cast<double>(M) * M);
    coarse = pairwise_sum(cterms) / (static_cast<double>(H) * H);
  }
  MomentEstimate out;
  out.value = fine;
  out.quadrature_error = std::abs(fine - coarse);
  out.method = "heine-determinant";
  out.params = params;
  out.scale = N;
  return out;
}

}  // namespace momlab
