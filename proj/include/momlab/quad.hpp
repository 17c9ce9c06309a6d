#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "momlab/specfun.hpp"

namespace momlab {

/// Circle z = center + radius·e^{iθ}, sampled at `nodes` equispaced angles.
struct Contour {
  Complex center{};
  double radius = 1.0;
  int nodes = 8;
};

/// One contour per integration variable. Tensor dimension d = contours.size().
struct ContourFamily {
  std::vector<Contour> contours;
  std::size_t dimension() const { return contours.size(); }
};

/// Upper limit on the tensor dimension of a contour family.
inline constexpr std::size_t kMaxContourDimension = 8;

/// Radii r0·(1 + m·1e-2), m = 0..d-1, for d circles sharing one center, so that
/// no two variables ever land on the same node.
std::vector<double> staggered_radii(double base_radius, std::size_t count);

struct QuadResult {
  Complex value{};
  double refinement_delta = 0.0;  // |I(M) - I(M/2)| at the final per-contour node count M
  std::int64_t node_budget = 0;   // total integrand evaluations spent
  int nodes_per_contour = 0;
};

struct ContourOptions {
  double abs_tol = 1e-8;
  double rel_tol = 0.0;
  std::int64_t max_total_nodes = std::int64_t{1} << 24;  // per refinement level
  int max_refinements = 6;
};

/// Integrand over d complex variables.
using MultiIntegrand = std::function<Complex(std::span<const Complex> z)>;

/// Integrand that is told each node's per-axis index; `prepare` sees the node
/// coordinates of every axis once per refinement level so it can build caches.
struct IndexedIntegrand {
  std::function<void(const std::vector<std::vector<Complex>>& axis_nodes)> prepare;
  std::function<Complex(std::span<const int> index, std::span<const Complex> z)> eval;
};

/// One tensor trapezoid pass with `scale` times the family's starting node counts.
Complex contour_trapezoid(const IndexedIntegrand& f, const ContourFamily& family, int scale = 1);

/// ∮…∮ f dz_1…dz_d by the trapezoid rule in every angle, doubling node counts
/// from the family's starting counts until refinement_delta <= tolerance.
/// Throws BudgetExhausted carrying the last two estimates.
QuadResult contour_integral(const MultiIntegrand& f, const ContourFamily& family,
                            const ContourOptions& options = {});
QuadResult contour_integral(const IndexedIntegrand& f, const ContourFamily& family,
                            const ContourOptions& options = {});

/// Gauss–Legendre nodes and weights on [-1, 1]; order in {8, 16, 32, 64}.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

/// Composite Gauss–Legendre over [a, b] with equal panels of width <= panel_width.
double gl_panel_integral(const std::function<double(double)>& f, double a, double b, double panel_width,
                         int order);
Complex gl_panel_integral_complex(const std::function<Complex(double)>& f, double a, double b,
                                  double panel_width, int order);

struct HalfLineOptions {
  double cutoff = 200.0;
  double panel_width = 0.5;
  int order = 16;
  /// Oscillation frequency ω per axis if the integrand is e^{iω·δ}·(algebraic); 0 = non-oscillatory.
  std::vector<double> frequencies;
};

struct HalfLineResult {
  Complex value{};
  double tail_bound = 0.0;  // magnitude of the tail estimate beyond the cutoff
};

/// ∫_0^∞…∫_0^∞ f(δ) dδ over `dimension` <= 2 variables, with f decaying like
/// |δ|^{-decay_degree}. Integrates [0, cutoff]^dim by composite Gauss–Legendre and
/// adds a leading-order tail estimate. Dimension 0 returns f evaluated on the
/// empty point. Throws NonConvergence if decay_degree < 2.
HalfLineResult oscillatory_halfline_integral(const std::function<Complex(std::span<const double>)>& f,
                                             int dimension, int decay_degree,
                                             const HalfLineOptions& options = {});

}  // namespace momlab
