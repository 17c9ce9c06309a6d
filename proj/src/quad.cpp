#include "momlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "momlab/errors.hpp"
#include "momlab/parallel.hpp"

namespace momlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

Complex contour_trapezoid(const IndexedIntegrand& f, const ContourFamily& family, int scale) {
  const std::size_t d = family.dimension();
  std::vector<std::vector<Complex>> axis_nodes(d);
  std::vector<std::vector<Complex>> axis_weights(d);  // dz/dθ · Δθ
  for (std::size_t j = 0; j < d; ++j) {
    const auto& c = family.contours[j];
    const int m = c.nodes * scale;
    axis_nodes[j].resize(m);
    axis_weights[j].resize(m);
    for (int q = 0; q < m; ++q) {
      const Complex e = std::polar(1.0, kTwoPi * q / m);
      axis_nodes[j][q] = c.center + c.radius * e;
      axis_weights[j][q] = Complex(0.0, 1.0) * c.radius * e * (kTwoPi / m);
    }
  }
  if (f.prepare) f.prepare(axis_nodes);
  if (d == 0) return f.eval({}, {});

  // Parallel over the first axis, sequential odometer over the rest.
  const std::size_t outer = axis_nodes[0].size();
  std::vector<Complex> partial(outer);
  parallel_for(outer, [&](std::size_t q0) {
    std::vector<int> idx(d, 0);
    std::vector<Complex> z(d);
    idx[0] = static_cast<int>(q0);
    z[0] = axis_nodes[0][q0];
    std::vector<Complex> inner;
    inner.reserve(1024);
    std::vector<Complex> chunk;
    while (true) {
      Complex w = axis_weights[0][q0];
      for (std::size_t j = 1; j < d; ++j) {
        z[j] = axis_nodes[j][idx[j]];
        w *= axis_weights[j][idx[j]];
      }
      inner.push_back(f.eval(idx, z) * w);
      if (inner.size() == 1024) {
        chunk.push_back(pairwise_sum(inner));
        inner.clear();
      }
      std::size_t j = d - 1;
      while (j >= 1) {
        if (++idx[j] < static_cast<int>(axis_nodes[j].size())) break;
        idx[j] = 0;
        --j;
      }
      if (j == 0) break;
    }
    if (!inner.empty()) chunk.push_back(pairwise_sum(inner));
    partial[q0] = pairwise_sum(chunk);
  });
  return pairwise_sum(partial);
}

std::vector<double> staggered_radii(double base_radius, std::size_t count) {
  std::vector<double> radii(count);
  for (std::size_t m = 0; m < count; ++m) radii[m] = base_radius * (1.0 + 1e-2 * static_cast<double>(m));
  return radii;
}

QuadResult contour_integral(const IndexedIntegrand& f, const ContourFamily& family, const ContourOptions& options) {
  const std::size_t d = family.dimension();
  if (d > kMaxContourDimension) throw DomainError("contour_integral: dimension above 8");
  int max_start = 1;
  for (const auto& c : family.contours) {
    if (!(c.radius > 0.0)) throw DomainError("contour_integral: radius must be positive");
    if (c.nodes < 8 || (c.nodes & (c.nodes - 1)) != 0)
      throw DomainError("contour_integral: node count must be a power of two >= 8");
    max_start = std::max(max_start, c.nodes);
  }
  QuadResult result;
  std::int64_t spent = 0;
  auto level_cost = [&](int scale) {
    std::int64_t cost = 1;
    for (const auto& c : family.contours) {
      cost = cost * c.nodes * scale;
      if (cost > options.max_total_nodes) return options.max_total_nodes + 1;
    }
    return cost;
  };
  int scale = 1;
  if (level_cost(1) > options.max_total_nodes)
    throw BudgetExhausted("contour_integral: starting grid exceeds node budget", 0.0, 0.0);
  Complex previous = contour_trapezoid(f, family, scale);
  spent += level_cost(scale);
  if (d == 0) {
    result.value = previous;
    result.node_budget = spent;
    return result;
  }
  for (int level = 0; level < options.max_refinements; ++level) {
    const int next = scale * 2;
    if (level_cost(next) > options.max_total_nodes) break;
    const Complex current = contour_trapezoid(f, family, next);
    spent += level_cost(next);
    const double delta = std::abs(current - previous);
    scale = next;
    result.value = current;
    result.refinement_delta = delta;
    result.node_budget = spent;
    result.nodes_per_contour = max_start * scale;
    if (delta <= options.abs_tol + options.rel_tol * std::abs(current)) return result;
    if (level + 1 < options.max_refinements) previous = current;
  }
  throw BudgetExhausted("contour_integral: tolerance not met within node budget (delta " +
                            std::to_string(result.refinement_delta) + ")",
                        result.value, previous);
}

QuadResult contour_integral(const MultiIntegrand& f, const ContourFamily& family, const ContourOptions& options) {
  IndexedIntegrand wrapped;
  wrapped.eval = [&f](std::span<const int>, std::span<const Complex> z) { return f(z); };
  return contour_integral(wrapped, family, options);
}

const GaussLegendreRule& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  if (order != 8 && order != 16 && order != 32 && order != 64)
    throw DomainError("gauss_legendre: order must be 8, 16, 32 or 64");
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int n = 2; n <= order; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

namespace {

template <class T, class F>
T panel_sum(const F& f, double a, double b, double panel_width, int order) {
  if (!(a < b)) throw DomainError("gl_panel_integral: requires a < b");
  if (!(panel_width > 0.0)) throw DomainError("gl_panel_integral: panel width must be positive");
  const auto& rule = gauss_legendre(order);
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel_width - 1e-12));
  const double h = (b - a) / static_cast<double>(panels);
  std::vector<T> per_panel(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    T acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    per_panel[p] = acc * (0.5 * h);
  }
  return pairwise_sum(per_panel);
}

}  // namespace

double gl_panel_integral(const std::function<double(double)>& f, double a, double b, double panel_width, int order) {
  return panel_sum<double>(f, a, b, panel_width, order);
}

Complex gl_panel_integral_complex(const std::function<Complex(double)>& f, double a, double b, double panel_width,
                                  int order) {
  return panel_sum<Complex>(f, a, b, panel_width, order);
}

HalfLineResult oscillatory_halfline_integral(const std::function<Complex(std::span<const double>)>& f,
                                             int dimension, int decay_degree, const HalfLineOptions& options) {
  if (dimension < 0 || dimension > 2) throw DomainError("oscillatory_halfline_integral: dimension must be 0, 1 or 2");
  HalfLineResult out;
  if (dimension == 0) {
    out.value = f({});
    return out;
  }
  if (decay_degree < 2) throw NonConvergence("oscillatory_halfline_integral: decay degree below 2");
  const double cutoff = options.cutoff;
  const double omega0 = options.frequencies.empty() ? 0.0 : options.frequencies[0];

  if (dimension == 1) {
    out.value = gl_panel_integral_complex(
        [&](double x) {
          const double p[1] = {x};
          return f(p);
        },
        0.0, cutoff, options.panel_width, options.order);
    const double p[1] = {cutoff};
    const Complex edge = f(p);
    Complex tail;
    if (omega0 != 0.0) {
      tail = -edge / Complex(0.0, omega0);  // leading integration-by-parts term
    } else {
      tail = edge * cutoff / static_cast<double>(decay_degree - 1);
    }
    out.value += tail;
    out.tail_bound = std::abs(tail);
    return out;
  }

  // Two dimensions: tensor panels on the square, tail bounded from the boundary.
  const auto& rule = gauss_legendre(options.order);
  const auto panels = static_cast<std::size_t>(std::ceil(cutoff / options.panel_width - 1e-12));
  const double h = cutoff / static_cast<double>(panels);
  std::vector<double> xs;
  std::vector<double> ws;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = h * (static_cast<double>(p) + 0.5);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      xs.push_back(mid + 0.5 * h * rule.nodes[i]);
      ws.push_back(0.5 * h * rule.weights[i]);
    }
  }
  std::vector<Complex> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    std::vector<Complex> row(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double p[2] = {xs[i], xs[j]};
      row[j] = ws[i] * ws[j] * f(p);
    }
    rows[i] = pairwise_sum(row);
  });
  out.value = pairwise_sum(rows);
  double edge_max = 0.0;
  for (std::size_t i = 0; i < xs.size(); i += rule.nodes.size()) {
    const double a[2] = {xs[i], cutoff};
    const double b[2] = {cutoff, xs[i]};
    edge_max = std::max({edge_max, std::abs(f(a)), std::abs(f(b))});
  }
  out.tail_bound = 2.0 * edge_max * cutoff * cutoff / static_cast<double>(decay_degree - 2 > 0 ? decay_degree - 2 : 1);
  return out;
}

}  // namespace momlab
