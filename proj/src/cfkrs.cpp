#include "momlab/cfkrs.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <cmath>
#include <numbers>
#include <numeric>

#include "momlab/arith.hpp"
#include "momlab/errors.hpp"
#include "momlab/parallel.hpp"

namespace momlab {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

std::int64_t multinomial(int n, std::span<const int> parts) {
  std::int64_t out = 1;
  int left = n;
  for (int p : parts) {
    out *= binomial(left, p);
    left -= p;
  }
  return left == 0 ? out : 0;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// (−1)^n / ((n!)² (2πi)^{2n})
Complex contour_prefactor(int n) {
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double f = factorial(n);
  return sign / (f * f * std::pow(Complex(0.0, kTwoPi), 2 * n));
}

// ζ(1 + s) with the Laurent form near the pole.
Complex zeta_shifted(Complex s) { return zeta_one_plus(s); }

void check_shifts(const MomParams& params, std::span<const double> h) {
  params.validate();
  if (static_cast<int>(h.size()) != params.k) throw DomainError("shift vector must have k entries");
  for (double v : h)
    if (!std::isfinite(v)) throw DomainError("shifts must be finite");
}

}  // namespace

std::vector<TPair> LAssignment::v_plus(int sigma, int tau) const {
  std::vector<TPair> out;
  for (const auto& t : T)
    if (t.sigma == sigma && t.tau == tau && t.sign > 0) out.push_back(t);
  return out;
}

std::vector<TPair> LAssignment::v_minus(int sigma, int tau) const {
  std::vector<TPair> out;
  for (const auto& t : T)
    if (t.sigma == sigma && t.tau == tau && t.sign < 0) out.push_back(t);
  return out;
}

LAssignment build_assignment(const MomParams& params, std::span<const int> l, std::span<const double> h) {
  check_shifts(params, h);
  const int k = params.k;
  const int two_beta = 2 * params.beta;
  const int n = params.n();
  if (static_cast<int>(l.size()) != k - 1) throw DomainError("build_assignment: l must have k-1 entries");
  for (int v : l)
    if (v < 0 || v > two_beta) throw DomainError("build_assignment: l entries must lie in [0, 2β]");

  LAssignment a;
  a.l.assign(l.begin(), l.end());
  for (int j = 0; j < k - 1; ++j) a.pole.insert(a.pole.end(), l[j], j);
  a.pole.insert(a.pole.end(), two_beta, k - 1);
  for (int j = k - 2; j >= 0; --j) a.pole.insert(a.pole.end(), two_beta - l[j], j);
  for (int p : a.pole) a.mu.push_back(h[p]);

  for (int m = 0; m < n; ++m) {
    for (int q = n; q < 2 * n; ++q) {
      if (a.pole[m] == a.pole[q]) {
        a.S.emplace_back(m, q);
      } else {
        TPair t;
        t.m = m;
        t.n = q;
        t.sigma = std::min(a.pole[m], a.pole[q]);
        t.tau = std::max(a.pole[m], a.pole[q]);
        t.sign = a.pole[m] == t.sigma ? 1 : -1;
        a.T.push_back(t);
      }
    }
  }

  std::int64_t first = 1;
  std::int64_t second = 1;
  int used_first = 0;
  int used_second = 0;
  for (int j = 0; j < k - 1; ++j) {
    first *= binomial(n - used_first, l[j]);
    second *= binomial(n - used_second, two_beta - l[j]);
    used_first += l[j];
    used_second += two_beta - l[j];
  }
  a.weight = first * second;
  return a;
}

std::vector<LAssignment> enumerate_assignments(const MomParams& params, std::span<const double> h) {
  check_shifts(params, h);
  const int k = params.k;
  const int two_beta = 2 * params.beta;
  std::vector<LAssignment> out;
  std::vector<int> l(k - 1, 0);
  while (true) {
    auto a = build_assignment(params, l, h);
    if (a.weight > 0) out.push_back(std::move(a));
    int j = k - 2;
    while (j >= 0) {
      if (++l[j] <= two_beta) break;
      l[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

Complex g_func(const MomParams& params, std::span<const Complex> z, std::int64_t prime_cutoff) {
  params.validate();
  const int n = params.n();
  if (static_cast<int>(z.size()) != 2 * n) throw DomainError("g_func: z must have length 2kβ");
  ArithmeticFactor factor(n, prime_cutoff, false);
  Complex out = factor(z);
  for (int i = 0; i < n; ++i)
    for (int j = n; j < 2 * n; ++j) {
      const Complex s = z[i] - z[j];
      if (s == Complex(0.0, 0.0)) throw PoleError("g_func: z_i = z_j hits the pole of ζ(1 + z_i − z_j)");
      out *= zeta_shifted(s);
    }
  return out;
}

namespace {

enum class Kernel { plain, time_average };

struct EngineSpec {
  int n = 1;
  int beta = 1;
  std::vector<double> poles;  // imaginary parts of the poles
  double x = 1.0;
  Kernel kernel = Kernel::plain;
  bool leading = false;  // A ≡ 1 and ζ(1+s) → 1/s
};

struct Cluster {
  double center = 0.0;
  double radius = 0.0;
  int multiplicity = 0;
};

std::vector<Cluster> make_clusters(const std::vector<double>& poles, double x, int n) {
  std::vector<double> sorted = poles;
  std::sort(sorted.begin(), sorted.end());
  const double xs = std::max(x, 1.0);
  const double margin_max = std::min(1.0 / xs, 0.1);
  const double join_gap = std::min(2.0 / xs, 0.3 / n);
  struct Span {
    double lo, hi;
    int count;
  };
  std::vector<Span> spans;
  for (double p : sorted) {
    if (!spans.empty() && p - spans.back().hi < join_gap) {
      spans.back().hi = p;
      ++spans.back().count;
    } else {
      spans.push_back({p, p, 1});
    }
  }
  std::vector<Cluster> out;
  for (std::size_t c = 0; c < spans.size(); ++c) {
    double gap = 1e300;
    if (c > 0) gap = std::min(gap, spans[c].lo - spans[c - 1].hi);
    if (c + 1 < spans.size()) gap = std::min(gap, spans[c + 1].lo - spans[c].hi);
    const double margin = std::min(margin_max, gap / 4.0);
    out.push_back({0.5 * (spans[c].lo + spans[c].hi), 0.5 * (spans[c].hi - spans[c].lo) + margin, spans[c].count});
  }
  return out;
}

struct AssignmentClass {
  std::vector<int> first;   // variables of the first group per cluster
  std::vector<int> second;  // variables of the second group per cluster
  std::int64_t weight = 0;
};

void compositions(int total, std::size_t parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts, cur, out);
    cur.pop_back();
  }
}

std::vector<AssignmentClass> enumerate_classes(const std::vector<Cluster>& clusters, int n, int beta, bool prune) {
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(n, clusters.size(), cur, comps);
  std::vector<AssignmentClass> out;
  for (const auto& a : comps) {
    for (const auto& b : comps) {
      if (prune) {
        bool balanced = true;
        for (std::size_t c = 0; c < clusters.size(); ++c)
          if (a[c] + b[c] != 2 * beta * clusters[c].multiplicity) balanced = false;
        if (!balanced) continue;
      }
      out.push_back({a, b, multinomial(n, a) * multinomial(n, b)});
    }
  }
  return out;
}

// Integrand of P on a fixed contour family, with per-axis and per-pair caches.
class ClusterIntegrand {
 public:
  ClusterIntegrand(const EngineSpec& spec, const ArithmeticFactor* factor) : spec_(spec), factor_(factor) {}

  IndexedIntegrand make() {
    IndexedIntegrand f;
    f.prepare = [this](const std::vector<std::vector<Complex>>& nodes) { prepare(nodes); };
    f.eval = [this](std::span<const int> idx, std::span<const Complex> z) { return eval(idx, z); };
    return f;
  }

 private:
  void prepare(const std::vector<std::vector<Complex>>& nodes) {
    const int d = 2 * spec_.n;
    sizes_.assign(d, 0);
    axis_.assign(d, {});
    for (int a = 0; a < d; ++a) {
      sizes_[a] = static_cast<int>(nodes[a].size());
      const double e = a < spec_.n ? 0.5 * spec_.x : -0.5 * spec_.x;
      for (const Complex& z : nodes[a]) {
        Complex poles = 1.0;
        for (double p : spec_.poles) poles *= z - kI * p;
        axis_[a].push_back(std::exp(e * z) / std::pow(poles, 2 * spec_.beta));
      }
    }
    pairs_.clear();
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        std::vector<Complex> table(static_cast<std::size_t>(sizes_[i]) * sizes_[j]);
        const bool cross = i < spec_.n && j >= spec_.n;
        for (int qi = 0; qi < sizes_[i]; ++qi) {
          for (int qj = 0; qj < sizes_[j]; ++qj) {
            const Complex zi = nodes[i][qi];
            const Complex zj = nodes[j][qj];
            Complex v = (zj - zi) * (zj - zi);
            if (cross) v *= spec_.leading ? 1.0 / (zi - zj) : zeta_shifted(zi - zj);
            table[static_cast<std::size_t>(qi) * sizes_[j] + qj] = v;
          }
        }
        pairs_.push_back(std::move(table));
      }
    }
    powers_.clear();
    if (factor_ != nullptr && !factor_->closed_form()) {
      const std::size_t np = factor_->primes().size();
      powers_.assign(d, {});
      for (int a = 0; a < d; ++a) {
        powers_[a].resize(nodes[a].size() * np);
        for (std::size_t q = 0; q < nodes[a].size(); ++q)
          factor_->fill_powers(nodes[a][q], a < spec_.n ? -1.0 : 1.0, std::span<Complex>(&powers_[a][q * np], np));
      }
    }
  }

  Complex eval(std::span<const int> idx, std::span<const Complex> z) const {
    const int d = 2 * spec_.n;
    Complex v = 1.0;
    for (int a = 0; a < d; ++a) v *= axis_[a][idx[a]];
    std::size_t p = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) v *= pairs_[p++][static_cast<std::size_t>(idx[i]) * sizes_[j] + idx[j]];
    if (factor_ != nullptr) {
      if (factor_->closed_form()) {
        v *= (*factor_)(z);
      } else {
        const std::size_t np = factor_->primes().size();
        std::array<const Complex*, 2 * kMaxContourDimension> rows{};
        for (int a = 0; a < d; ++a) rows[a] = &powers_[a][static_cast<std::size_t>(idx[a]) * np];
        v *= factor_->from_powers(std::span<const Complex* const>(rows.data(), d));
      }
    }
    if (spec_.kernel == Kernel::time_average) {
      Complex w = 0.0;
      for (int j = 0; j < spec_.n; ++j) w += z[spec_.n + j] - z[j];
      v /= 1.0 - 0.5 * w;
    }
    return v;
  }

  EngineSpec spec_;
  const ArithmeticFactor* factor_;
  std::vector<int> sizes_;
  std::vector<std::vector<Complex>> axis_;
  std::vector<std::vector<Complex>> pairs_;
  std::vector<std::vector<Complex>> powers_;
};

CfkrsValue finish(Complex total, double delta, std::int64_t nodes, const std::string& method,
                  const CfkrsConfig& config) {
  CfkrsValue out;
  out.value = total.real();
  out.imag = total.imag();
  out.refinement_delta = delta;
  out.nodes = nodes;
  out.method = method;
  if (std::abs(total.imag()) > config.imag_tol * std::abs(total.real()) + 10.0 * delta + config.abs_tol)
    throw ConsistencyError(method + ": imaginary part " + std::to_string(total.imag()) +
                           " is not negligible against " + std::to_string(total.real()));
  return out;
}

// Σ_class weight·∮ F over the class's contour family, times the P prefactor,
// with all classes refined together by node doubling.
CfkrsValue run_engine(const EngineSpec& spec, const CfkrsConfig& config, const std::string& method) {
  const int n = spec.n;
  if (2 * n > static_cast<int>(kMaxContourDimension)) throw DomainError("contour dimension above 8");
  const auto clusters = make_clusters(spec.poles, spec.x, n);
  const auto classes = enumerate_classes(clusters, n, spec.beta, config.prune_unbalanced);

  if (spec.kernel == Kernel::time_average) {
    double r_max = 0.0;
    for (const auto& c : clusters) r_max = std::max(r_max, c.radius);
    if (2.0 * n * r_max * 1.02 > 1.5) throw DomainError("time-average kernel: contours reach the pole at w = 2");
  }

  std::unique_ptr<ArithmeticFactor> factor;
  if (!spec.leading && n > 1)
    factor = std::make_unique<ArithmeticFactor>(n, config.contour_prime_cutoff, config.closed_form_two);

  std::vector<ContourFamily> families;
  std::vector<std::unique_ptr<ClusterIntegrand>> integrands;
  std::vector<IndexedIntegrand> fs;
  for (const auto& cls : classes) {
    ContourFamily fam;
    std::vector<int> used(clusters.size(), 0);
    auto add = [&](const std::vector<int>& counts) {
      for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int r = 0; r < counts[c]; ++r) {
          const double radius = clusters[c].radius * (1.0 + 1e-2 * used[c]++);
          fam.contours.push_back({kI * clusters[c].center, radius, config.start_nodes});
        }
    };
    add(cls.first);
    add(cls.second);
    families.push_back(std::move(fam));
    integrands.push_back(std::make_unique<ClusterIntegrand>(spec, factor.get()));
    fs.push_back(integrands.back()->make());
  }

  const Complex pref = contour_prefactor(n);
  auto level_nodes = [&](int scale) {
    double per = std::pow(static_cast<double>(config.start_nodes) * scale, 2 * n);
    return per * static_cast<double>(classes.size());
  };
  std::int64_t spent = 0;
  auto pass = [&](int scale) {
    std::vector<Complex> vals(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) vals[c] = contour_trapezoid(fs[c], families[c], scale);
    spent += static_cast<std::int64_t>(level_nodes(scale));
    return vals;
  };
  auto combine = [&](const std::vector<Complex>& vals) {
    Complex total = 0.0;
    for (std::size_t c = 0; c < classes.size(); ++c) total += static_cast<double>(classes[c].weight) * vals[c];
    return pref * total;
  };

  int scale = 1;
  auto prev = pass(scale);
  Complex prev_total = combine(prev);
  for (int r = 0; r < config.max_refinements; ++r) {
    if (level_nodes(scale * 2) > static_cast<double>(config.max_total_nodes)) break;
    scale *= 2;
    auto cur = pass(scale);
    const Complex total = combine(cur);
    double delta = 0.0;
    for (std::size_t c = 0; c < classes.size(); ++c)
      delta += static_cast<double>(classes[c].weight) * std::abs(cur[c] - prev[c]);
    delta *= std::abs(pref);
    if (delta <= config.abs_tol + config.rel_tol * std::abs(total)) return finish(total, delta, spent, method, config);
    prev = std::move(cur);
    prev_total = total;
  }
  throw BudgetExhausted(method + ": contour refinement did not converge", prev_total, prev_total);
}

std::vector<double> centered(std::span<const double> h) {
  const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  const double mid = 0.5 * (*lo + *hi);
  std::vector<double> out;
  for (double v : h) out.push_back(v - mid);
  return out;
}

}  // namespace

CfkrsValue p_direct(const MomParams& params, double x, std::span<const double> h, const CfkrsConfig& config) {
  check_shifts(params, h);
  if (!(x >= 1.0)) throw DomainError("p_direct: x must be >= 1");
  if (params.n() > 3) throw DomainError("p_direct: kβ <= 3 required");
  EngineSpec spec;
  spec.n = params.n();
  spec.beta = params.beta;
  spec.poles = centered(h);
  spec.x = x;
  return run_engine(spec, config, "direct-cluster");
}

CfkrsValue p_time_average(const MomParams& params, double X, std::span<const double> h, const CfkrsConfig& config) {
  check_shifts(params, h);
  if (!(X >= 1.0)) throw DomainError("p_time_average: log(T/2π) must be >= 1");
  if (params.n() > 3) throw DomainError("p_time_average: kβ <= 3 required");
  EngineSpec spec;
  spec.n = params.n();
  spec.beta = params.beta;
  spec.poles = centered(h);
  spec.x = X;
  spec.kernel = Kernel::time_average;
  return run_engine(spec, config, "direct-kernel");
}

CfkrsValue gamma_kernel(const MomParams& params, std::span<const double> delta, const CfkrsConfig& config) {
  params.validate();
  if (static_cast<int>(delta.size()) != params.k - 1) throw DomainError("gamma_kernel: δ must have k-1 entries");
  if (params.n() > 3) throw DomainError("gamma_kernel: kβ <= 3 required");
  std::vector<double> poles(delta.begin(), delta.end());
  poles.push_back(0.0);
  EngineSpec spec;
  spec.n = params.n();
  spec.beta = params.beta;
  spec.poles = centered(poles);
  spec.x = 2.0;
  spec.leading = true;
  return run_engine(spec, config, "gamma-kernel");
}

namespace {

// Γ₀-tensor integrand of one l-summand of the decomposed evaluator.
class DecomposedIntegrand {
 public:
  DecomposedIntegrand(const LAssignment& a, int n, int beta, double x) : a_(a), n_(n), beta_(beta), x_(x) {}

  IndexedIntegrand make() {
    IndexedIntegrand f;
    f.prepare = [this](const std::vector<std::vector<Complex>>& nodes) { prepare(nodes); };
    f.eval = [this](std::span<const int> idx, std::span<const Complex>) {
      const int d = 2 * n_;
      Complex v = 1.0;
      for (int i = 0; i < d; ++i) v *= axis_[i][idx[i]];
      std::size_t p = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) v *= pairs_[p++][static_cast<std::size_t>(idx[i]) * sizes_[j] + idx[j]];
      return v;
    };
    return f;
  }

 private:
  void prepare(const std::vector<std::vector<Complex>>& nodes) {
    const int d = 2 * n_;
    sizes_.assign(d, 0);
    axis_.assign(d, {});
    for (int i = 0; i < d; ++i) {
      sizes_[i] = static_cast<int>(nodes[i].size());
      for (const Complex& v : nodes[i])
        axis_[i].push_back(std::exp(i < n_ ? v : -v) / std::pow(v, 2 * beta_));
    }
    pairs_.clear();
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const bool same = a_.pole[i] == a_.pole[j];
        const bool cross = i < n_ && j >= n_;
        std::vector<Complex> table(static_cast<std::size_t>(sizes_[i]) * sizes_[j]);
        for (int qi = 0; qi < sizes_[i]; ++qi) {
          for (int qj = 0; qj < sizes_[j]; ++qj) {
            const Complex vi = nodes[i][qi];
            const Complex vj = nodes[j][qj];
            Complex val = 1.0;
            if (same) {
              val = (vj - vi) * (vj - vi);
              if (cross) val /= vi - vj;
            } else if (cross) {
              val = zeta_shifted(2.0 * (vi - vj) / x_ + kI * (a_.mu[i] - a_.mu[j]));
            }
            table[static_cast<std::size_t>(qi) * sizes_[j] + qj] = val;
          }
        }
        pairs_.push_back(std::move(table));
      }
    }
  }

  const LAssignment& a_;
  int n_;
  int beta_;
  double x_;
  std::vector<int> sizes_;
  std::vector<std::vector<Complex>> axis_;
  std::vector<std::vector<Complex>> pairs_;
};

// Base radius of the Γ₀ circles.
constexpr double kGammaZeroRadius = 0.5;

}  // namespace

CfkrsValue p_decomposed(const MomParams& params, double x, std::span<const double> h, const CfkrsConfig& config) {
  check_shifts(params, h);
  if (!(x >= 10.0)) throw DomainError("p_decomposed: x must be >= 10");
  const int n = params.n();
  if (n > 3) throw DomainError("p_decomposed: kβ <= 3 required");
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b)
      if (std::abs(h[a] - h[b]) < 1e-3) throw DomainError("p_decomposed: shifts closer than 1e-3");

  const auto hc = centered(h);
  const auto assignments = enumerate_assignments(params, hc);
  std::unique_ptr<ArithmeticFactor> factor;
  if (n > 1) factor = std::make_unique<ArithmeticFactor>(n, config.contour_prime_cutoff, config.closed_form_two);
  const Complex pref = contour_prefactor(n);
  const auto radii = staggered_radii(kGammaZeroRadius, 2 * n);

  Complex total = 0.0;
  double delta = 0.0;
  std::int64_t nodes = 0;
  for (const auto& a : assignments) {
    std::vector<Complex> imu(2 * n);
    double phase = 0.0;
    for (int j = 0; j < 2 * n; ++j) imu[j] = kI * a.mu[j];
    for (int j = 0; j < n; ++j) phase += a.mu[j] - a.mu[n + j];
    const Complex arith = factor ? (*factor)(imu) : Complex(1.0);
    const Complex coef = pref * static_cast<double>(a.weight) * std::pow(0.5 * x, static_cast<int>(a.S.size())) *
                         arith * std::exp(kI * (0.5 * x * phase));
    ContourFamily fam;
    for (int j = 0; j < 2 * n; ++j) fam.contours.push_back({0.0, radii[j], config.start_nodes});
    DecomposedIntegrand integrand(a, n, params.beta, x);
    ContourOptions opt;
    opt.abs_tol = config.abs_tol / std::abs(coef);
    opt.rel_tol = config.rel_tol;
    opt.max_refinements = config.max_refinements;
    opt.max_total_nodes = config.max_total_nodes;
    const auto r = contour_integral(integrand.make(), fam, opt);
    total += coef * r.value;
    delta += std::abs(coef) * r.refinement_delta;
    nodes += r.node_budget;
  }
  return finish(total, delta, nodes, "decomposed", config);
}

HalfLineResult psi(const MomParams& params, std::span<const Complex> v, const LAssignment& assignment,
                   const CfkrsConfig& config) {
  params.validate();
  const int k = params.k;
  if (static_cast<int>(v.size()) != 2 * params.n()) throw DomainError("psi: v must have length 2kβ");
  if (k == 1) return {Complex(1.0), 0.0};
  if (k > 3) throw DomainError("psi: k <= 3 required");
  HalfLineOptions opt;
  opt.cutoff = config.psi_cutoff;
  opt.panel_width = config.psi_panel_width;
  opt.order = config.psi_order;
  for (int j = 0; j < k - 1; ++j) opt.frequencies.push_back(2.0 * (assignment.l[j] - params.beta));
  auto f = [&](std::span<const double> d) {
    std::vector<double> delta(d.begin(), d.end());
    delta.push_back(0.0);
    double phase = 0.0;
    for (int j = 0; j < k - 1; ++j) phase += 2.0 * (assignment.l[j] - params.beta) * delta[j];
    Complex den = 1.0;
    for (const auto& t : assignment.T)
      den *= v[t.m] - v[t.n] + static_cast<double>(t.sign) * kI * (delta[t.sigma] - delta[t.tau]);
    return std::exp(kI * phase) / den;
  };
  return oscillatory_halfline_integral(f, k - 1, static_cast<int>(assignment.T.size()), opt);
}

GammaResult gamma_coeff(const MomParams& params, const CfkrsConfig& config) {
  params.validate();
  if (params.k > 3 || params.n() > 3) throw DomainError("gamma_coeff: k <= 3 and kβ <= 3 required");
  const double scale = std::pow(2.0, -params.exponent());
  GammaResult out;
  if (params.k == 1) {
    const auto K = gamma_kernel(params, {}, config);
    out.value = scale * K.value;
    out.imag = scale * K.imag;
    out.uncertainty = scale * K.refinement_delta;
    return out;
  }
  HalfLineOptions opt;
  opt.cutoff = config.psi_cutoff;
  opt.panel_width = config.psi_panel_width;
  opt.order = config.psi_order;
  double worst_delta = 0.0;
  auto kernel = [&](std::span<const double> d) {
    const auto K = gamma_kernel(params, d, config);
    worst_delta = std::max(worst_delta, K.refinement_delta);
    return Complex(K.value, K.imag);
  };
  Complex integral;
  double tail = 0.0;
  if (params.k == 2) {
    // K is even in δ.
    const auto r = oscillatory_halfline_integral(kernel, 1, 2, opt);
    integral = 2.0 * r.value;
    tail = 2.0 * r.tail_bound;
    worst_delta *= 2.0 * config.psi_cutoff;
  } else {
    // K(δ) = K(−δ); split ℝ² into the quadrant pairs (+,+) and (+,−).
    const auto pp = oscillatory_halfline_integral(kernel, 2, 2, opt);
    auto mixed = [&](std::span<const double> d) {
      const double flipped[2] = {d[0], -d[1]};
      return kernel(flipped);
    };
    const auto pm = oscillatory_halfline_integral(mixed, 2, 2, opt);
    integral = 2.0 * (pp.value + pm.value);
    tail = 2.0 * (pp.tail_bound + pm.tail_bound);
    worst_delta *= 4.0 * config.psi_cutoff * config.psi_cutoff;
  }
  out.value = scale * integral.real();
  out.imag = scale * integral.imag();
  out.tail = scale * tail;
  out.uncertainty = scale * (tail + worst_delta);
  if (std::abs(out.imag) > config.imag_tol * std::abs(out.value) + out.uncertainty)
    throw ConsistencyError("gamma_coeff: imaginary residue is not negligible");
  return out;
}

MomentEstimate mom_p(const MomParams& params, double T, const CfkrsConfig& config) {
  params.validate();
  if (!(T >= 100.0)) throw DomainError("mom_p: T must be >= 100");
  const double X = std::log(T / kTwoPi);
  MomentEstimate out;
  out.params = params;
  out.scale = T;
  out.method = "direct-kernel";
  const int k = params.k;
  if (k == 1) {
    const double h[1] = {0.5};
    const auto r = p_time_average(params, X, h, config);
    out.value = r.value;
    out.quadrature_error = r.refinement_delta;
    out.samples = 1;
    return out;
  }
  const auto& rule = gauss_legendre(config.h_order);
  const int panels = static_cast<int>(std::ceil(1.0 / config.h_panel_width - 1e-12));
  std::vector<double> nodes;
  std::vector<double> weights;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels;
    const double half = 0.5 / panels;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(a + half * (1.0 + rule.nodes[i]));
      weights.push_back(half * rule.weights[i]);
    }
  }
  double value = 0.0;
  double error = 0.0;
  if (k == 2) {
    // ∫∫ φ(h1 − h2) dh = 2∫_0^1 (1 − u) φ(u) du for even φ.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double h[2] = {nodes[i], 0.0};
      const auto r = p_time_average(params, X, h, config);
      value += 2.0 * weights[i] * (1.0 - nodes[i]) * r.value;
      error += 2.0 * weights[i] * r.refinement_delta;
    }
  } else {
    // Differences d_j = h_j − h_k on (−1,1)^{k−1}, weighted by the length of admissible h_k.
    std::vector<double> dn;
    std::vector<double> dw;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      dn.push_back(nodes[i]);
      dw.push_back(weights[i]);
      dn.push_back(-nodes[i]);
      dw.push_back(weights[i]);
    }
    for (std::size_t i = 0; i < dn.size(); ++i) {
      for (std::size_t j = 0; j < dn.size(); ++j) {
        const double hi = std::max({0.0, dn[i], dn[j]});
        const double lo = std::min({0.0, dn[i], dn[j]});
        const double len = 1.0 - (hi - lo);
        if (len <= 0.0) continue;
        const double h[3] = {dn[i], dn[j], 0.0};
        const auto r = p_time_average(params, X, h, config);
        value += dw[i] * dw[j] * len * r.value;
        error += dw[i] * dw[j] * r.refinement_delta;
      }
    }
  }
  out.value = value;
  out.quadrature_error = error;
  out.samples = static_cast<std::int64_t>(nodes.size());
  return out;
}

double leading_prediction(const MomParams& params, double T, const CfkrsConfig& config) {
  if (!(T > kTwoPi)) throw DomainError("leading_prediction: T must exceed 2π");
  const double alpha = a_zero(params.k, params.beta).value.real();
  const double gamma = gamma_coeff(params, config).value;
  return alpha * gamma * std::pow(std::log(T / kTwoPi), params.exponent());
}

}  // namespace momlab
