#include "momlab/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "momlab/errors.hpp"

namespace momlab {
namespace {

constexpr double kPi = std::numbers::pi;

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

// Generated by tools/gen_stieltjes.py.
constexpr std::array<double, kStieltjesCount> kStieltjes = {
    0.5772156649015328606065121,     -0.07281584548367672486058638,
    -0.009690363192872318484530386,  0.002053834420303345866160047,
    0.00232537006546730005746817,    0.0007933238173010627017533349,
    -0.0002387693454301996098724218, -0.0005272895670577510460740975,
    -0.0003521233538030395096020522, -0.00003439477441808804817791462,
    0.0002053328149090647946837223,  0.0002701844395439035266729021,
    0.0001672729121051401933535015,  -0.0000274638066037601588600076,
    -0.0002092092620592999458371397, -0.0002834686553202414466429345,
    -0.0001996968583089697747077846, 0.0000262770371099183366994666,
    0.0003073684081492528265927548,  0.0005036054530473556290555964,
    0.0004663435615115594494005948,  0.0001044377697560001158107957,
    -0.0005415995822039977016551962, -0.001243962090408245779299742};

// B_{2k}/(2k)! for k = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0};

Complex lanczos_gamma(Complex z) {
  // Γ(z) for Re z >= 1/2.
  z -= 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const Complex t = z + kLanczosG + 0.5;
  const Complex log_val = 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
  return std::exp(log_val);
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Sum of n^{-1/2} e^{-it log n}, n < count, from cached tables when possible.
struct CriticalTables {
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
  explicit CriticalTables(std::size_t size) : log_n(size), inv_sqrt_n(size) {
    for (std::size_t n = 1; n < size; ++n) {
      log_n[n] = std::log(static_cast<double>(n));
      inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
  }
};

const CriticalTables& critical_tables() {
  static const CriticalTables tables(static_cast<std::size_t>(kDefaultZetaHeight) + 64);
  return tables;
}

// Euler–Maclaurin tail with cutoff N and `corrections` Bernoulli terms.
Complex em_tail(Complex s, double n_cut, int corrections) {
  const Complex n_pow_minus_s = std::exp(-s * std::log(n_cut));
  Complex tail = n_pow_minus_s * n_cut / (s - 1.0) + 0.5 * n_pow_minus_s;
  Complex rising = s;  // s(s+1)...(s+2k-2)
  Complex n_pow = n_pow_minus_s / n_cut;  // N^{-s-1}
  for (int k = 1; k <= corrections; ++k) {
    tail += kBernoulliOverFactorial[k - 1] * rising * n_pow;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    n_pow /= n_cut * n_cut;
  }
  return tail;
}

}  // namespace

Complex complex_gamma(Complex z) {
  if (is_nonpositive_integer(z)) throw PoleError("complex_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    const Complex sine = std::sin(kPi * z);
    return kPi / (sine * lanczos_gamma(1.0 - z));
  }
  return lanczos_gamma(z);
}

double log_gamma(double z) {
  if (!(z > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(z);
}

double log_barnes_g(double z) {
  if (!(z >= 1.0)) throw DomainError("barnes_g: argument must be >= 1");
  if (z > 20.0 + 1e-12) throw DomainError("barnes_g: argument must be <= 20");
  // Lift to w = z + n >= 21, evaluate log G(w) asymptotically, recurse down.
  const int lift = static_cast<int>(std::ceil(21.0 - z));
  const double w = z + lift;
  const double y = w - 1.0;  // log G(1+y)
  constexpr double kZetaPrimeMinusOne = -0.16542114370045092921;
  double log_g = 0.5 * y * y * std::log(y) - 0.75 * y * y + 0.5 * y * std::log(2.0 * kPi) -
                 std::log(y) / 12.0 + kZetaPrimeMinusOne;
  // Σ B_{2k+2} / (4k(k+1) y^{2k})
  constexpr std::array<double, 6> kB = {-1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  double y_pow = y * y;
  for (int k = 1; k <= 6; ++k) {
    log_g += kB[k - 1] / (4.0 * k * (k + 1) * y_pow);
    y_pow *= y * y;
  }
  for (int j = 0; j < lift; ++j) log_g -= std::lgamma(z + j);
  return log_g;
}

double barnes_g(double z) { return std::exp(log_barnes_g(z)); }

double fk_coefficient(int beta) {
  if (beta < 1) throw DomainError("fk_coefficient: beta must be >= 1");
  return std::exp(2.0 * log_barnes_g(1.0 + beta) - log_barnes_g(1.0 + 2.0 * beta));
}

Complex zeta_critical(double t, double t_max) {
  const double abs_t = std::abs(t);
  if (abs_t > t_max) throw RangeError("zeta_critical: |t| above configured height " + std::to_string(t_max));
  const auto n_cut = static_cast<std::size_t>(std::ceil(1.0 + abs_t)) + 10;
  const auto& tables = critical_tables();
  double re = 0.0;
  double im = 0.0;
  for (std::size_t n = 1; n < n_cut; ++n) {
    double log_n;
    double amp;
    if (n < tables.log_n.size()) {
      log_n = tables.log_n[n];
      amp = tables.inv_sqrt_n[n];
    } else {
      log_n = std::log(static_cast<double>(n));
      amp = 1.0 / std::sqrt(static_cast<double>(n));
    }
    const double phase = t * log_n;
    re += amp * std::cos(phase);
    im -= amp * std::sin(phase);
  }
  const Complex s(0.5, t);
  return Complex(re, im) + em_tail(s, static_cast<double>(n_cut), 8);
}

Complex zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  const double scale = std::abs(s) + 1.0;
  const double n_cut = std::max(12.0, std::ceil(scale) + 10.0);
  Complex sum = 0.0;
  for (int n = 1; n < static_cast<int>(n_cut); ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  return sum + em_tail(s, n_cut, 12);
}

Complex zeta_near_one(Complex s) {
  const double r = std::abs(s);
  if (r == 0.0) throw PoleError("zeta_near_one: pole at s = 0");
  if (r > 0.5 + 1e-12) throw DomainError("zeta_near_one: |s| > 1/2, use the general zeta routine");
  // Horner on Σ c_j s^j with c_j = (-1)^j 𝔰_j / j!.
  std::array<double, kStieltjesCount> c{};
  double factorial = 1.0;
  for (int j = 0; j < kStieltjesCount; ++j) {
    if (j > 0) factorial *= j;
    c[j] = ((j % 2 == 0) ? 1.0 : -1.0) * kStieltjes[j] / factorial;
  }
  Complex acc = 0.0;
  for (int j = kStieltjesCount - 1; j >= 0; --j) acc = acc * s + c[j];
  return 1.0 / s + acc;
}

Complex zeta_one_plus(Complex s) {
  if (std::abs(s) <= 0.5) return zeta_near_one(s);
  return zeta(1.0 + s);
}

double stieltjes(int j) {
  if (j < 0 || j >= kStieltjesCount) throw DomainError("stieltjes: index out of range");
  return kStieltjes[j];
}

PrimeTable primes_up_to(std::int64_t limit, std::int64_t max_limit) {
  if (limit < 2) throw DomainError("primes_up_to: limit must be >= 2");
  if (limit > max_limit) throw RangeError("primes_up_to: limit above configured maximum");
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  PrimeTable table;
  table.limit = limit;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    table.primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return table;
}

}  // namespace momlab
