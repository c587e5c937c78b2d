#include "bohrlab/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "bohrlab/numeric.hpp"

namespace bohrlab {

namespace {

constexpr double kHypothesisSlack = 1e-6;
constexpr double kRadiusTolerance = 1e-8;
constexpr double kCaratheodorySlack = 1e-9;
constexpr double kWintnerEdge = 1e-9;
constexpr int kWintnerScanPoints = 64;

}  // namespace

UnivariateSeries::UnivariateSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("UnivariateSeries needs at least the constant coefficient");
}

UnivariateSeries UnivariateSeries::from_real(const std::vector<double>& coeffs) {
  return UnivariateSeries(std::vector<Complex>(coeffs.begin(), coeffs.end()));
}

Complex UnivariateSeries::eval(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

bool UnivariateSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

SparsePolynomial UnivariateSeries::embed(std::size_t dim, std::size_t var) const {
  SparsePolynomial poly(dim);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != Complex{}) poly.set_coefficient(MultiIndex::unit(dim, var, static_cast<int>(k)), coeffs_[k]);
  }
  return poly;
}

UnivariateSeries multiply_truncated(const UnivariateSeries& a, const UnivariateSeries& b, int K) {
  if (K < 0) throw std::invalid_argument("multiply_truncated: negative order");
  std::vector<Complex> c(static_cast<std::size_t>(K) + 1);
  for (int i = 0; i <= std::min(K, a.order()); ++i) {
    for (int j = 0; j <= std::min(K - i, b.order()); ++j) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  }
  return UnivariateSeries(std::move(c));
}

UnivariateSeries moebius_coeffs(double a, int K) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("moebius_coeffs: a must lie in (0, 1)");
  if (K < 1) throw std::invalid_argument("moebius_coeffs: truncation order must be >= 1");
  std::vector<Complex> c(static_cast<std::size_t>(K) + 1);
  c[0] = -a;
  double term = 1.0 - a * a;
  for (int k = 1; k <= K; ++k) {
    c[static_cast<std::size_t>(k)] = term;
    term *= a;
  }
  return UnivariateSeries(std::move(c));
}

int moebius_truncation_order(double a, double tail) {
  if (!(a > 0.0 && a < 1.0) || !(tail > 0.0)) throw std::invalid_argument("moebius_truncation_order: need 0 < a < 1 and tail > 0");
  // sum_{k > K} (1 - a^2) a^(k-1) = (1 + a) a^K
  const double k = std::log(tail / (1.0 + a)) / std::log(a);
  return std::max(1, static_cast<int>(std::ceil(k)));
}

double majorant_sum(const UnivariateSeries& s, double r) {
  if (!(r >= 0.0) || r >= 1.0) throw std::invalid_argument("majorant_sum: r must lie in [0, 1)");
  double acc = 0.0;
  for (auto it = s.coeffs().rbegin(); it != s.coeffs().rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

UnitBallSample sample_unit_ball(const UnivariateSeries& s, double radius, int samples) {
  if (!(radius > 0.0 && radius < 1.0) || samples < 1) throw std::invalid_argument("sample_unit_ball: bad radius or sample count");
  UnitBallSample out;
  out.radius = radius;
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / samples;
    out.sampled_max = std::max(out.sampled_max, std::abs(s.eval(std::polar(radius, theta))));
  }
  double mass = 0.0;
  for (const auto& c : s.coeffs()) mass += std::norm(c);
  const double missing = std::sqrt(std::max(0.0, 1.0 - mass));
  out.tail_allowance = missing * std::pow(radius, s.order() + 1) / std::sqrt(1.0 - radius * radius);
  out.consistent = out.sampled_max <= 1.0 + kHypothesisSlack + out.tail_allowance;
  return out;
}

double bohr_radius_1d(const UnivariateSeries& s) {
  const auto check = sample_unit_ball(s);
  if (!check.consistent) {
    throw std::domain_error("bohr_radius_1d: sampled modulus " + std::to_string(check.sampled_max) +
                            " exceeds 1; the series is not in the unit ball");
  }
  double total = 0.0;
  for (const auto& c : s.coeffs()) total += std::abs(c);
  if (total <= 1.0) return 1.0;
  auto g = [&](double r) { return r >= 1.0 ? total : majorant_sum(s, r); };
  return last_feasible(g, 1.0, 0.0, 1.0, kRadiusTolerance);
}

CaratheodoryResult caratheodory_check(const UnivariateSeries& s) {
  CaratheodoryResult out;
  const double c0 = std::abs(s[0]);
  const double allowed = 2.0 * (1.0 - c0);
  double worst = 0.0;
  for (int k = 1; k <= s.order(); ++k) {
    const double ck = std::abs(s[k]);
    if (ck > worst) {
      worst = ck;
      out.worst_index = k;
    }
  }
  if (allowed <= 0.0) {
    // unimodular constant term: only the constant function qualifies
    out.passes = worst <= kCaratheodorySlack;
    out.worst_ratio = worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return out;
  }
  out.worst_ratio = worst / allowed;
  out.passes = worst <= allowed + kCaratheodorySlack;
  return out;
}

double h2_norm(const UnivariateSeries& s) {
  double acc = 0.0;
  for (const auto& c : s.coeffs()) acc += std::norm(c);
  return std::sqrt(acc);
}

WintnerResult wintner_objective(const UnivariateSeries& s) {
  if (s.is_zero()) throw std::invalid_argument("wintner_objective: series is identically zero");
  auto g = [&](double r) { return majorant_sum(s, r) / r; };
  const double lo = kWintnerEdge;
  const double hi = 1.0 - kWintnerEdge;
  const double step = (hi - lo) / (kWintnerScanPoints - 1);

  WintnerResult best{std::numeric_limits<double>::infinity(), lo};
  int best_i = 0;
  for (int i = 0; i < kWintnerScanPoints; ++i) {
    const double r = i == kWintnerScanPoints - 1 ? hi : lo + i * step;
    const double v = g(r);
    if (v < best.value) {
      best = {v, r};
      best_i = i;
    }
  }
  const double a = lo + std::max(0, best_i - 1) * step;
  const double b = best_i + 1 >= kWintnerScanPoints - 1 ? hi : lo + (best_i + 1) * step;
  // Brent: golden-section steps with parabolic refinement
  const auto [x, fx] = boost::math::tools::brent_find_minima(g, a, b, std::numeric_limits<double>::digits / 2 + 4);
  if (fx < best.value) best = {fx, x};
  return best;
}

double wintner_h2_bound(double c0_modulus) {
  if (!(c0_modulus >= 0.0 && c0_modulus <= 1.0)) throw std::invalid_argument("wintner_h2_bound: |c0| must lie in [0, 1]");
  // min over r = cos(phi) of c/cos(phi) + s/sin(phi) equals (c^(2/3) + s^(2/3))^(3/2)
  const double c = c0_modulus;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return std::pow(std::cbrt(c * c) + std::cbrt(s * s), 1.5);
}

WienerAverage wiener_average(const SparsePolynomial& poly, const MultiIndex& alpha, double bound_b) {
  if (alpha.size() != poly.dim()) throw std::invalid_argument("wiener_average: multi-index length does not match polynomial");
  if (alpha.is_zero()) throw std::invalid_argument("wiener_average: alpha must be nonzero");
  if (!(bound_b > 0.0)) throw std::invalid_argument("wiener_average: bound b must be positive");

  WienerAverage out{SparsePolynomial(poly.dim()), 0.0, 0.0};
  for (const auto& [beta, c] : poly.terms()) {
    bool keep = true;
    for (std::size_t j = 0; j < alpha.size() && keep; ++j) {
      if (alpha[j] != 0 && beta[j] % alpha[j] != 0) keep = false;
    }
    if (keep) out.averaged.set_coefficient(beta, c);
  }
  const double c0 = std::abs(poly.coefficient(MultiIndex::zero(poly.dim())));
  out.derivative_bound = (1.0 - c0 * c0) * bound_b;
  out.coefficient_bound = out.derivative_bound * std::exp(-log_multi_factorial(alpha));
  return out;
}

double cauchy_derivative_bound(const MultiIndex& alpha, const BallSpec& ball) {
  return std::exp(log_multi_factorial(alpha) - log_monomial_sup(alpha, ball));
}

}  // namespace bohrlab
