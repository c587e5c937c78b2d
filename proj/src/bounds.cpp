#include "bohrlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bohrlab/multiindex.hpp"

namespace bohrlab {

namespace {

void require_dimension(int n, const char* what) {
  if (n < 2) throw std::invalid_argument(std::string(what) + ": requires n >= 2");
}

void require_degree(int n, int d, const char* what) {
  if (n < 2 || d < 2) throw std::invalid_argument(std::string(what) + ": requires n >= 2 and d >= 2");
}

double tree_constant() { return std::exp(-1.0 / 3.0) / 3.0; }

double log_net_term(int n, int d) {
  return std::log(32.0 * n * d * std::log(6.0 * d)) / (2.0 * d);
}

}  // namespace

double tree_series(double x, int power_shift, int terms) {
  if (!(x > 0.0)) return 0.0;
  const double lx = std::log(x);
  double sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    sum += std::exp((k - power_shift) * std::log(static_cast<double>(k)) - log_factorial(k) + k * lx);
  }
  return sum;
}

TreeSolution tree_solve() {
  TreeSolution out;
  out.closed_form = tree_constant();
  double x = 0.2;
  for (int it = 1; it <= 100; ++it) {
    const double g = tree_series(x, 0) - 0.5;
    // d/dx sum k^k/k! x^k = (1/x) sum k^(k+1)/k! x^k
    const double dg = tree_series(x, -1) / x;
    const double step = g / dg;
    x -= step;
    out.newton_iterations = it;
    if (std::abs(step) <= 1e-16 * x) break;
  }
  out.newton = x;
  out.series_residual = std::abs(tree_series(x, 0) - 0.5);
  out.tree_value = tree_series(x, 1);
  return out;
}

double lower_bound_K(const BallSpec& ball) {
  const auto& p = ball.p();
  const double n = ball.n();
  double best = 0.0;
  if (p.at_most_two()) best = std::max(best, tree_constant() * std::pow(n, -(1.0 - p.reciprocal())));
  if (p.at_least_two()) best = std::max(best, kOneDimensionalBohrRadius / std::sqrt(n));
  return best;
}

double upper_bound_K(const BallSpec& ball) {
  require_dimension(ball.n(), "upper_bound_K");
  const auto& p = ball.p();
  const double ratio = std::log(static_cast<double>(ball.n())) / ball.n();
  double best = std::numeric_limits<double>::infinity();
  if (p.at_most_two()) best = std::min(best, 3.0 * std::pow(ratio, 1.0 - p.reciprocal()));
  if (p.at_least_two()) best = std::min(best, 2.0 * std::sqrt(ratio));
  return best;
}

double stir_bound_K(const BallSpec& ball, int d) {
  const int n = ball.n();
  require_degree(n, d, "stir_bound_K");
  const double exponent = 1.0 - ball.p().reciprocal_min_with_two();
  return std::exp(exponent * (log_factorial(d) / d - std::log(static_cast<double>(n))) + log_net_term(n, d));
}

double lower_bound_B(const BallSpec& ball) {
  const auto& p = ball.p();
  const double n = ball.n();
  double best = 0.0;
  if (p.at_most_two()) best = std::max(best, -std::expm1(std::log(2.0 / 3.0) / n));
  if (p.at_least_two()) best = std::max(best, kOneDimensionalBohrRadius * std::pow(n, -(0.5 + p.reciprocal())));
  return best;
}

double upper_bound_B(const BallSpec& ball) {
  require_dimension(ball.n(), "upper_bound_B");
  const auto& p = ball.p();
  const double ratio = std::log(static_cast<double>(ball.n())) / ball.n();
  double best = std::numeric_limits<double>::infinity();
  if (p.at_most_two()) best = std::min(best, 4.0 * ratio);
  if (p.at_least_two()) best = std::min(best, 4.0 * std::pow(ratio, 0.5 + p.reciprocal()));
  return best;
}

double stir_bound_B(const BallSpec& ball, int d) {
  const int n = ball.n();
  require_degree(n, d, "stir_bound_B");
  const auto& p = ball.p();
  const double log_value = -(0.5 + p.reciprocal_max_with_two()) * std::log(static_cast<double>(n)) +
                           p.reciprocal() * std::log(static_cast<double>(d)) +
                           (1.0 - p.reciprocal_min_with_two()) * log_factorial(d) / d + log_net_term(n, d);
  return std::exp(log_value);
}

int default_degree_K(int n) { return 2 + static_cast<int>(std::floor(std::log(static_cast<double>(n)))); }

int default_degree_B(int n) { return static_cast<int>(std::floor(std::log(static_cast<double>(n)))); }

double log_random_bound(int n, int d, const Exponent& p) {
  require_degree(n, d, "random_bound");
  const double prefactor = 0.5 * std::log(32.0 * d * std::log(6.0 * d));
  const double ln_n = std::log(static_cast<double>(n));
  if (p.at_most_two()) return prefactor + 0.5 * ln_n + (1.0 - p.reciprocal()) * log_factorial(d);
  return prefactor + (0.5 + (0.5 - p.reciprocal()) * d) * ln_n + 0.5 * log_factorial(d);
}

double random_bound(int n, int d, const Exponent& p) { return std::exp(log_random_bound(n, d, p)); }

double log_variance_factor(int n, int d, const Exponent& p) {
  require_degree(n, d, "log_variance_factor");
  return 2.0 * (1.0 - p.reciprocal_min_with_two()) * log_factorial(d) +
         (1.0 - 2.0 * p.reciprocal_max_with_two()) * d * std::log(static_cast<double>(n));
}

double log_union_factor(int n, int d) {
  return std::log(8.0) + 2.0 * n * d * std::log1p(4.0 * d);
}

double log_final_prob_bound(int n, int d, const Exponent& p) {
  return 0.5 * (std::log(16.0) + log_variance_factor(n, d, p) + std::log(log_union_factor(n, d)));
}

double final_prob_bound(int n, int d, const Exponent& p) { return std::exp(log_final_prob_bound(n, d, p)); }

ChernoffParams chernoff_params(int n, int d, const Exponent& p) {
  const double log_v = log_variance_factor(n, d, p);
  const double log_r = 0.5 * (std::numbers::ln2 + log_v + std::log(log_union_factor(n, d)));
  return {std::exp(log_r), std::exp(log_r - log_v)};
}

double chebyshev_exponent(int n, int d, const Exponent& p, double R, double lambda) {
  const double v = std::exp(log_variance_factor(n, d, p));
  return -R * lambda + 0.5 * lambda * lambda * v;
}

double log_failure_probability(int n, int d, const Exponent& p, double R, double lambda) {
  return std::log(4.0) + 2.0 * n * d * std::log1p(4.0 * d) + chebyshev_exponent(n, d, p, R, lambda);
}

double log_covering_count(int n, double eps) {
  if (n < 1 || !(eps > 0.0)) throw std::invalid_argument("covering_count: need n >= 1 and eps > 0");
  return 2.0 * n * std::log1p(2.0 / eps);
}

double covering_count(int n, double eps) { return std::exp(log_covering_count(n, eps)); }

BoundReport bound_report(const BallSpec& ball) {
  const int n = ball.n();
  require_dimension(n, "bound_report");
  BoundReport r;
  r.n = n;
  r.p = ball.p();
  r.lower_K = lower_bound_K(ball);
  r.upper_K_raw = upper_bound_K(ball);
  r.upper_K = std::min(r.upper_K_raw, kOneDimensionalBohrRadius);
  r.d_used_K = default_degree_K(n);
  r.stir_K = stir_bound_K(ball, r.d_used_K);
  r.lower_B = lower_bound_B(ball);
  r.upper_B_raw = upper_bound_B(ball);
  r.upper_B = std::min(r.upper_B_raw, kOneDimensionalBohrRadius);
  r.d_used_B = default_degree_B(n);
  if (r.d_used_B >= 2) r.stir_B = stir_bound_B(ball, r.d_used_B);
  return r;
}

}  // namespace bohrlab
