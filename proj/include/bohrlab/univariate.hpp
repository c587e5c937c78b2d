#pragma once

#include <vector>

#include "bohrlab/ball.hpp"
#include "bohrlab/multiindex.hpp"
#include "bohrlab/polynomial.hpp"

namespace bohrlab {

/// Truncated one-variable power series c_0 + c_1 z + ... + c_K z^K.
class UnivariateSeries {
 public:
  explicit UnivariateSeries(std::vector<Complex> coeffs);
  static UnivariateSeries from_real(const std::vector<double>& coeffs);

  /// Truncation order K.
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

  Complex eval(Complex z) const;
  bool is_zero() const;

  /// The series as a polynomial in dim variables acting on coordinate var.
  SparsePolynomial embed(std::size_t dim, std::size_t var = 0) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Cauchy product truncated at order K.
UnivariateSeries multiply_truncated(const UnivariateSeries& a, const UnivariateSeries& b, int K);

/// Maclaurin coefficients of (z - a)/(1 - a z), 0 < a < 1, through order K:
/// c_0 = -a and c_k = (1 - a^2) a^(k-1).
UnivariateSeries moebius_coeffs(double a, int K);

/// Smallest K for which the dropped tail of moebius_coeffs(a, K) is at most tail on |z| <= 1.
int moebius_truncation_order(double a, double tail);

/// sum |c_k| r^k for 0 <= r < 1.
double majorant_sum(const UnivariateSeries& s, double r);

/// Result of the sampled unit-ball membership test.
///
/// The stored coefficients are a truncation, so the test allows for the
/// largest tail any H^2-unit-ball function with these leading coefficients
/// could have at the sampling radius: sqrt(1 - sum|c_k|^2) rho^(K+1) / sqrt(1 - rho^2).
struct UnitBallSample {
  double radius = 0.0;
  double sampled_max = 0.0;
  double tail_allowance = 0.0;
  bool consistent = false;
};

UnitBallSample sample_unit_ball(const UnivariateSeries& s, double radius = 0.999, int samples = 256);

/// Largest r in [0, 1] with majorant_sum(s, r) <= 1, to absolute tolerance 1e-8.
/// Throws std::domain_error when the sampled modulus rules out |f| <= 1.
double bohr_radius_1d(const UnivariateSeries& s);

struct CaratheodoryResult {
  bool passes = false;
  /// max_k |c_k| / (2 (1 - |c_0|)); 0 for a constant, +inf when the bound is degenerate and violated.
  double worst_ratio = 0.0;
  int worst_index = 0;
};

/// Tests |c_k| <= 2(1 - |c_0|) + 1e-9 for 1 <= k <= K.
CaratheodoryResult caratheodory_check(const UnivariateSeries& s);

double h2_norm(const UnivariateSeries& s);

struct WintnerResult {
  double value = 0.0;
  double argmin = 0.0;
};

/// inf over r in (1e-9, 1 - 1e-9) of majorant_sum(s, r) / r.
WintnerResult wintner_objective(const UnivariateSeries& s);

/// min over r in (0, 1) of |c_0|/r + sqrt(1 - |c_0|^2)/sqrt(1 - r^2).
double wintner_h2_bound(double c0_modulus);

struct WienerAverage {
  /// Root-of-unity average: only terms whose j-th exponent is divisible by
  /// alpha_j for every j with alpha_j != 0 survive.
  SparsePolynomial averaged;
  /// (1 - |c_0|^2) b, a bound on |d^alpha f(0)|.
  double derivative_bound = 0.0;
  /// derivative_bound / alpha!, a bound on |c_alpha|.
  double coefficient_bound = 0.0;
};

/// b is an upper bound on |d^alpha f(0)| valid for the whole unit ball of
/// bounded functions on the domain.
WienerAverage wiener_average(const SparsePolynomial& poly, const MultiIndex& alpha, double bound_b);

/// Cauchy's estimate for |d^alpha f(0)| over functions bounded by 1 on the ball:
/// alpha! / sup_{ball} |z^alpha|.
double cauchy_derivative_bound(const MultiIndex& alpha, const BallSpec& ball);

}  // namespace bohrlab
