#pragma once

#include <optional>

#include "bohrlab/ball.hpp"

namespace bohrlab {

/// The one-dimensional Bohr radius; no K(B_p^n) can exceed it.
inline constexpr double kOneDimensionalBohrRadius = 1.0 / 3.0;

/// Positive root x of sum_{k>=1} k^k/k! x^k = 1/2, computed two ways.
struct TreeSolution {
  double closed_form = 0.0;  ///< e^(-1/3) / 3, from T(x) = 1/3 and T e^(-T) = x
  double newton = 0.0;       ///< Newton iterate on the series truncated at 150 terms
  int newton_iterations = 0;
  double series_residual = 0.0;  ///< |sum_{k<=150} k^k/k! x^k - 1/2| at the Newton root
  double tree_value = 0.0;       ///< T(x) = sum k^(k-1)/k! x^k at the Newton root
};

inline constexpr int kTreeSeriesTerms = 150;

TreeSolution tree_solve();

/// sum_{k=1}^{terms} k^(k-power_shift)/k! x^k, each term formed in log space.
double tree_series(double x, int power_shift, int terms = kTreeSeriesTerms);

// Bounds on the Bohr radius K(B_p^n). Logarithms are natural. The upper
// bound functions return the raw formula values; see BoundReport for the
// values clamped to the one-dimensional radius.

double lower_bound_K(const BallSpec& ball);
/// Requires n >= 2.
double upper_bound_K(const BallSpec& ball);
/// ((d!)^(1/d)/n)^(1-1/m(p)) (32 n d log 6d)^(1/(2d)); n, d >= 2.
double stir_bound_K(const BallSpec& ball, int d);

// Bounds on the second Bohr radius B(B_p^n).

double lower_bound_B(const BallSpec& ball);
/// Requires n >= 2.
double upper_bound_B(const BallSpec& ball);
/// n^-(1/2+1/M(p)) d^(1/p) (d!)^((1-1/m(p))/d) (32 n d log 6d)^(1/(2d)); n, d >= 2.
double stir_bound_B(const BallSpec& ball, int d);

/// Degree choices used with the stir bounds: 2 + floor(ln n) and floor(ln n).
int default_degree_K(int n);
int default_degree_B(int n);

// Constants of the random sign construction.

/// Bound on sup |F| over (B_p^n)^d guaranteed for some sign pattern:
/// sqrt(32 d log 6d) n^(1/2) (d!)^(1-1/p) for p <= 2 and
/// sqrt(32 d log 6d) n^(1/2+(1/2-1/p)d) (d!)^(1/2) for p >= 2.
double random_bound(int n, int d, const Exponent& p);
double log_random_bound(int n, int d, const Exponent& p);

/// (16 (d!)^(2(1-1/m)) n^((1-2/M)d) log(8 (1+4d)^(2nd)))^(1/2).
double final_prob_bound(int n, int d, const Exponent& p);
double log_final_prob_bound(int n, int d, const Exponent& p);

/// V = (d!)^(2(1-1/m(p))) n^((1-2/M(p))d), the variance factor of the Chernoff step.
double log_variance_factor(int n, int d, const Exponent& p);
/// log(8 (1+4d)^(2nd)).
double log_union_factor(int n, int d);

struct ChernoffParams {
  double R = 0.0;
  double lambda = 0.0;
};

/// R = (2 V log(8(1+4d)^(2nd)))^(1/2) and lambda = R / V.
ChernoffParams chernoff_params(int n, int d, const Exponent& p);

/// -R lambda + lambda^2 V / 2, the exponent of the one-point tail estimate.
double chebyshev_exponent(int n, int d, const Exponent& p, double R, double lambda);

/// log of 4 (1+4d)^(2nd) exp(chebyshev_exponent): the probability bound that
/// the sup exceeds 2 sqrt(2) R. Equals log(1/2) at the chernoff_params choice.
double log_failure_probability(int n, int d, const Exponent& p, double R, double lambda);

/// (1 + 2/eps)^(2n), the size of an eps-net of the complex l_p^n unit ball.
double log_covering_count(int n, double eps);
double covering_count(int n, double eps);

/// All bounds tabulated for one ball.
struct BoundReport {
  int n = 0;
  Exponent p = Exponent::infinity();
  double lower_K = 0.0;
  double upper_K = 0.0;      ///< clamped to 1/3
  double upper_K_raw = 0.0;
  double stir_K = 0.0;
  int d_used_K = 0;
  double lower_B = 0.0;
  double upper_B = 0.0;      ///< clamped to 1/3
  double upper_B_raw = 0.0;
  std::optional<double> stir_B;  ///< absent when floor(ln n) < 2
  int d_used_B = 0;
};

/// Requires n >= 2.
BoundReport bound_report(const BallSpec& ball);

}  // namespace bohrlab
