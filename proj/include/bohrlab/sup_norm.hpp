#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bohrlab/ball.hpp"
#include "bohrlab/polynomial.hpp"

namespace bohrlab {

/// Two-sided estimate of sup |P| over a ball.
struct SupEstimate {
  /// Largest |P(z)| seen at an evaluated point: a lower bound on the sup.
  double lower_est = 0.0;
  /// sum |c_alpha| sup|z^alpha|: an upper bound on the sup.
  double upper_cert = 0.0;
  /// Point in the closed ball where lower_est was attained.
  std::vector<Complex> argmax_point;
  std::size_t budget_used = 0;

  /// (upper_cert - lower_est) / lower_est.
  double relative_gap() const;
};

inline constexpr std::size_t kDefaultSupBudget = 200000;

/// Number of independent search units: max(32, 4n).
std::size_t sup_search_starts(int n);

/// Multi-start boundary ascent plus random boundary sampling.
///
/// On the polydisc the search runs over the torus in angle coordinates (the
/// maximum modulus principle puts the max there); for finite p it steps in
/// C^n and rescales back onto the l_p sphere. A quarter of the budget goes to
/// random sampling. Each unit gets its own derived seed and a fixed share of
/// the budget, so the result depends only on (poly, ball, budget, seed), not
/// on the thread count, and raising the budget only adds evaluations.
SupEstimate sup_norm_estimate(const SparsePolynomial& poly, const BallSpec& ball,
                              std::size_t budget = kDefaultSupBudget, std::uint64_t seed = 0,
                              unsigned threads = 1);

}  // namespace bohrlab
