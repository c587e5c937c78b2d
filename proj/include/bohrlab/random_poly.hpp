#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bohrlab/ball.hpp"
#include "bohrlab/majorant_sup.hpp"
#include "bohrlab/polynomial.hpp"
#include "bohrlab/sup_norm.hpp"

namespace bohrlab {

/// Largest r in [0, 1] compatible with sup |P| = sup_value for a homogeneous P:
/// kind first compares sup_{rB} sum |c_alpha z^alpha| with sup_value, kind
/// second compares sum |c_alpha| sup_B |z^alpha| r^d. Passing a lower estimate
/// of the sup gives the empirical value, passing a certified upper bound the
/// rigorous (weaker) one.
double implied_upper_bound(const SparsePolynomial& poly, const BallSpec& ball, RadiusKind kind, double sup_value);

/// One draw of the random +-multinomial polynomial and what it implies.
struct RandomPolyRow {
  std::uint64_t seed = 0;
  double lower_est = 0.0;
  double upper_cert = 0.0;
  double final_prob_bound = 0.0;
  double random_bound = 0.0;
  double implied_r_first_certified = 0.0;
  double implied_r_first_empirical = 0.0;
  double implied_r_second = 0.0;
  std::size_t budget_used = 0;
};

/// Draws the sign tensor for seed, collapses it and estimates its sup.
RandomPolyRow random_poly_row(int n, int d, const Exponent& p, std::uint64_t seed, std::size_t budget,
                              unsigned threads = 1);

struct RedrawResult {
  bool found = false;
  std::uint64_t seed = 0;
  /// Draws rejected before the accepted one.
  std::size_t redraws = 0;
  RandomPolyRow row;
};

/// Tries seeds first_seed, first_seed + 1, ... until the estimated sup is at
/// most final_prob_bound, giving up after max_draws draws.
RedrawResult redraw_until_bound(int n, int d, const Exponent& p, std::uint64_t first_seed, std::size_t max_draws,
                                std::size_t budget, unsigned threads = 1);

}  // namespace bohrlab
