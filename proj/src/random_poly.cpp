#include "bohrlab/random_poly.hpp"

#include <stdexcept>

#include "bohrlab/bounds.hpp"
#include "bohrlab/sign_tensor.hpp"

namespace bohrlab {

double implied_upper_bound(const SparsePolynomial& poly, const BallSpec& ball, RadiusKind kind, double sup_value) {
  if (poly.empty() || !poly.is_homogeneous() || poly.degree() < 1) {
    throw std::invalid_argument("implied_upper_bound: polynomial must be homogeneous of positive degree");
  }
  if (!(sup_value > 0.0)) throw std::invalid_argument("implied_upper_bound: sup_value must be positive");
  return largest_radius(majorant(poly), ball, kind, sup_value);
}

RandomPolyRow random_poly_row(int n, int d, const Exponent& p, std::uint64_t seed, std::size_t budget,
                              unsigned threads) {
  const BallSpec ball(n, p);
  const SparsePolynomial poly = to_homogeneous(draw_sign_tensor(n, d, seed));
  const SupEstimate sup = sup_norm_estimate(poly, ball, budget, seed, threads);

  RandomPolyRow row;
  row.seed = seed;
  row.lower_est = sup.lower_est;
  row.upper_cert = sup.upper_cert;
  row.final_prob_bound = final_prob_bound(n, d, p);
  row.random_bound = random_bound(n, d, p);
  row.implied_r_first_certified = implied_upper_bound(poly, ball, RadiusKind::first, sup.upper_cert);
  row.implied_r_first_empirical = implied_upper_bound(poly, ball, RadiusKind::first, sup.lower_est);
  row.implied_r_second = implied_upper_bound(poly, ball, RadiusKind::second, sup.lower_est);
  row.budget_used = sup.budget_used;
  return row;
}

RedrawResult redraw_until_bound(int n, int d, const Exponent& p, std::uint64_t first_seed, std::size_t max_draws,
                                std::size_t budget, unsigned threads) {
  RedrawResult out;
  for (std::size_t k = 0; k < max_draws; ++k) {
    out.seed = first_seed + k;
    out.row = random_poly_row(n, d, p, out.seed, budget, threads);
    if (out.row.lower_est <= out.row.final_prob_bound) {
      out.found = true;
      out.redraws = k;
      return out;
    }
  }
  out.redraws = max_draws;
  return out;
}

}  // namespace bohrlab
