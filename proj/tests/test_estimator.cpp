#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bohrlab/estimator.hpp"
#include "bohrlab/majorant_sup.hpp"
#include "bohrlab/sign_tensor.hpp"
#include "bohrlab/univariate.hpp"
#include "oracles.hpp"

using namespace bohrlab;

namespace {

// max of sum c_alpha x^alpha over x >= 0 with x_1^p + x_2^p = r^p, by a fine angle grid.
double two_variable_grid_max(const SparsePolynomial& q, double p, double r, int steps = 200000) {
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const double x1 = r * std::pow(t, 1.0 / p);
    const double x2 = r * std::pow(1.0 - t, 1.0 / p);
    double v = 0.0;
    for (const auto& [alpha, c] : q.terms()) v += c.real() * std::pow(x1, alpha[0]) * std::pow(x2, alpha[1]);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

TEST_CASE("majorant sup on the polydisc is the diagonal value") {
  SparsePolynomial q(2);
  q.set_coefficient({0, 0}, 0.5);
  q.set_coefficient({1, 2}, 2.0);
  q.set_coefficient({3, 0}, 1.0);
  const double r = 0.7;
  CHECK(majorant_sup(q, BallSpec(2, Exponent::infinity()), r) == doctest::Approx(0.5 + 2.0 * std::pow(r, 3) + std::pow(r, 3)));
}

TEST_CASE("majorant sup of a single monomial") {
  for (const auto& p : {Exponent::finite(1), Exponent::finite(2), Exponent::finite(3.5), Exponent::infinity()}) {
    const BallSpec ball(3, p);
    SparsePolynomial q(3);
    const MultiIndex alpha{2, 0, 1};
    q.set_coefficient(alpha, 1.5);
    CHECK(majorant_sup(q, ball, 0.6) == doctest::Approx(1.5 * std::pow(0.6, 3) * monomial_sup(alpha, ball)).epsilon(1e-9));
  }
}

TEST_CASE("majorant sup of z1 + z2") {
  SparsePolynomial q(2);
  q.set_coefficient({1, 0}, 1.0);
  q.set_coefficient({0, 1}, 1.0);
  CHECK(majorant_sup(q, BallSpec(2, Exponent::finite(2)), 1.0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
  CHECK(majorant_sup(q, BallSpec(2, Exponent::finite(1)), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(majorant_sup(q, BallSpec(2, Exponent::infinity()), 1.0) == doctest::Approx(2.0));
}

TEST_CASE("majorant sup against a grid on random non-negative polynomials") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    SparsePolynomial q(2);
    for (int k = 0; k < 6; ++k) q.add_term(MultiIndex{static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)}, u(rng));
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double r = 0.3 + 0.7 * u(rng);
      const double grid = two_variable_grid_max(q, p, r);
      const double got = majorant_sup(q, BallSpec(2, Exponent::finite(p)), r);
      CHECK(got == doctest::Approx(grid).epsilon(1e-6));
    }
  }
}

TEST_CASE("majorant sup input checks") {
  SparsePolynomial q(2);
  q.set_coefficient({1, 0}, -1.0);
  CHECK_THROWS_AS(majorant_sup(q, BallSpec(2, Exponent::finite(2)), 0.5), std::invalid_argument);
  q.set_coefficient({1, 0}, Complex(1.0, 1.0));
  CHECK_THROWS_AS(majorant_sup(q, BallSpec(2, Exponent::finite(2)), 0.5), std::invalid_argument);
  q.set_coefficient({1, 0}, 1.0);
  CHECK_THROWS_AS(majorant_sup(q, BallSpec(2, Exponent::finite(2)), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(majorant_sup(q, BallSpec(3, Exponent::finite(2)), 0.5), std::invalid_argument);
}

TEST_CASE("candidate radius of an embedded moebius factor matches the one-variable radius") {
  for (double a : {0.5, 0.9, 0.99}) {
    const auto series = moebius_coeffs(a, moebius_truncation_order(a, 1e-12));
    const auto poly = series.embed(1);
    const BallSpec disc(1, Exponent::infinity());
    const SupEstimate sup = sup_norm_estimate(poly, disc, 2000, 0);
    const CandidateRadius r = radius_of_candidate(poly, disc, RadiusKind::first, sup);
    CHECK(std::abs(r.empirical - bohr_radius_1d(series)) < 1e-4);
    CHECK(r.certified >= r.empirical);
  }
}

TEST_CASE("candidate radius: kinds on the polydisc and the all-plus polynomial") {
  const BallSpec disc(3, Exponent::infinity());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = to_homogeneous(draw_sign_tensor(3, 3, seed));
    const SupEstimate s = sup_norm_estimate(p, disc, 5000, seed);
    const auto first = radius_of_candidate(p, disc, RadiusKind::first, s);
    const auto second = radius_of_candidate(p, disc, RadiusKind::second, s);
    CHECK(std::abs(first.empirical - second.empirical) <= 1e-6);
    CHECK(std::abs(first.certified - second.certified) <= 1e-6);
  }
  const auto plus = to_homogeneous(SignTensor::constant(3, 3, 1));
  const SupEstimate s = sup_norm_estimate(plus, disc, 5000, 0);
  CHECK(radius_of_candidate(plus, disc, RadiusKind::first, s).empirical == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(radius_of_candidate(SparsePolynomial(3), disc, RadiusKind::first, s), std::invalid_argument);
}

TEST_CASE("non-homogeneous radii: second never exceeds first") {
  const auto f = moebius_coeffs(0.5, moebius_truncation_order(0.5, 1e-10));
  const auto pair = tensor_product(f.embed(1), f.embed(1));
  for (const auto& e : {Exponent::finite(1), Exponent::finite(2), Exponent::infinity()}) {
    const BallSpec ball(2, e);
    const SupEstimate s = sup_norm_estimate(pair, ball, 2000, 1);
    const auto first = radius_of_candidate(pair, ball, RadiusKind::first, s);
    const auto second = radius_of_candidate(pair, ball, RadiusKind::second, s);
    CHECK(second.empirical <= first.empirical + 1e-9);
    CHECK(second.certified <= first.certified + 1e-9);
    if (e.is_infinite()) CHECK(std::abs(first.empirical - second.empirical) <= 1e-6);
  }
}

TEST_CASE("estimate: report invariants") {
  EstimatorConfig config;
  config.degrees = {2, 3};
  config.seeds = {0, 1, 2};
  config.budget = 3000;
  config.include_moebius = true;
  for (const auto& e : {Exponent::finite(1), Exponent::finite(2), Exponent::infinity()}) {
    for (int n = 2; n <= 3; ++n) {
      const EstimateReport r = estimate(BallSpec(n, e), config);
      CHECK(r.candidates_tried == r.candidates.size());
      CHECK(r.candidates_tried == 6 + 7);
      CHECK(r.theoretical_lower_K <= r.empirical_upper_K + 1e-6);
      CHECK(r.theoretical_lower_B <= r.empirical_upper_B + 1e-6);
      CHECK(r.empirical_upper_B <= r.empirical_upper_K + 1e-9);
      CHECK(r.empirical_upper_K > 0.0);
      CHECK(r.empirical_upper_K <= 1.0);
      double previous = 1.0;
      for (const auto& c : r.candidates) {
        CHECK(c.running_upper_K <= previous);
        previous = c.running_upper_K;
        CHECK(c.radius_second.empirical <= c.radius_first.empirical + 1e-9);
      }
      CHECK(previous == r.empirical_upper_K);
      REQUIRE(r.best_witness.has_value());
      CHECK(r.candidates[r.best_index].radius_first.empirical == r.empirical_upper_K);
    }
  }
}

TEST_CASE("estimate: determinism and thread independence") {
  EstimatorConfig config;
  config.degrees = {2, 4};
  config.seeds = {3, 4};
  config.budget = 2000;
  config.include_moebius = true;
  const BallSpec ball(2, Exponent::finite(2));
  const EstimateReport a = estimate(ball, config);
  config.threads = 3;
  const EstimateReport b = estimate(ball, config);
  REQUIRE(a.candidates.size() == b.candidates.size());
  CHECK(a.empirical_upper_K == b.empirical_upper_K);
  CHECK(a.empirical_upper_B == b.empirical_upper_B);
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].lower_est == b.candidates[i].lower_est);
    CHECK(a.candidates[i].radius_first.empirical == b.candidates[i].radius_first.empirical);
  }
  CHECK(*a.best_witness == *b.best_witness);
}

TEST_CASE("estimate: configuration errors") {
  EstimatorConfig config;
  CHECK_THROWS_AS(estimate(BallSpec(2, Exponent::infinity()), config), std::invalid_argument);
  config.degrees = {2};
  config.seeds = {0};
  CHECK_THROWS_AS(estimate(BallSpec(1, Exponent::infinity()), config), std::invalid_argument);
  CHECK_THROWS_AS(estimate(BallSpec(9, Exponent::infinity()), config), std::invalid_argument);
  config.degrees = {9};
  CHECK_THROWS_AS(estimate(BallSpec(2, Exponent::infinity()), config), std::invalid_argument);
  config.degrees = {1};
  CHECK_THROWS_AS(estimate(BallSpec(2, Exponent::infinity()), config), std::invalid_argument);
}

TEST_CASE("estimate on the disc recovers one third") {
  EstimatorConfig config;
  config.include_moebius = true;
  config.budget = 2000;
  const EstimateReport r = estimate(BallSpec(1, Exponent::infinity()), config);
  CHECK(r.candidates_tried == kMoebiusSingleParameters.size());
  CHECK(std::abs(r.empirical_upper_K - 1.0 / 3.0) < 2e-3);
  CHECK(r.theoretical_lower_K == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("first-kind radius of a non-homogeneous polynomial against grid bisection") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 6; ++t) {
    SparsePolynomial q(2);
    q.set_coefficient({0, 0}, 0.2);
    for (int k = 0; k < 5; ++k) q.add_term(MultiIndex{static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3)}, u(rng));
    q.add_term(MultiIndex{2, 0}, u(rng));
    for (double p : {1.0, 2.0, 3.0}) {
      const double level = 1.0 + u(rng);
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (two_variable_grid_max(q, p, mid, 20000) <= level ? lo : hi) = mid;
      }
      const double got = largest_radius(q, BallSpec(2, Exponent::finite(p)), RadiusKind::first, level);
      CHECK(got == doctest::Approx(lo).epsilon(1e-5));
    }
  }
}
