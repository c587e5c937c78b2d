#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "bohrlab/bounds.hpp"
#include "bohrlab/estimator.hpp"
#include "bohrlab/multiindex.hpp"
#include "bohrlab/numeric.hpp"
#include "bohrlab/random_poly.hpp"
#include "bohrlab/sign_tensor.hpp"
#include "bohrlab/sup_norm.hpp"
#include "bohrlab/univariate.hpp"
#include "io.hpp"

namespace bohrlab::cli {

namespace {

constexpr std::uint64_t kVerifySeed = 20240601;

class Checks {
 public:
  Checks(std::string group, std::vector<CheckResult>& out) : group_(std::move(group)), out_(out) {}

  void record(std::string name, bool passed, std::string detail = {}) {
    out_.push_back({group_, std::move(name), passed, std::move(detail)});
  }

  void near(std::string name, double value, double expected, double tol) {
    record(std::move(name), std::abs(value - expected) <= tol,
           fmt::format("value {:.12g}, expected {:.12g} +- {:.1e}", value, expected, tol));
  }

 private:
  std::string group_;
  std::vector<CheckResult>& out_;
};

const Exponent kInf = Exponent::infinity();

void check_multiindex(Checks& c, unsigned) {
  bool counts = true;
  bool sums = true;
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 6; ++d) {
      const auto all = enumerate_multiindices(n, d);
      counts = counts && all.size() == binomial(n + d - 1, d) && std::is_sorted(all.begin(), all.end());
      std::uint64_t total = 0;
      for (const auto& a : all) total += multinomial(d, a);
      sums = sums && total == static_cast<std::uint64_t>(std::llround(std::pow(n, d)));
    }
  }
  c.record("enumeration-count-and-order", counts);
  c.record("multinomials-sum-to-n-pow-d", sums);
  c.near("monomial-sup-p1", monomial_sup({1, 1}, BallSpec(2, Exponent::finite(1))), 0.25, 1e-15);
  c.near("monomial-sup-p2", monomial_sup({1, 1}, BallSpec(2, Exponent::finite(2))), 0.5, 1e-15);
  c.near("monomial-sup-inf", monomial_sup({3, 2}, BallSpec(2, kInf)), 1.0, 0.0);
}

void check_bohr1d(Checks& c, unsigned) {
  double previous = 1.0;
  bool decreasing = true;
  for (double a : {0.5, 0.9, 0.99}) {
    const double r = bohr_radius_1d(moebius_coeffs(a, 300));
    c.near(fmt::format("moebius-a{}", a), r, 1.0 / (1.0 + 2.0 * a), 1e-4);
    decreasing = decreasing && r < previous && r > 1.0 / 3.0 - 1e-4;
    previous = r;
  }
  c.record("radii-decrease-toward-one-third", decreasing);
}

void check_wintner(Checks& c, unsigned) {
  c.near("moebius-inverse-sqrt2", wintner_objective(moebius_coeffs(std::numbers::sqrt2 / 2.0, 400)).value, 2.0, 1e-6);
  std::mt19937_64 engine(splitmix64(kVerifySeed));
  bool below = true;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Complex> coeffs(8 + engine() % 24);
    double norm = 0.0;
    for (auto& v : coeffs) {
      v = Complex(uniform01(engine) - 0.5, uniform01(engine) - 0.5);
      norm += std::norm(v);
    }
    const double scale = std::sqrt(uniform01(engine)) / std::sqrt(norm);
    for (auto& v : coeffs) v *= scale;
    const UnivariateSeries s(coeffs);
    const double obj = wintner_objective(s).value;
    const double cap = wintner_h2_bound(std::abs(s[0]));
    below = below && obj <= cap + 1e-9 && cap <= 2.0 + 1e-12;
    worst = std::max(worst, obj);
  }
  c.record("random-h2-series-below-bound", below, fmt::format("largest objective {:.12g}", worst));
  c.near("h2-bound-at-inverse-sqrt2", wintner_h2_bound(std::numbers::sqrt2 / 2.0), 2.0, 1e-12);
}

void check_caratheodory(Checks& c, unsigned) {
  bool all = true;
  for (double a : {0.1, 0.5, 0.9, 0.99}) all = all && caratheodory_check(moebius_coeffs(a, 200)).passes;
  c.record("moebius-factors-pass", all);
  c.record("oversized-coefficient-fails", !caratheodory_check(UnivariateSeries::from_real({0.5, 1.2})).passes);
}

void check_wiener(Checks& c, unsigned) {
  std::mt19937_64 engine(splitmix64(kVerifySeed + 1));
  bool divisible = true;
  bool sup_ok = true;
  for (int t = 0; t < 20; ++t) {
    SparsePolynomial poly(2);
    for (const auto& beta : enumerate_multiindices(2, 0)) poly.set_coefficient(beta, 0.3);
    for (int k = 1; k <= 4; ++k) {
      for (const auto& beta : enumerate_multiindices(2, k)) {
        poly.set_coefficient(beta, Complex(uniform01(engine) - 0.5, uniform01(engine) - 0.5));
      }
    }
    const MultiIndex alpha{static_cast<int>(1 + engine() % 2), static_cast<int>(1 + engine() % 3)};
    const auto avg = wiener_average(poly, alpha, 1.0).averaged;
    for (const auto& [beta, coef] : avg.terms()) divisible = divisible && beta[0] % alpha[0] == 0 && beta[1] % alpha[1] == 0;
    for (int s = 0; s < 50; ++s) {
      const std::vector<Complex> z{std::polar(1.0, 2 * std::numbers::pi * uniform01(engine)),
                                   std::polar(1.0, 2 * std::numbers::pi * uniform01(engine))};
      double orbit_max = 0.0;
      for (int k0 = 0; k0 < alpha[0]; ++k0) {
        for (int k1 = 0; k1 < alpha[1]; ++k1) {
          const std::vector<Complex> w{z[0] * std::polar(1.0, 2 * std::numbers::pi * k0 / alpha[0]),
                                       z[1] * std::polar(1.0, 2 * std::numbers::pi * k1 / alpha[1])};
          orbit_max = std::max(orbit_max, std::abs(eval(poly, w)));
        }
      }
      sup_ok = sup_ok && std::abs(eval(avg, z)) <= orbit_max + 1e-9;
    }
  }
  c.record("only-divisible-exponents-survive", divisible);
  c.record("average-bounded-by-rotation-orbit", sup_ok);
}

void check_tree(Checks& c, unsigned) {
  const TreeSolution t = tree_solve();
  c.near("newton-matches-closed-form", t.newton, t.closed_form, 1e-9);
  c.near("closed-form-value", t.closed_form, 1.0 / (3.0 * std::cbrt(std::numbers::e)), 1e-15);
  c.near("tree-value-one-third", t.tree_value, 1.0 / 3.0, 1e-9);
}

void check_bounds(Checks& c, unsigned) {
  bool sandwich = true;
  for (int n = 2; n <= 500; ++n) {
    for (const auto& p : {Exponent::finite(1), Exponent::finite(1.5), Exponent::finite(2), Exponent::finite(4), kInf}) {
      const BoundReport r = bound_report(BallSpec(n, p));
      sandwich = sandwich && r.lower_K <= r.upper_K && r.lower_B <= r.upper_B && r.lower_B <= r.lower_K + 1e-15;
    }
  }
  c.record("lower-below-upper", sandwich);
  c.near("lower-K-n2-p1", bound_report(BallSpec(2, Exponent::finite(1))).lower_K, 0.2388437701912631, 1e-12);
  c.record("upper-K-n189-inf-at-most-one-third", bound_report(BallSpec(189, kInf)).upper_K_raw <= 1.0 / 3.0);
}

void check_crossovers(Checks& c, unsigned) {
  int last_k = 0;
  int last_b = 0;
  for (int n = 2; n <= 5000; ++n) {
    const double ratio = std::log(static_cast<double>(n)) / n;
    if (2.0 * std::sqrt(ratio) > 1.0 / 3.0) last_k = n;
    if (4.0 * ratio > 1.0 / 3.0) last_b = n;
  }
  c.record("polydisc-K-upper-exceeds-one-third-through-188", last_k == 188, fmt::format("last n = {}", last_k));
  c.record("B-upper-exceeds-one-third-through-45", last_b == 45, fmt::format("last n = {}", last_b));

  int first_k = 0;
  for (int n = 5000; n >= 2; --n) {
    const BallSpec ball(n, kInf);
    if (stir_bound_K(ball, default_degree_K(n)) > upper_bound_K(ball)) {
      first_k = n + 1;
      break;
    }
  }
  c.record("stirling-K-beats-upper-from-149", first_k == 149, fmt::format("holds from n = {}", first_k));

  int first_b = 0;
  for (const auto& p : {Exponent::finite(1), Exponent::finite(2), kInf}) {
    for (int n = 5000; n >= 2; --n) {
      const BallSpec ball(n, p);
      const int d = default_degree_B(n);
      if (d < 2 || stir_bound_B(ball, d) > upper_bound_B(ball)) {
        first_b = std::max(first_b, n + 1);
        break;
      }
    }
  }
  c.record("stirling-B-beats-upper-from-29", first_b == 29, fmt::format("holds from n = {}", first_b));
}

void check_chernoff(Checks& c, unsigned) {
  bool ordered = true;
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (int d = 2; d <= 10; ++d) {
      for (const auto& p : {Exponent::finite(1), Exponent::finite(1.5), Exponent::finite(2), Exponent::finite(4), kInf}) {
        ordered = ordered && final_prob_bound(n, d, p) <= random_bound(n, d, p);
        const auto cp = chernoff_params(n, d, p);
        const double f = final_prob_bound(n, d, p);
        worst = std::max(worst, std::abs(2.0 * std::numbers::sqrt2 * cp.R - f) / f);
      }
    }
  }
  c.record("final-below-random-bound", ordered);
  c.record("chernoff-R-identity", worst <= 1e-9, fmt::format("max relative deviation {:.3e}", worst));
}

void check_random_poly(Checks& c, unsigned threads) {
  std::mt19937_64 engine(splitmix64(kVerifySeed + 2));
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SignTensor t = draw_sign_tensor(4, 3, seed);
    const SparsePolynomial poly = to_homogeneous(t);
    std::vector<std::vector<Complex>> Z(3, std::vector<Complex>(4));
    for (auto& v : Z) {
      for (auto& x : v) x = Complex(uniform01(engine) - 0.5, uniform01(engine) - 0.5);
    }
    const Complex f = multilinear_eval(t, Z);
    std::swap(Z[0], Z[2]);
    worst = std::max(worst, std::abs(multilinear_eval(t, Z) - f) / std::abs(f));
    const std::vector<std::vector<Complex>> diag(3, Z[1]);
    const Complex direct = eval(poly, Z[1]);
    worst = std::max(worst, std::abs(multilinear_eval(t, diag) - direct) / std::abs(direct));
  }
  c.record("symmetry-and-diagonal-identity", worst <= 1e-9, fmt::format("max relative deviation {:.3e}", worst));
  const SparsePolynomial poly = to_homogeneous(draw_sign_tensor(4, 3, 7));
  const BallSpec ball(4, kInf);
  const SupEstimate small = sup_norm_estimate(poly, ball, 4000, 7, threads);
  const SupEstimate large = sup_norm_estimate(poly, ball, 8000, 7, threads);
  c.record("sup-estimate-below-certificate", small.lower_est <= small.upper_cert + 1e-9);
  c.record("sup-estimate-monotone-in-budget", large.lower_est >= small.lower_est);
  c.record("second-kind-below-first-kind",
           implied_upper_bound(poly, BallSpec(4, Exponent::finite(2)), RadiusKind::second, small.lower_est) <=
               implied_upper_bound(poly, BallSpec(4, Exponent::finite(2)), RadiusKind::first, small.lower_est) + 1e-9);
}

void check_estimator(Checks& c, unsigned threads) {
  EstimatorConfig one;
  one.include_moebius = true;
  one.budget = kMoebiusBudgetCap;
  one.threads = threads;
  const auto r1 = estimate(BallSpec(1, kInf), one);
  c.near("polydisc-n1-recovers-one-third", r1.empirical_upper_K, 1.0 / 3.0, 2e-3);

  EstimatorConfig two;
  two.degrees = {2, 3};
  two.seeds = {0, 1, 2, 3};
  two.budget = 20000;
  two.include_moebius = true;
  two.threads = threads;
  const auto r2 = estimate(BallSpec(2, kInf), two);
  const double lo = 1.0 / (3.0 * std::numbers::sqrt2);
  c.record("polydisc-n2-bracket", r2.empirical_upper_K >= lo && r2.empirical_upper_K <= 1.0 / 3.0 + 1e-3,
           fmt::format("empirical upper K {:.12g}", r2.empirical_upper_K));
  bool per_candidate = true;
  for (const auto& rec : r2.candidates) {
    per_candidate = per_candidate && std::abs(rec.radius_first.empirical - rec.radius_second.empirical) <= 1e-6;
  }
  c.record("polydisc-kinds-coincide", per_candidate);
}

using GroupFn = std::function<void(Checks&, unsigned)>;

const std::vector<std::pair<std::string, GroupFn>>& groups() {
  static const std::vector<std::pair<std::string, GroupFn>> table{
      {"multiindex", check_multiindex}, {"bohr1d", check_bohr1d},         {"wintner", check_wintner},
      {"caratheodory", check_caratheodory}, {"wiener", check_wiener},     {"tree", check_tree},
      {"bounds", check_bounds},         {"crossovers", check_crossovers}, {"chernoff", check_chernoff},
      {"random-poly", check_random_poly}, {"estimator", check_estimator},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : groups()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_verify(const std::vector<std::string>& only, unsigned threads) {
  for (const auto& name : only) {
    if (std::find(verify_groups().begin(), verify_groups().end(), name) == verify_groups().end()) {
      throw UsageError("unknown verify group '" + name + "'");
    }
  }
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : groups()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Checks checks(name, out);
    try {
      fn(checks, threads);
    } catch (const std::exception& e) {
      checks.record("completed", false, e.what());
    }
  }
  return out;
}

}  // namespace bohrlab::cli
