// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bohrlab/bounds.hpp"
#include "bohrlab/estimator.hpp"
#include "bohrlab/multiindex.hpp"
#include "bohrlab/random_poly.hpp"
#include "bohrlab/sign_tensor.hpp"
#include "bohrlab/univariate.hpp"
#include "oracles.hpp"

using namespace bohrlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run_criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < time_limit_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s [%s; %.3f s of %.1f s]\n", pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs,
              time_limit_s);
  std::fflush(stdout);
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

unsigned hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome bohr_sharpness() {
  Outcome out;
  double previous = 1.0;
  for (double a : {0.5, 0.9, 0.99}) {
    const double r = bohr_radius_1d(moebius_coeffs(a, 300));
    const double expected = 1.0 / (1.0 + 2.0 * a);
    out.ok = out.ok && std::abs(r - expected) <= 1e-4 && r < previous && r > 1.0 / 3.0 - 1e-4;
    previous = r;
    out.detail += "a=" + fmt_num(a) + ": " + fmt_num(r) + " ";
  }
  return out;
}

Outcome wintner() {
  Outcome out;
  const double a = 1.0 / std::numbers::sqrt2;
  const WintnerResult extremal = wintner_objective(moebius_coeffs(a, 400));
  out.ok = std::abs(extremal.value - 2.0) <= 1e-6;
  out.detail = "extremal objective " + fmt_num(extremal.value);

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  bool oracle_agrees = true;
  for (int t = 0; t < 50; ++t) {
    const int K = 5 + static_cast<int>(rng() % 60);
    std::vector<Complex> c(static_cast<std::size_t>(K) + 1);
    for (auto& v : c) v = Complex(g(rng), g(rng)) * std::exp(-0.05 * static_cast<double>(&v - c.data()));
    double norm = 0.0;
    for (const auto& v : c) norm += std::norm(v);
    const double target = 0.05 + 0.95 * u(rng);
    for (auto& v : c) v *= target / std::sqrt(norm);
    const UnivariateSeries s(c);
    if (h2_norm(s) > 1.0) return {false, "generator produced h2 > 1"};
    const double value = wintner_objective(s).value;
    worst = std::max(worst, value);
    oracle_agrees = oracle_agrees && value <= oracle::wintner_grid_min(c, 20000) + 1e-9;
  }
  out.ok = out.ok && worst <= 2.0 + 1e-9 && oracle_agrees;
  out.detail += ", worst of 50 random " + fmt_num(worst) + (oracle_agrees ? "" : ", grid oracle disagrees");
  return out;
}

Outcome tree() {
  const TreeSolution t = tree_solve();
  const double closed = 1.0 / (3.0 * std::cbrt(std::numbers::e));
  // independent series root: sum_{k>=1} k^k/k! x^k = 1/2 by bisection
  long double lo = 0.2L, hi = 0.25L;
  for (int it = 0; it < 80; ++it) {
    const long double mid = 0.5L * (lo + hi);
    long double sum = 0.0L;
    for (int k = 1; k <= 300; ++k) sum += std::exp(k * std::log(static_cast<long double>(k)) - std::lgamma(k + 1.0L) + k * std::log(mid));
    (sum < 0.5L ? lo : hi) = mid;
  }
  const double series_root = static_cast<double>(lo);
  Outcome out;
  out.ok = std::abs(t.newton - closed) <= 1e-9 && std::abs(t.closed_form - closed) <= 1e-15 &&
           std::abs(t.newton - series_root) <= 1e-9 && std::abs(t.tree_value - 1.0 / 3.0) <= 1e-9;
  out.detail = "x = " + fmt_num(t.newton) + ", T(x) = " + fmt_num(t.tree_value);
  return out;
}

Outcome monomial_oracle() {
  Outcome out;
  double worst = 0.0;
  int count = 0;
  const std::vector<double> exponents{1.0, 1.5, 2.0, 3.0, INFINITY};
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= 4; ++k) {
      for (const auto& alpha : enumerate_multiindices(n, k)) {
        const std::vector<int> a(alpha.exponents().begin(), alpha.exponents().end());
        for (double p : exponents) {
          const Exponent e = std::isinf(p) ? Exponent::infinity() : Exponent::finite(p);
          const double got = monomial_sup(alpha, BallSpec(n, e));
          const double want = std::isinf(p) ? 1.0 : oracle::sphere_monomial_max(a, p);
          worst = std::max(worst, std::abs(got - want));
          ++count;
        }
      }
    }
  }
  out.ok = worst <= 1e-3;
  out.detail = std::to_string(count) + " cases, worst deviation " + fmt_num(worst);
  return out;
}

Outcome crossovers() {
  auto upper_K_poly = [](int n) { return 2.0 * std::sqrt(std::log(static_cast<double>(n)) / n); };
  auto upper_B_rate = [](int n) { return 4.0 * std::log(static_cast<double>(n)) / n; };
  bool ok = true;
  for (int n = 2; n <= 5000; ++n) {
    ok = ok && ((upper_K_poly(n) > 1.0 / 3.0) == (n <= 188));
    ok = ok && ((upper_B_rate(n) > 1.0 / 3.0) == (n <= 45));
  }
  std::string detail = ok ? "188/45 thresholds exact" : "threshold mismatch";

  bool k_ok = true;
  for (int n = 149; n <= 5000; ++n) {
    const BallSpec ball(n, Exponent::infinity());
    k_ok = k_ok && stir_bound_K(ball, 2 + static_cast<int>(std::floor(std::log(n)))) <= upper_K_poly(n);
  }
  {
    const BallSpec ball(148, Exponent::infinity());
    k_ok = k_ok && stir_bound_K(ball, 2 + static_cast<int>(std::floor(std::log(148.0)))) > upper_K_poly(148);
  }
  detail += k_ok ? ", K from 149" : ", K crossover wrong";

  bool b_ok = true;
  bool fails_at_28 = false;
  for (const auto& p : {Exponent::finite(1), Exponent::finite(2), Exponent::infinity()}) {
    for (int n = 29; n <= 5000; ++n) {
      const BallSpec ball(n, p);
      b_ok = b_ok && stir_bound_B(ball, static_cast<int>(std::floor(std::log(n)))) <= upper_bound_B(ball);
    }
    const BallSpec ball28(28, p);
    fails_at_28 = fails_at_28 || stir_bound_B(ball28, static_cast<int>(std::floor(std::log(28.0)))) > upper_bound_B(ball28);
  }
  b_ok = b_ok && fails_at_28;
  detail += b_ok ? ", B from 29" : ", B crossover wrong";
  return {ok && k_ok && b_ok, detail};
}

Outcome chernoff() {
  bool ordered = true;
  double worst_rel = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (int d = 2; d <= 10; ++d) {
      for (const auto& p : {Exponent::finite(1), Exponent::finite(1.5), Exponent::finite(2), Exponent::finite(4), Exponent::infinity()}) {
        const double fin = final_prob_bound(n, d, p);
        ordered = ordered && fin <= random_bound(n, d, p);
        const ChernoffParams c = chernoff_params(n, d, p);
        worst_rel = std::max(worst_rel, std::abs(2.0 * std::numbers::sqrt2 * c.R - fin) / fin);
      }
    }
  }
  return {ordered && worst_rel <= 1e-9, std::string(ordered ? "ordered" : "order violated") + ", identity rel err " + fmt_num(worst_rel)};
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

Outcome random_construction() {
  const unsigned threads = hardware_threads();
  double worst_identity = 0.0;
  std::string detail;
  bool ok = true;
  for (const auto& [n, d] : {std::pair{4, 3}, std::pair{6, 4}}) {
    for (const auto& p : {Exponent::finite(2), Exponent::infinity()}) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(n * 100 + d));
      int below = 0;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SignTensor t = draw_sign_tensor(n, d, seed);
        auto point = [&] { return oracle::boundary_point(rng, n, p.reciprocal()); };

        // symmetry: every permutation of a sorted tuple carries one sign
        std::vector<int> tuple(static_cast<std::size_t>(d));
        for (auto& v : tuple) v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        std::sort(tuple.begin(), tuple.end());
        const int s0 = t.sign_of_tuple(tuple);
        while (std::next_permutation(tuple.begin(), tuple.end())) {
          if (t.sign_of_tuple(tuple) != s0) worst_identity = INFINITY;
        }

        std::vector<std::vector<Complex>> Z;
        for (int k = 0; k < d; ++k) Z.push_back(point());
        const Complex F = multilinear_eval(t, Z);
        const Complex direct = oracle::multilinear_direct(Z, n, [&](const std::vector<int>& J) { return t.sign_of_tuple(J); });
        worst_identity = std::max(worst_identity, rel_err(F, direct));

        // linearity in slot k
        const int k = static_cast<int>(seed % static_cast<std::uint64_t>(d));
        const auto X = point();
        const auto Y = point();
        const Complex a(0.3, -0.7), b(-1.1, 0.4);
        auto with_slot = [&](const std::vector<Complex>& v) {
          auto W = Z;
          W[static_cast<std::size_t>(k)] = v;
          return multilinear_eval(t, W);
        };
        std::vector<Complex> comb(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) comb[static_cast<std::size_t>(j)] = a * X[static_cast<std::size_t>(j)] + b * Y[static_cast<std::size_t>(j)];
        worst_identity = std::max(worst_identity, rel_err(with_slot(comb), a * with_slot(X) + b * with_slot(Y)));

        // diagonal restriction
        const auto z = point();
        const std::vector<std::vector<Complex>> diag(static_cast<std::size_t>(d), z);
        worst_identity = std::max(worst_identity, rel_err(multilinear_eval(t, diag), eval(to_homogeneous(t), z)));

        const RandomPolyRow row = random_poly_row(n, d, p, seed, 200000, threads);
        if (row.lower_est <= row.final_prob_bound) ++below;
      }
      const bool cell_ok = below >= 5;
      ok = ok && cell_ok;
      detail += "(" + std::to_string(n) + "," + std::to_string(d) + "," + p.to_string() + "): " + std::to_string(below) + "/20; ";
    }
  }
  ok = ok && worst_identity <= 1e-9;
  detail += "identity rel err " + fmt_num(worst_identity);
  return {ok, detail};
}

Outcome estimator_brackets() {
  const unsigned threads = hardware_threads();
  std::string detail;
  bool ok = true;

  EstimatorConfig disc;
  disc.include_moebius = true;
  disc.threads = threads;
  const EstimateReport r1 = estimate(BallSpec(1, Exponent::infinity()), disc);
  ok = ok && std::abs(r1.empirical_upper_K - 1.0 / 3.0) <= 2e-3;
  detail += "disc " + fmt_num(r1.empirical_upper_K);

  EstimatorConfig bidisc;
  bidisc.degrees = {2, 3, 4};
  for (std::uint64_t s = 0; s < 10; ++s) bidisc.seeds.push_back(s);
  bidisc.budget = 20000;
  bidisc.include_moebius = true;
  bidisc.threads = threads;
  const EstimateReport r2 = estimate(BallSpec(2, Exponent::infinity()), bidisc);
  ok = ok && r2.empirical_upper_K >= 1.0 / (3.0 * std::numbers::sqrt2) && r2.empirical_upper_K <= 1.0 / 3.0 + 1e-3;
  detail += ", bidisc " + fmt_num(r2.empirical_upper_K);

  EstimatorConfig grid;
  grid.degrees = {2, 3};
  for (std::uint64_t s = 0; s < 5; ++s) grid.seeds.push_back(s);
  grid.budget = 20000;
  grid.include_moebius = true;
  grid.threads = threads;
  bool kinds_ok = true;
  bool brackets_ok = true;
  auto check_kinds = [&](const EstimateReport& r) {
    for (const auto& c : r.candidates) {
      kinds_ok = kinds_ok && c.radius_second.empirical <= c.radius_first.empirical + 1e-9;
      if (r.ball.p().is_infinite()) kinds_ok = kinds_ok && std::abs(c.radius_second.empirical - c.radius_first.empirical) <= 1e-6;
    }
    brackets_ok = brackets_ok && r.theoretical_lower_K <= r.empirical_upper_K && r.theoretical_lower_B <= r.empirical_upper_B;
  };
  check_kinds(r1);
  check_kinds(r2);
  int balls = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& p : {Exponent::finite(1), Exponent::finite(2), Exponent::infinity()}) {
      check_kinds(estimate(BallSpec(n, p), grid));
      ++balls;
    }
  }
  ok = ok && kinds_ok && brackets_ok;
  detail += ", " + std::to_string(balls) + " grid balls" + (kinds_ok ? "" : ", kind order violated") +
            (brackets_ok ? "" : ", lower above empirical upper");
  return {ok, detail};
}

Outcome wiener() {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  constexpr int kGrid = 60;  // every alpha_j below divides it, so rotations map the grid to itself
  bool preserved = true;
  bool removed = true;
  bool averaging_matches = true;
  double worst_excess = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    SparsePolynomial poly(2);
    const int degree = 2 + static_cast<int>(rng() % 6);
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        if (rng() % 3 != 0 || (a == 0 && b == 0)) poly.add_term(MultiIndex{a, b}, Complex(g(rng), g(rng)));
      }
    }
    MultiIndex alpha{static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 5)};
    if (rng() % 2 == 0) alpha = MultiIndex{alpha[1], alpha[0]};
    poly.set_coefficient(alpha, Complex(g(rng), g(rng)));
    const SparsePolynomial avg = wiener_average(poly, alpha, 1.0).averaged;

    const MultiIndex zero = MultiIndex::zero(2);
    preserved = preserved && avg.coefficient(zero) == poly.coefficient(zero) && avg.coefficient(alpha) == poly.coefficient(alpha);
    for (const auto& [beta, c] : poly.terms()) {
      const bool divisible = (alpha[0] == 0 || beta[0] % alpha[0] == 0) && (alpha[1] == 0 || beta[1] % alpha[1] == 0);
      removed = removed && (divisible ? avg.coefficient(beta) == c : avg.coefficient(beta) == Complex{});
    }

    double max_p = 0.0, max_q = 0.0;
    const int m0 = std::max(1, alpha[0]), m1 = std::max(1, alpha[1]);
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const std::vector<Complex> z{std::polar(1.0, 2.0 * std::numbers::pi * i / kGrid), std::polar(1.0, 2.0 * std::numbers::pi * j / kGrid)};
        const Complex q = eval(avg, z);
        max_p = std::max(max_p, std::abs(eval(poly, z)));
        max_q = std::max(max_q, std::abs(q));
        if ((i * kGrid + j) % 97 == 0) {
          // root-of-unity average, computed directly
          Complex sum{};
          for (int k0 = 0; k0 < m0; ++k0) {
            for (int k1 = 0; k1 < m1; ++k1) {
              const std::vector<Complex> w{z[0] * std::polar(1.0, 2.0 * std::numbers::pi * k0 / m0),
                                          z[1] * std::polar(1.0, 2.0 * std::numbers::pi * k1 / m1)};
              sum += eval(poly, w);
            }
          }
          sum /= static_cast<double>(m0 * m1);
          averaging_matches = averaging_matches && std::abs(sum - q) <= 1e-9 * std::max(1.0, std::abs(q));
        }
      }
    }
    worst_excess = std::max(worst_excess, max_q - max_p);
  }
  const bool ok = preserved && removed && averaging_matches && worst_excess <= 1e-9;
  std::string detail = std::string(preserved ? "kept terms intact" : "kept terms altered") + (removed ? ", residues removed" : ", residue left") +
                       (averaging_matches ? "" : ", differs from direct average") + ", worst sup increase " + fmt_num(worst_excess);
  return {ok, detail};
}

}  // namespace

int main() {
  run_criterion(1, "one-variable Bohr sharpness", 1.0, bohr_sharpness);
  run_criterion(2, "Wintner bound 2", 5.0, wintner);
  run_criterion(3, "tree equation root", 0.1, tree);
  run_criterion(4, "monomial sup against sphere oracle", 30.0, monomial_oracle);
  run_criterion(5, "integer crossovers", 10.0, crossovers);
  run_criterion(6, "Chernoff constants", 1.0, chernoff);
  run_criterion(7, "random sign construction", 120.0, random_construction);
  run_criterion(8, "estimator brackets", 300.0, estimator_brackets);
  run_criterion(9, "Wiener averaging", 60.0, wiener);
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
