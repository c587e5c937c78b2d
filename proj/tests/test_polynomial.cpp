#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bohrlab/polynomial.hpp"
#include "oracles.hpp"

using namespace bohrlab;

namespace {

SparsePolynomial random_poly(std::mt19937_64& rng, std::size_t dim, int max_degree, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SparsePolynomial p(dim);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim);
    for (auto& v : e) v = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
    p.add_term(MultiIndex(e), Complex(u(rng), u(rng)));
  }
  return p;
}

Complex naive_eval(const SparsePolynomial& p, const std::vector<Complex>& z) {
  Complex s{};
  for (const auto& [alpha, c] : p.terms()) {
    Complex m = c;
    for (std::size_t j = 0; j < z.size(); ++j) m *= std::pow(z[j], alpha[j]);
    s += m;
  }
  return s;
}

}  // namespace

TEST_CASE("terms, degree and homogeneity") {
  SparsePolynomial p(2);
  CHECK(p.empty());
  CHECK(p.is_homogeneous());
  p.add_term({1, 1}, 2.0);
  p.add_term({2, 0}, 1.0);
  CHECK(p.is_homogeneous());
  CHECK(p.degree() == 2);
  p.add_term({0, 1}, 3.0);
  CHECK_FALSE(p.is_homogeneous());
  p.add_term({0, 1}, -3.0);
  CHECK(p.size() == 2);
  CHECK(p.coefficient({0, 1}) == Complex{});
  p.set_coefficient({1, 1}, 0.0);
  CHECK(p.size() == 1);
  CHECK_THROWS_AS(p.add_term({1, 0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SparsePolynomial(0), std::invalid_argument);
}

TEST_CASE("evaluation agrees with naive powers") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = 1 + rng() % 4;
    const auto p = random_poly(rng, dim, 5, 12);
    std::vector<Complex> z(dim);
    for (auto& v : z) v = Complex(u(rng), u(rng));
    const Complex expected = naive_eval(p, z);
    CHECK(std::abs(eval(p, z) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
    PolynomialEvaluator ev(p);
    CHECK(std::abs(ev.value(z) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
  }
  CHECK_THROWS_AS(eval(SparsePolynomial(2), std::vector<Complex>(3)), std::invalid_argument);
}

TEST_CASE("gradient matches complex difference quotients") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 1 + rng() % 4;
    const auto p = random_poly(rng, dim, 4, 10);
    std::vector<Complex> z(dim), grad(dim);
    for (auto& v : z) v = Complex(u(rng), u(rng));
    PolynomialEvaluator ev(p);
    const Complex value = ev.value_and_gradient(z, grad);
    CHECK(std::abs(value - naive_eval(p, z)) <= 1e-12 * (1.0 + std::abs(value)));
    for (std::size_t j = 0; j < dim; ++j) {
      const double h = 1e-6;
      auto zp = z, zm = z;
      zp[j] += h;
      zm[j] -= h;
      const Complex fd = (naive_eval(p, zp) - naive_eval(p, zm)) / (2.0 * h);
      CHECK(std::abs(grad[j] - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("majorant and sum of term sups") {
  SparsePolynomial p(2);
  p.add_term({1, 1}, Complex(3.0, -4.0));
  p.add_term({2, 0}, -1.0);
  const auto m = majorant(p);
  CHECK(m.coefficient({1, 1}) == Complex(5.0, 0.0));
  CHECK(m.coefficient({2, 0}) == Complex(1.0, 0.0));
  CHECK(sum_of_term_sups(p, BallSpec(2, Exponent::finite(2))) == doctest::Approx(5.0 * 0.5 + 1.0));
  CHECK(sum_of_term_sups(p, BallSpec(2, Exponent::infinity())) == doctest::Approx(6.0));
}

TEST_CASE("tensor product evaluates to the product") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto a = random_poly(rng, 2, 3, 5);
  const auto b = random_poly(rng, 1, 4, 4);
  const auto ab = tensor_product(a, b);
  REQUIRE(ab.dim() == 3);
  const std::vector<Complex> z{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
  const Complex expected = eval(a, std::vector<Complex>{z[0], z[1]}) * eval(b, std::vector<Complex>{z[2]});
  CHECK(std::abs(eval(ab, z) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(13);
  const auto p = random_poly(rng, 3, 4, 9);
  const auto j = to_json(p);
  CHECK(polynomial_from_json(j) == p);
  CHECK(polynomial_from_json(nlohmann::json::parse(j.dump())) == p);
  CHECK_THROWS_AS(polynomial_from_json(nlohmann::json::parse(R"({"terms": []})")), std::invalid_argument);
}
