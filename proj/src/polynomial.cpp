#include "bohrlab/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace bohrlab {

SparsePolynomial::SparsePolynomial(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("SparsePolynomial: dimension must be positive");
}

void SparsePolynomial::check_length(const MultiIndex& alpha) const {
  if (alpha.size() != dim_) throw std::invalid_argument("SparsePolynomial: multi-index length does not match dimension");
}

int SparsePolynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
  return d;
}

bool SparsePolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  // graded order: first and last keys bound the degree range
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Complex SparsePolynomial::coefficient(const MultiIndex& alpha) const {
  check_length(alpha);
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{} : it->second;
}

void SparsePolynomial::add_term(const MultiIndex& alpha, Complex c) {
  check_length(alpha);
  auto [it, inserted] = terms_.try_emplace(alpha, Complex{});
  it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

void SparsePolynomial::set_coefficient(const MultiIndex& alpha, Complex c) {
  check_length(alpha);
  if (c == Complex{}) {
    terms_.erase(alpha);
  } else {
    terms_[alpha] = c;
  }
}

Complex eval(const SparsePolynomial& poly, std::span<const Complex> z) {
  if (z.size() != poly.dim()) throw std::invalid_argument("eval: point dimension does not match polynomial");
  Complex sum{};
  for (const auto& [alpha, c] : poly.terms()) {
    Complex mono{1.0, 0.0};
    for (std::size_t j = 0; j < z.size(); ++j) {
      for (int e = 0; e < alpha[j]; ++e) mono *= z[j];
    }
    sum += c * mono;
  }
  return sum;
}

SparsePolynomial majorant(const SparsePolynomial& poly) {
  SparsePolynomial out(poly.dim());
  for (const auto& [alpha, c] : poly.terms()) out.set_coefficient(alpha, std::abs(c));
  return out;
}

double sum_of_term_sups(const SparsePolynomial& poly, const BallSpec& ball) {
  if (static_cast<int>(poly.dim()) != ball.n()) throw std::invalid_argument("sum_of_term_sups: dimension mismatch");
  double s = 0.0;
  for (const auto& [alpha, c] : poly.terms()) s += std::abs(c) * monomial_sup(alpha, ball);
  return s;
}

SparsePolynomial tensor_product(const SparsePolynomial& a, const SparsePolynomial& b) {
  SparsePolynomial out(a.dim() + b.dim());
  std::vector<int> e(a.dim() + b.dim());
  for (const auto& [ai, ac] : a.terms()) {
    for (const auto& [bi, bc] : b.terms()) {
      std::copy(ai.exponents().begin(), ai.exponents().end(), e.begin());
      std::copy(bi.exponents().begin(), bi.exponents().end(), e.begin() + static_cast<std::ptrdiff_t>(a.dim()));
      out.add_term(MultiIndex(e), ac * bc);
    }
  }
  return out;
}

nlohmann::json to_json(const SparsePolynomial& poly) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [alpha, c] : poly.terms()) {
    terms.push_back({{"alpha", std::vector<int>(alpha.exponents().begin(), alpha.exponents().end())},
                     {"re", c.real()},
                     {"im", c.imag()}});
  }
  return {{"dim", poly.dim()}, {"terms", std::move(terms)}};
}

SparsePolynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms")) {
    throw std::invalid_argument("polynomial JSON needs 'dim' and 'terms'");
  }
  try {
    const auto dim = j.at("dim").get<long long>();
    if (dim < 1) throw std::invalid_argument("polynomial JSON: dim must be positive");
    SparsePolynomial poly(static_cast<std::size_t>(dim));
    for (const auto& t : j.at("terms")) {
      MultiIndex alpha(t.at("alpha").get<std::vector<int>>());
      poly.add_term(alpha, Complex{t.value("re", 0.0), t.value("im", 0.0)});
    }
    return poly;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("polynomial JSON: ") + e.what());
  }
}

PolynomialEvaluator::PolynomialEvaluator(const SparsePolynomial& poly) : dim_(poly.dim()), max_exp_(poly.dim(), 0) {
  starts_.reserve(poly.size() + 1);
  coeffs_.reserve(poly.size());
  std::size_t widest = 0;
  for (const auto& [alpha, c] : poly.terms()) {
    starts_.push_back(vars_.size());
    for (std::size_t j = 0; j < dim_; ++j) {
      if (alpha[j] == 0) continue;
      vars_.push_back(static_cast<std::uint32_t>(j));
      exps_.push_back(alpha[j]);
      max_exp_[j] = std::max(max_exp_[j], alpha[j]);
    }
    widest = std::max(widest, vars_.size() - starts_.back());
    coeffs_.push_back(c);
  }
  starts_.push_back(vars_.size());
  offsets_.resize(dim_);
  std::size_t total = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    offsets_[j] = total;
    total += static_cast<std::size_t>(max_exp_[j]) + 1;
  }
  powers_.resize(total);
  prefix_.resize(widest + 1);
}

void PolynomialEvaluator::fill_powers(std::span<const Complex> z) {
  if (z.size() != dim_) throw std::invalid_argument("PolynomialEvaluator: point dimension mismatch");
  for (std::size_t j = 0; j < dim_; ++j) {
    Complex* row = powers_.data() + offsets_[j];
    row[0] = 1.0;
    for (int e = 1; e <= max_exp_[j]; ++e) row[e] = row[e - 1] * z[j];
  }
}

Complex PolynomialEvaluator::value(std::span<const Complex> z) {
  fill_powers(z);
  Complex sum{};
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    Complex mono = coeffs_[t];
    for (std::size_t k = starts_[t]; k < starts_[t + 1]; ++k) mono *= power(vars_[k], exps_[k]);
    sum += mono;
  }
  return sum;
}

Complex PolynomialEvaluator::value_and_gradient(std::span<const Complex> z, std::span<Complex> grad) {
  if (grad.size() != dim_) throw std::invalid_argument("PolynomialEvaluator: gradient buffer size mismatch");
  fill_powers(z);
  std::fill(grad.begin(), grad.end(), Complex{});
  Complex sum{};
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const std::size_t begin = starts_[t];
    const std::size_t len = starts_[t + 1] - begin;
    prefix_[0] = coeffs_[t];
    for (std::size_t k = 0; k < len; ++k) prefix_[k + 1] = prefix_[k] * power(vars_[begin + k], exps_[begin + k]);
    sum += prefix_[len];
    Complex suffix{1.0, 0.0};
    for (std::size_t k = len; k-- > 0;) {
      const std::size_t j = vars_[begin + k];
      const int e = exps_[begin + k];
      grad[j] += prefix_[k] * suffix * (static_cast<double>(e) * power(j, e - 1));
      suffix *= power(j, e);
    }
  }
  return sum;
}

}  // namespace bohrlab
