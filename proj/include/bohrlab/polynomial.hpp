#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "bohrlab/ball.hpp"
#include "bohrlab/multiindex.hpp"

namespace bohrlab {

/// Finite sum of c_alpha z^alpha in a fixed number of variables.
/// Zero coefficients are never stored; terms iterate in graded-lex order.
class SparsePolynomial {
 public:
  using TermMap = std::map<MultiIndex, Complex>;

  explicit SparsePolynomial(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Largest |alpha| among stored terms; 0 for the empty polynomial.
  int degree() const;
  /// True when every stored term has the same degree (vacuously for empty).
  bool is_homogeneous() const;

  Complex coefficient(const MultiIndex& alpha) const;
  /// Adds c to the coefficient of z^alpha; a resulting zero is erased.
  void add_term(const MultiIndex& alpha, Complex c);
  void set_coefficient(const MultiIndex& alpha, Complex c);

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  void check_length(const MultiIndex& alpha) const;

  std::size_t dim_;
  TermMap terms_;
};

/// Sum of c_alpha z^alpha in graded-lex term order.
Complex eval(const SparsePolynomial& poly, std::span<const Complex> z);

/// Coefficientwise modulus: sum |c_alpha| z^alpha.
SparsePolynomial majorant(const SparsePolynomial& poly);

/// Sum over terms of |c_alpha| * sup_{ball} |z^alpha|.
double sum_of_term_sups(const SparsePolynomial& poly, const BallSpec& ball);

/// Product of polynomials in disjoint variable groups: the result lives in
/// dim(a) + dim(b) variables with a acting on the first block.
SparsePolynomial tensor_product(const SparsePolynomial& a, const SparsePolynomial& b);

/// {"dim": n, "terms": [{"alpha": [...], "re": x, "im": y}, ...]}, graded-lex.
nlohmann::json to_json(const SparsePolynomial& poly);
SparsePolynomial polynomial_from_json(const nlohmann::json& j);

/// Flattened form of a polynomial for repeated evaluation with gradients.
/// Holds scratch buffers, so one instance per thread.
class PolynomialEvaluator {
 public:
  explicit PolynomialEvaluator(const SparsePolynomial& poly);

  std::size_t dim() const { return dim_; }
  Complex value(std::span<const Complex> z);
  /// Fills grad[j] with the holomorphic partial dP/dz_j.
  Complex value_and_gradient(std::span<const Complex> z, std::span<Complex> grad);

 private:
  void fill_powers(std::span<const Complex> z);
  Complex power(std::size_t j, int e) const { return powers_[offsets_[j] + static_cast<std::size_t>(e)]; }

  std::size_t dim_;
  // Nonzero exponents only: term t owns entries [starts_[t], starts_[t + 1]).
  std::vector<std::size_t> starts_;
  std::vector<std::uint32_t> vars_;
  std::vector<int> exps_;
  std::vector<Complex> coeffs_;
  std::vector<int> max_exp_;        // per variable
  std::vector<std::size_t> offsets_;  // per variable, into powers_
  std::vector<Complex> powers_;
  std::vector<Complex> prefix_;
};

}  // namespace bohrlab
