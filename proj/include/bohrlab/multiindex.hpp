#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "bohrlab/ball.hpp"

namespace bohrlab {

/// Exponent vector alpha of the monomial z^alpha.
///
/// Ordering is graded lexicographic: lower total degree first, and within a
/// degree the index with the larger leading exponent comes first, so that
/// (1,0) < (0,1). Map keys and serialized term lists follow this order.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(std::size_t n);
  static MultiIndex unit(std::size_t n, std::size_t j, int power = 1);

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t j) const { return exps_[j]; }
  std::span<const int> exponents() const { return exps_; }

  /// |alpha|.
  int degree() const { return degree_; }
  bool is_zero() const { return degree_ == 0; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// All alpha in n variables with |alpha| = k, in graded-lex order.
/// The count is C(n+k-1, k).
std::vector<MultiIndex> enumerate_multiindices(int n, int k);

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(int n, int k);

/// d!/alpha! exactly. Throws std::invalid_argument when |alpha| != d and
/// std::overflow_error when the value does not fit in 64 bits.
std::uint64_t multinomial(int d, const MultiIndex& alpha);

/// ln(k!): exact table through k = 20, lgamma beyond.
double log_factorial(int k);

/// ln(d!/alpha!), usable where multinomial() would overflow.
double log_multinomial(int d, const MultiIndex& alpha);

/// ln(alpha!).
double log_multi_factorial(const MultiIndex& alpha);

/// sup{|z^alpha| : z in the closed ball} = (alpha^alpha / |alpha|^|alpha|)^(1/p),
/// with 0^0 = 1. Evaluated in log space.
double monomial_sup(const MultiIndex& alpha, const BallSpec& ball);
double log_monomial_sup(const MultiIndex& alpha, const BallSpec& ball);

}  // namespace bohrlab
