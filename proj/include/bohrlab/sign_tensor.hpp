#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bohrlab/ball.hpp"
#include "bohrlab/multiindex.hpp"
#include "bohrlab/polynomial.hpp"

namespace bohrlab {

/// Symmetric +-1 assignment on the degree-d monomial slots in n variables.
///
/// A non-decreasing index tuple K = (J_1 <= ... <= J_d) corresponds to the
/// multi-index alpha counting the occurrences of each index, so signs are
/// keyed by alpha and every permutation of K shares one sign by construction.
class SignTensor {
 public:
  using SignMap = std::map<MultiIndex, std::int8_t>;

  /// Builds a tensor from explicit signs; every degree-d multi-index must be present.
  SignTensor(int n, int d, SignMap signs, std::uint64_t seed = 0);
  static SignTensor constant(int n, int d, int sign);

  int n() const { return n_; }
  int d() const { return d_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return signs_.size(); }
  const SignMap& signs() const { return signs_; }

  int sign(const MultiIndex& alpha) const;
  /// Sign of the slot holding the (0-based) index tuple, in any order.
  int sign_of_tuple(std::span<const int> indices) const;

 private:
  int n_;
  int d_;
  std::uint64_t seed_;
  SignMap signs_;
};

/// One independent fair +-1 draw per non-decreasing d-tuple, in graded-lex
/// order of the multi-indices; bit-identical for equal (n, d, seed).
SignTensor draw_sign_tensor(int n, int d, std::uint64_t seed);

/// F(Z_1, ..., Z_d) = sum over sorted tuples K of sign(K) sum_{J ~ K} Z_{1 J_1} ... Z_{d J_d}.
/// Z holds d vectors of length n.
Complex multilinear_eval(const SignTensor& tensor, std::span<const std::vector<Complex>> Z);

/// Diagonal restriction F(z, ..., z) = sum_{|alpha| = d} sign(alpha) (d choose alpha) z^alpha.
SparsePolynomial to_homogeneous(const SignTensor& tensor);

}  // namespace bohrlab
