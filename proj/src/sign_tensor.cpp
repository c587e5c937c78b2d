#include "bohrlab/sign_tensor.hpp"

#include <random>
#include <stdexcept>

#include "bohrlab/numeric.hpp"

namespace bohrlab {

namespace {

// Sum over distinct orderings J of the multiset `counts` of Z_{k J_k} ... Z_{d J_d}.
Complex permutation_sum(std::span<const std::vector<Complex>> Z, std::vector<int>& counts, std::size_t k) {
  if (k == Z.size()) return Complex{1.0, 0.0};
  Complex acc{};
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    --counts[j];
    acc += Z[k][j] * permutation_sum(Z, counts, k + 1);
    ++counts[j];
  }
  return acc;
}

}  // namespace

SignTensor::SignTensor(int n, int d, SignMap signs, std::uint64_t seed)
    : n_(n), d_(d), seed_(seed), signs_(std::move(signs)) {
  if (n < 1 || d < 1) throw std::invalid_argument("SignTensor: need n >= 1 and d >= 1");
  if (signs_.size() != binomial(n + d - 1, d)) throw std::invalid_argument("SignTensor: wrong number of slots");
  for (const auto& [alpha, s] : signs_) {
    if (static_cast<int>(alpha.size()) != n || alpha.degree() != d) throw std::invalid_argument("SignTensor: slot has wrong shape");
    if (s != 1 && s != -1) throw std::invalid_argument("SignTensor: signs must be +1 or -1");
  }
}

SignTensor SignTensor::constant(int n, int d, int sign) {
  SignMap signs;
  for (auto& alpha : enumerate_multiindices(n, d)) signs.emplace(std::move(alpha), static_cast<std::int8_t>(sign));
  return SignTensor(n, d, std::move(signs));
}

int SignTensor::sign(const MultiIndex& alpha) const {
  auto it = signs_.find(alpha);
  if (it == signs_.end()) throw std::invalid_argument("SignTensor::sign: multi-index is not a slot of this tensor");
  return it->second;
}

int SignTensor::sign_of_tuple(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != d_) throw std::invalid_argument("SignTensor::sign_of_tuple: tuple length must be d");
  std::vector<int> counts(static_cast<std::size_t>(n_), 0);
  for (int j : indices) {
    if (j < 0 || j >= n_) throw std::invalid_argument("SignTensor::sign_of_tuple: index out of range");
    ++counts[static_cast<std::size_t>(j)];
  }
  return sign(MultiIndex(std::move(counts)));
}

SignTensor draw_sign_tensor(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 2) throw std::invalid_argument("draw_sign_tensor: need n >= 2 and d >= 2");
  std::mt19937_64 engine(splitmix64(seed));
  SignTensor::SignMap signs;
  for (auto& alpha : enumerate_multiindices(n, d)) {
    const std::int8_t s = (engine() >> 63) != 0 ? std::int8_t{-1} : std::int8_t{1};
    signs.emplace_hint(signs.end(), std::move(alpha), s);
  }
  return SignTensor(n, d, std::move(signs), seed);
}

Complex multilinear_eval(const SignTensor& tensor, std::span<const std::vector<Complex>> Z) {
  if (static_cast<int>(Z.size()) != tensor.d()) throw std::invalid_argument("multilinear_eval: need exactly d argument vectors");
  for (const auto& v : Z) {
    if (static_cast<int>(v.size()) != tensor.n()) throw std::invalid_argument("multilinear_eval: argument vector length must be n");
  }
  Complex total{};
  std::vector<int> counts;
  for (const auto& [alpha, s] : tensor.signs()) {
    counts.assign(alpha.exponents().begin(), alpha.exponents().end());
    total += static_cast<double>(s) * permutation_sum(Z, counts, 0);
  }
  return total;
}

SparsePolynomial to_homogeneous(const SignTensor& tensor) {
  SparsePolynomial poly(static_cast<std::size_t>(tensor.n()));
  for (const auto& [alpha, s] : tensor.signs()) {
    poly.set_coefficient(alpha, static_cast<double>(s) * static_cast<double>(multinomial(tensor.d(), alpha)));
  }
  return poly;
}

}  // namespace bohrlab
