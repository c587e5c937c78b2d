#include "bohrlab/multiindex.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bohrlab {

__extension__ using u128 = unsigned __int128;

namespace {

constexpr int kExactFactorialLimit = 20;

constexpr std::array<std::uint64_t, kExactFactorialLimit + 1> make_factorials() {
  std::array<std::uint64_t, kExactFactorialLimit + 1> f{};
  f[0] = 1;
  for (int k = 1; k <= kExactFactorialLimit; ++k) f[k] = f[k - 1] * static_cast<std::uint64_t>(k);
  return f;
}

constexpr auto kFactorials = make_factorials();

void append_indices(int n, int k, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  const int j = static_cast<int>(prefix.size());
  if (j == n - 1) {
    prefix.push_back(k);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = k; e >= 0; --e) {
    prefix.push_back(e);
    append_indices(n, k - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw std::invalid_argument("multi-index exponents must be non-negative");
    degree_ += e;
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }

MultiIndex MultiIndex::unit(std::size_t n, std::size_t j, int power) {
  if (j >= n) throw std::invalid_argument("MultiIndex::unit: coordinate out of range");
  std::vector<int> e(n, 0);
  e[j] = power;
  return MultiIndex(std::move(e));
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.exps_.size() <=> b.exps_.size(); c != 0) return c;
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  for (std::size_t j = 0; j < a.exps_.size(); ++j) {
    if (a.exps_[j] != b.exps_[j]) return b.exps_[j] <=> a.exps_[j];
  }
  return std::strong_ordering::equal;
}

std::vector<MultiIndex> enumerate_multiindices(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("enumerate_multiindices: need n >= 1 and k >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  append_indices(n, k, prefix, out);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    // acc * (n-k+i) / i stays integral at every step
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t multinomial(int d, const MultiIndex& alpha) {
  if (alpha.degree() != d) throw std::invalid_argument("multinomial: |alpha| must equal d");
  // product of binomials C(alpha_1 + ... + alpha_j, alpha_j)
  u128 acc = 1;
  int running = 0;
  for (int e : alpha.exponents()) {
    running += e;
    acc *= binomial(running, e);
    if (acc > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("multinomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

double log_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (k <= kExactFactorialLimit) return std::log(static_cast<double>(kFactorials[static_cast<std::size_t>(k)]));
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_multi_factorial(const MultiIndex& alpha) {
  double s = 0.0;
  for (int e : alpha.exponents()) s += log_factorial(e);
  return s;
}

double log_multinomial(int d, const MultiIndex& alpha) {
  if (alpha.degree() != d) throw std::invalid_argument("log_multinomial: |alpha| must equal d");
  return log_factorial(d) - log_multi_factorial(alpha);
}

double log_monomial_sup(const MultiIndex& alpha, const BallSpec& ball) {
  if (static_cast<int>(alpha.size()) != ball.n()) throw std::invalid_argument("monomial_sup: dimension mismatch");
  if (alpha.is_zero() || ball.p().is_infinite()) return 0.0;
  double s = 0.0;
  for (int e : alpha.exponents()) {
    if (e > 0) s += e * std::log(static_cast<double>(e));
  }
  const int k = alpha.degree();
  s -= k * std::log(static_cast<double>(k));
  return s * ball.p().reciprocal();
}

double monomial_sup(const MultiIndex& alpha, const BallSpec& ball) {
  return std::exp(log_monomial_sup(alpha, ball));
}

}  // namespace bohrlab
