#include "bohrlab/ball.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bohrlab {

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw std::invalid_argument("exponent p must be a finite number >= 1 (use Exponent::infinity())");
  }
  return Exponent(p);
}

Exponent Exponent::parse(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "infinity") return infinity();
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(lowered.data(), lowered.data() + lowered.size(), p);
  if (ec != std::errc() || ptr != lowered.data() + lowered.size()) {
    throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
  }
  return finite(p);
}

double Exponent::value() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

double Exponent::reciprocal_min_with_two() const { return std::max(reciprocal(), 0.5); }

double Exponent::reciprocal_max_with_two() const { return std::min(reciprocal(), 0.5); }

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p_);
  return std::string(buf, ptr);
}

BallSpec::BallSpec(int n, Exponent p) : n_(n), p_(p) {
  if (n < 1) throw std::invalid_argument("ball dimension n must be >= 1");
}

double BallSpec::norm(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("BallSpec::norm: dimension mismatch");
  if (p_.is_infinite()) {
    double m = 0.0;
    for (const auto& v : z) m = std::max(m, std::abs(v));
    return m;
  }
  // scale by the largest modulus so |z_j|^p cannot overflow or underflow
  double scale = 0.0;
  for (const auto& v : z) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  const double p = p_.value();
  double sum = 0.0;
  for (const auto& v : z) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

}  // namespace bohrlab
