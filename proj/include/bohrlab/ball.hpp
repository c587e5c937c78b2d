#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>

namespace bohrlab {

using Complex = std::complex<double>;

/// Exponent p of an l_p norm, p in [1, inf]. Infinity is a distinct state,
/// never a large finite value.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(); }
  /// Accepts a decimal number or "inf" / "infinity".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  /// p itself; +inf for the infinite exponent.
  double value() const;
  /// 1/p, exactly 0 for p = inf.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }

  /// m(p) = min(p, 2) and M(p) = max(p, 2), returned by reciprocal.
  double reciprocal_min_with_two() const;
  double reciprocal_max_with_two() const;

  bool at_most_two() const { return !infinite_ && p_ <= 2.0; }
  bool at_least_two() const { return infinite_ || p_ >= 2.0; }

  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent() = default;
  explicit Exponent(double p) : p_(p), infinite_(false) {}

  double p_ = 0.0;
  bool infinite_ = true;
};

/// The l_p unit ball B_p^n in C^n. Suprema are taken over the closed ball.
class BallSpec {
 public:
  BallSpec(int n, Exponent p);

  int n() const { return n_; }
  const Exponent& p() const { return p_; }

  double norm(std::span<const Complex> z) const;

  friend bool operator==(const BallSpec&, const BallSpec&) = default;

 private:
  int n_;
  Exponent p_;
};

}  // namespace bohrlab
