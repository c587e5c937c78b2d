#include "bohrlab/majorant_sup.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "bohrlab/numeric.hpp"

namespace bohrlab {

namespace {

constexpr int kRandomStarts = 8;
constexpr int kMaxSteps = 4000;
constexpr std::uint64_t kStartSeed = 0x6d616a6f72616e74ULL;

void check_input(const SparsePolynomial& poly, const BallSpec& ball, double r) {
  if (static_cast<int>(poly.dim()) != ball.n()) throw std::invalid_argument("majorant_sup: polynomial and ball dimensions differ");
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("majorant_sup: r must lie in [0, 1]");
  for (const auto& [alpha, c] : poly.terms()) {
    if (c.imag() != 0.0 || c.real() < 0.0) throw std::invalid_argument("majorant_sup: coefficients must be non-negative reals");
  }
}

// sum c_alpha w_alpha r^|alpha| with w_alpha = 1 on the polydisc. Both radius
// kinds go through here on the polydisc so they agree bit for bit.
double weighted_sum(const SparsePolynomial& poly, const BallSpec& ball, double r) {
  const bool unit_weights = ball.p().is_infinite();
  double sum = 0.0;
  for (const auto& [alpha, c] : poly.terms()) {
    const double w = unit_weights ? 1.0 : monomial_sup(alpha, ball);
    sum += c.real() * w * std::pow(r, alpha.degree());
  }
  return sum;
}

// G[k] = sum over |alpha| = k of c_alpha w_alpha, so that weighted_sum(r) is
// the polynomial sum_k G[k] r^k.
std::vector<double> graded_weights(const SparsePolynomial& poly, const BallSpec& ball) {
  std::vector<double> graded(static_cast<std::size_t>(poly.degree()) + 1, 0.0);
  const bool unit_weights = ball.p().is_infinite();
  for (const auto& [alpha, c] : poly.terms()) {
    graded[static_cast<std::size_t>(alpha.degree())] += c.real() * (unit_weights ? 1.0 : monomial_sup(alpha, ball));
  }
  return graded;
}

double horner(const std::vector<double>& graded, double r) {
  double acc = 0.0;
  for (std::size_t k = graded.size(); k-- > 0;) acc = acc * r + graded[k];
  return acc;
}

// Restriction to the variables that actually occur.
SparsePolynomial restrict_to(const SparsePolynomial& poly, const std::vector<std::size_t>& active) {
  SparsePolynomial out(active.size());
  for (const auto& [alpha, c] : poly.terms()) {
    std::vector<int> e(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) e[k] = alpha[active[k]];
    out.add_term(MultiIndex(std::move(e)), c);
  }
  return out;
}

std::vector<std::size_t> active_variables(const SparsePolynomial& poly) {
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < poly.dim(); ++j) {
    for (const auto& [alpha, c] : poly.terms()) {
      if (alpha[j] > 0) {
        active.push_back(j);
        break;
      }
    }
  }
  return active;
}

// Unit ascent direction for grad along the non-negative part of the sphere
// sum x_j^p = const: the component tangent to the sphere, with coordinates
// pinned at zero dropped when the move would push them negative. Returns
// false at a stationary point.
bool tangent_direction(const std::vector<double>& x, const std::vector<double>& grad, double p,
                       std::vector<double>& dir) {
  const std::size_t m = x.size();
  std::vector<char> free(m, 1);
  std::vector<double> normal(m);
  for (std::size_t j = 0; j < m; ++j) normal[j] = p == 1.0 ? 1.0 : std::pow(x[j], p - 1.0);
  for (std::size_t round = 0; round <= m; ++round) {
    double gn = 0.0, nn = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (free[j]) gn += grad[j] * normal[j], nn += normal[j] * normal[j];
    }
    const double lambda = nn > 0.0 ? gn / nn : 0.0;
    bool dropped = false;
    for (std::size_t j = 0; j < m; ++j) {
      dir[j] = free[j] ? grad[j] - lambda * normal[j] : 0.0;
      if (free[j] && x[j] <= 0.0 && dir[j] < 0.0) free[j] = 0, dropped = true;
    }
    if (!dropped) break;
  }
  double norm = 0.0;
  for (double d : dir) norm += d * d;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) return false;
  for (double& d : dir) d /= norm;
  return true;
}

// Scales x >= 0 onto sum x_j^p = r^p; false for the zero vector.
bool rescale_to_sphere(std::vector<double>& x, double p, double r) {
  double s = 0.0;
  for (double v : x) s += std::pow(v, p);
  if (!(s > 0.0)) return false;
  const double f = r / std::pow(s, 1.0 / p);
  for (double& v : x) v *= f;
  return true;
}

class SphereAscent {
 public:
  SphereAscent(const SparsePolynomial& poly, double p, double r)
      : eval_(poly), m_(poly.dim()), p_(p), r_(r), point_(m_), cgrad_(m_) {}

  double run(std::vector<double> x) {
    rescale_to_sphere(x, p_, r_);
    std::vector<double> grad(m_), trial(m_), trial_grad(m_), dir(m_);
    double value = evaluate(x, grad);
    double step = 0.25 * r_;
    for (int it = 0; it < kMaxSteps && step > 1e-13 * r_; ++it) {
      if (!tangent_direction(x, grad, p_, dir)) break;
      for (std::size_t j = 0; j < m_; ++j) trial[j] = std::max(0.0, x[j] + step * dir[j]);
      if (!rescale_to_sphere(trial, p_, r_)) break;
      const double trial_value = evaluate(trial, trial_grad);
      if (trial_value > value) {
        std::swap(x, trial);
        std::swap(grad, trial_grad);
        value = trial_value;
        step = std::min(1.5 * step, r_);
      } else {
        step *= 0.5;
      }
    }
    return value;
  }

 private:
  double evaluate(const std::vector<double>& x, std::vector<double>& grad) {
    for (std::size_t j = 0; j < m_; ++j) point_[j] = Complex(x[j], 0.0);
    const double value = eval_.value_and_gradient(point_, cgrad_).real();
    for (std::size_t j = 0; j < m_; ++j) grad[j] = cgrad_[j].real();
    return value;
  }

  PolynomialEvaluator eval_;
  std::size_t m_;
  double p_;
  double r_;
  std::vector<Complex> point_, cgrad_;
};

double finite_p_sup(const SparsePolynomial& poly, const BallSpec& ball, double r) {
  const auto active = active_variables(poly);
  if (active.empty()) return poly.terms().begin()->second.real();
  if (active.size() == 1) {
    double sum = 0.0;
    for (const auto& [alpha, c] : poly.terms()) sum += c.real() * std::pow(r, alpha[active[0]]);
    return sum;
  }

  const SparsePolynomial reduced = restrict_to(poly, active);
  const std::size_t m = active.size();
  SphereAscent ascent(reduced, ball.p().value(), r);
  double best = 0.0;
  std::vector<double> start(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::fill(start.begin(), start.end(), 0.0);
    start[j] = 1.0;
    best = std::max(best, ascent.run(start));
  }
  std::fill(start.begin(), start.end(), 1.0);
  best = std::max(best, ascent.run(start));
  std::mt19937_64 engine(splitmix64(kStartSeed));
  for (int s = 0; s < kRandomStarts; ++s) {
    for (auto& v : start) v = 0.01 + uniform01(engine);
    best = std::max(best, ascent.run(start));
  }
  return best;
}

// First-kind radius for non-homogeneous input on a finite-p ball, as the
// minimum over non-negative unit directions x of the largest r with
// sum c_alpha r^|alpha| x^alpha <= level. Equivalent to bisecting on
// majorant_sup, but each trial costs one pass over the terms.
class DirectionalRadius {
 public:
  DirectionalRadius(const SparsePolynomial& poly, double p, double level, double tol)
      : m_(poly.dim()), p_(p), level_(level), tol_(tol) {
    for (const auto& [alpha, c] : poly.terms()) {
      for (std::size_t j = 0; j < m_; ++j) exps_.push_back(alpha[j]);
      coeffs_.push_back(c.real());
      degrees_.push_back(alpha.degree());
      max_degree_ = std::max(max_degree_, alpha.degree());
    }
    graded_.resize(static_cast<std::size_t>(max_degree_) + 1);
    powers_.resize(m_ * graded_.size());
  }

  double run(std::vector<double> x, double search_tol) {
    if (!rescale_to_sphere(x, p_, 1.0)) return 1.0;
    double rho = radius_along(x, search_tol);
    std::vector<double> grad(m_), trial(m_), dir(m_);
    double step = 0.25;
    for (int it = 0; it < kMaxSteps && step > 1e-10; ++it) {
      gradient(x, rho, grad);
      if (!tangent_direction(x, grad, p_, dir)) break;
      for (std::size_t j = 0; j < m_; ++j) trial[j] = std::max(0.0, x[j] + step * dir[j]);
      if (!rescale_to_sphere(trial, p_, 1.0)) break;
      const double trial_rho = radius_along(trial, search_tol);
      if (trial_rho < rho) {
        std::swap(x, trial);
        rho = trial_rho;
        step = std::min(1.5 * step, 1.0);
      } else {
        step *= 0.5;
      }
    }
    return radius_along(x, tol_);
  }

 private:
  void fill_powers(const std::vector<double>& x) {
    const std::size_t stride = static_cast<std::size_t>(max_degree_) + 1;
    for (std::size_t j = 0; j < m_; ++j) {
      double* row = powers_.data() + j * stride;
      row[0] = 1.0;
      for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * x[j];
    }
  }

  double power(std::size_t j, int e) const {
    return powers_[j * (static_cast<std::size_t>(max_degree_) + 1) + static_cast<std::size_t>(e)];
  }

  double radius_along(const std::vector<double>& x, double tol) {
    fill_powers(x);
    std::fill(graded_.begin(), graded_.end(), 0.0);
    const int* e = exps_.data();
    for (std::size_t t = 0; t < coeffs_.size(); ++t, e += m_) {
      double mono = coeffs_[t];
      for (std::size_t j = 0; j < m_; ++j) {
        if (e[j] != 0) mono *= power(j, e[j]);
      }
      graded_[static_cast<std::size_t>(degrees_[t])] += mono;
    }
    return last_feasible([&](double r) { return horner(graded_, r); }, level_, 0.0, 1.0, tol);
  }

  // Gradient in x of sum c_alpha r^|alpha| x^alpha; rho decreases along it.
  void gradient(const std::vector<double>& x, double r, std::vector<double>& grad) {
    fill_powers(x);
    std::vector<double> r_powers(static_cast<std::size_t>(max_degree_) + 1, 1.0);
    for (std::size_t k = 1; k < r_powers.size(); ++k) r_powers[k] = r_powers[k - 1] * r;
    std::fill(grad.begin(), grad.end(), 0.0);
    const int* e = exps_.data();
    for (std::size_t t = 0; t < coeffs_.size(); ++t, e += m_) {
      const double scale = coeffs_[t] * r_powers[static_cast<std::size_t>(degrees_[t])];
      for (std::size_t j = 0; j < m_; ++j) {
        if (e[j] == 0) continue;
        double d = scale * e[j] * power(j, e[j] - 1);
        for (std::size_t i = 0; i < m_ && d != 0.0; ++i) {
          if (i != j && e[i] != 0) d *= power(i, e[i]);
        }
        grad[j] += d;
      }
    }
  }

  std::size_t m_;
  double p_;
  double level_;
  double tol_;
  std::vector<int> exps_;
  std::vector<double> coeffs_;
  std::vector<int> degrees_;
  int max_degree_ = 0;
  std::vector<double> graded_;
  std::vector<double> powers_;
};

double directional_first_radius(const SparsePolynomial& poly, const BallSpec& ball, double level, double tol) {
  const auto active = active_variables(poly);
  if (active.empty()) return poly.terms().begin()->second.real() <= level ? 1.0 : 0.0;
  const std::size_t m = active.size();
  DirectionalRadius search(restrict_to(poly, active), ball.p().value(), level, tol);
  if (m == 1) return search.run({1.0}, tol);

  const double search_tol = std::min(tol, 1e-12);
  std::vector<double> start(m);
  double best = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    std::fill(start.begin(), start.end(), 0.0);
    start[j] = 1.0;
    best = std::min(best, search.run(start, search_tol));
  }
  std::fill(start.begin(), start.end(), 1.0);
  best = std::min(best, search.run(start, search_tol));
  std::mt19937_64 engine(splitmix64(kStartSeed));
  for (int s = 0; s < kRandomStarts; ++s) {
    for (auto& v : start) v = 0.01 + uniform01(engine);
    best = std::min(best, search.run(start, search_tol));
  }
  return best;
}

}  // namespace

const char* to_string(RadiusKind kind) { return kind == RadiusKind::first ? "first" : "second"; }

double majorant_sup(const SparsePolynomial& poly_abs, const BallSpec& ball, double r) {
  check_input(poly_abs, ball, r);
  if (poly_abs.empty()) return 0.0;
  if (ball.p().is_infinite() || r == 0.0) return weighted_sum(poly_abs, ball, r);
  return finite_p_sup(poly_abs, ball, r);
}

double term_sup_sum(const SparsePolynomial& poly_abs, const BallSpec& ball, double r) {
  check_input(poly_abs, ball, r);
  return weighted_sum(poly_abs, ball, r);
}

double largest_radius(const SparsePolynomial& poly_abs, const BallSpec& ball, RadiusKind kind, double level,
                      double tol) {
  if (!(level > 0.0)) throw std::invalid_argument("largest_radius: level must be positive");
  check_input(poly_abs, ball, 1.0);
  if (poly_abs.empty()) return 1.0;
  const bool finite_first = kind == RadiusKind::first && !ball.p().is_infinite();
  if (poly_abs.is_homogeneous() && poly_abs.degree() > 0) {
    const double at_one = finite_first ? majorant_sup(poly_abs, ball, 1.0) : horner(graded_weights(poly_abs, ball), 1.0);
    if (at_one <= level) return 1.0;
    return std::pow(level / at_one, 1.0 / poly_abs.degree());
  }
  if (finite_first) return directional_first_radius(poly_abs, ball, level, tol);
  // On the polydisc the first-kind majorant is the unit-weight sum, so both
  // kinds take this path and agree exactly.
  const std::vector<double> graded = graded_weights(poly_abs, ball);
  return last_feasible([&](double r) { return horner(graded, r); }, level, 0.0, 1.0, tol);
}

}  // namespace bohrlab
