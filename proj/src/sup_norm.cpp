#include "bohrlab/sup_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bohrlab/numeric.hpp"
#include "bohrlab/parallel.hpp"

namespace bohrlab {

namespace {

constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-10;
constexpr double kStepGrowth = 1.5;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Additive recurrence with the generalized golden ratio of dimension D.
class KroneckerSequence {
 public:
  KroneckerSequence(std::size_t dim, std::uint64_t seed) : generators_(dim), shift_(dim) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dim + 1));
    double g = 1.0;
    std::mt19937_64 engine(splitmix64(seed));
    for (std::size_t k = 0; k < dim; ++k) {
      g /= phi;
      generators_[k] = g;
      shift_[k] = uniform01(engine);
    }
  }

  void point(std::size_t index, std::span<double> out) const {
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double v = shift_[k] + static_cast<double>(index + 1) * generators_[k];
      out[k] = v - std::floor(v);
    }
  }

 private:
  std::vector<double> generators_;
  std::vector<double> shift_;
};

struct Best {
  double value = -1.0;
  std::vector<Complex> point;

  void offer(double v, std::span<const Complex> z) {
    if (v > value) {
      value = v;
      point.assign(z.begin(), z.end());
    }
  }
};

// u holds 2n numbers in [0,1): n moduli followed by n phases.
void boundary_point(const BallSpec& ball, std::span<const double> u, std::vector<Complex>& z) {
  const std::size_t n = z.size();
  if (ball.p().is_infinite()) {
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(1.0, kTwoPi * u[n + j]);
    return;
  }
  for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(u[j] + 1e-3, kTwoPi * u[n + j]);
  const double norm = ball.norm(z);
  for (auto& v : z) v /= norm;
}

class UnitSearch {
 public:
  UnitSearch(const SparsePolynomial& poly, const BallSpec& ball, std::uint64_t seed)
      : ball_(ball), eval_(poly), n_(poly.dim()), restart_rng_(derive_seed(seed, 1)),
        sample_rng_(derive_seed(seed, 2)), z_(n_), trial_(n_), grad_(n_), trial_grad_(n_),
        theta_(n_), trial_theta_(n_), u_(2 * n_) {}

  std::size_t used() const { return used_; }
  const Best& best() const { return best_; }

  void ascend(std::span<const double> start, std::size_t count) {
    if (count == 0) return;
    std::copy(start.begin(), start.end(), u_.begin());
    reset_from_u();
    while (used_ < count) {
      if (!step_once()) {
        if (used_ >= count) break;
        for (auto& v : u_) v = uniform01(restart_rng_);
        reset_from_u();
      }
    }
  }

  void sample(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      for (auto& v : u_) v = uniform01(sample_rng_);
      boundary_point(ball_, u_, trial_);
      best_.offer(std::abs(eval_.value(trial_)), trial_);
      ++used_;
    }
  }

 private:
  bool torus() const { return ball_.p().is_infinite(); }

  void reset_from_u() {
    boundary_point(ball_, u_, z_);
    if (torus()) {
      for (std::size_t j = 0; j < n_; ++j) theta_[j] = kTwoPi * u_[n_ + j];
    }
    value_ = eval_.value_and_gradient(z_, grad_);
    ++used_;
    best_.offer(std::abs(value_), z_);
    step_ = kInitialStep;
  }

  // One trial move along the ascent direction of |P|^2. Returns false when the
  // search from this start is exhausted and a restart is due.
  bool step_once() {
    double norm = 0.0;
    if (torus()) {
      // d|P|^2/d theta_j = -2 Im(conj(P) z_j dP/dz_j)
      for (std::size_t j = 0; j < n_; ++j) {
        const double g = -std::imag(std::conj(value_) * z_[j] * grad_[j]);
        trial_theta_[j] = g;
        norm += g * g;
      }
    } else {
      // steepest ascent of |P|^2 in R^{2n} points along P * conj(dP/dz_j)
      for (std::size_t j = 0; j < n_; ++j) {
        trial_[j] = value_ * std::conj(grad_[j]);
        norm += std::norm(trial_[j]);
      }
    }
    norm = std::sqrt(norm);
    if (!(norm > 1e-300)) return false;

    if (torus()) {
      for (std::size_t j = 0; j < n_; ++j) {
        trial_theta_[j] = theta_[j] + step_ * trial_theta_[j] / norm;
        trial_[j] = std::polar(1.0, trial_theta_[j]);
      }
    } else {
      for (std::size_t j = 0; j < n_; ++j) trial_[j] = z_[j] + step_ * trial_[j] / norm;
      const double pn = ball_.norm(trial_);
      if (!(pn > 0.0)) return false;
      for (auto& v : trial_) v /= pn;
    }

    const Complex trial_value = eval_.value_and_gradient(trial_, trial_grad_);
    ++used_;
    const double trial_abs = std::abs(trial_value);
    best_.offer(trial_abs, trial_);
    if (trial_abs > std::abs(value_)) {
      std::swap(z_, trial_);
      std::swap(grad_, trial_grad_);
      if (torus()) std::swap(theta_, trial_theta_);
      value_ = trial_value;
      step_ = std::min(step_ * kStepGrowth, 2.0);
      return true;
    }
    step_ *= 0.5;
    return step_ >= kMinStep;
  }

  const BallSpec& ball_;
  PolynomialEvaluator eval_;
  std::size_t n_;
  std::mt19937_64 restart_rng_;
  std::mt19937_64 sample_rng_;
  std::vector<Complex> z_, trial_, grad_, trial_grad_;
  std::vector<double> theta_, trial_theta_, u_;
  Complex value_{};
  double step_ = kInitialStep;
  std::size_t used_ = 0;
  Best best_;
};

// i-th share of total when split as evenly as possible over `parts`.
std::size_t share(std::size_t total, std::size_t parts, std::size_t i) { return (total + parts - 1 - i) / parts; }

}  // namespace

double SupEstimate::relative_gap() const {
  return lower_est > 0.0 ? (upper_cert - lower_est) / lower_est : std::numeric_limits<double>::infinity();
}

std::size_t sup_search_starts(int n) { return static_cast<std::size_t>(std::max(32, 4 * n)); }

SupEstimate sup_norm_estimate(const SparsePolynomial& poly, const BallSpec& ball, std::size_t budget,
                              std::uint64_t seed, unsigned threads) {
  if (static_cast<int>(poly.dim()) != ball.n()) throw std::invalid_argument("sup_norm_estimate: polynomial and ball dimensions differ");
  if (budget < 1) throw std::invalid_argument("sup_norm_estimate: budget must be >= 1");

  SupEstimate out;
  out.argmax_point.assign(poly.dim(), Complex{});
  if (poly.empty()) return out;
  out.upper_cert = sum_of_term_sups(poly, ball);

  const std::size_t n = poly.dim();
  const std::size_t units = sup_search_starts(ball.n());
  const std::size_t samples = budget / 4;
  const std::size_t ascent = budget - samples;
  const KroneckerSequence starts(2 * n, derive_seed(seed, 0x5eed));

  std::vector<Best> results(units);
  std::vector<std::size_t> used(units, 0);
  parallel_for(units, threads, [&](std::size_t i) {
    UnitSearch search(poly, ball, derive_seed(seed, 0x1000 + i));
    std::vector<double> u(2 * n);
    starts.point(i, u);
    search.ascend(u, share(ascent, units, i));
    search.sample(share(samples, units, i));
    results[i] = search.best();
    used[i] = search.used();
  });

  for (std::size_t i = 0; i < units; ++i) {
    out.budget_used += used[i];
    if (results[i].value > out.lower_est) {
      out.lower_est = results[i].value;
      out.argmax_point = results[i].point;
    }
  }
  return out;
}

}  // namespace bohrlab
