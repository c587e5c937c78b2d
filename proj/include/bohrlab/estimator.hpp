#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohrlab/ball.hpp"
#include "bohrlab/majorant_sup.hpp"
#include "bohrlab/polynomial.hpp"
#include "bohrlab/sup_norm.hpp"

namespace bohrlab {

/// A radius computed under both sup normalizations: certified divides by
/// upper_cert (rigorous for this candidate), empirical by lower_est.
struct CandidateRadius {
  double certified = 0.0;
  double empirical = 0.0;
};

/// Largest r with the kind-specific majorant of poly / s at most 1 on rB,
/// to tolerance 1e-7. Throws on the zero polynomial.
CandidateRadius radius_of_candidate(const SparsePolynomial& poly, const BallSpec& ball, RadiusKind kind,
                                    const SupEstimate& sup_est);

/// Bohr-sharpness factors f_a(z_1) = (z_1 - a)/(1 - a z_1).
inline const std::vector<double> kMoebiusSingleParameters{0.5, 0.9, 0.99, 0.997};
/// Products f_a(z_1) f_a(z_2), used when n >= 2.
inline const std::vector<double> kMoebiusPairParameters{0.3, 0.5, 0.7};
/// Dropped Moebius tail on the closed disc.
inline constexpr double kMoebiusTail = 1e-10;
/// Sup-search budget cap for the (long) Moebius candidates.
inline constexpr std::size_t kMoebiusBudgetCap = 5000;

struct EstimatorConfig {
  std::vector<int> degrees;
  /// Tensor seeds are seed + s for each s listed here.
  std::vector<std::uint64_t> seeds;
  std::size_t budget = kDefaultSupBudget;
  bool include_moebius = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct CandidateRecord {
  std::size_t index = 0;
  std::string family;  // "random", "moebius", "moebius-pair"
  int degree = 0;      // 0 for non-homogeneous candidates
  std::uint64_t seed = 0;
  double moebius_a = 0.0;
  std::size_t terms = 0;
  double lower_est = 0.0;
  double upper_cert = 0.0;
  double relative_gap = 0.0;
  CandidateRadius radius_first;
  CandidateRadius radius_second;
  /// Running minima of the empirical radii over candidates 0..index.
  double running_upper_K = 0.0;
  double running_upper_B = 0.0;
};

struct EstimateReport {
  BallSpec ball{1, Exponent::infinity()};
  EstimatorConfig config;
  double theoretical_lower_K = 0.0;
  double theoretical_upper_K = 0.0;
  double theoretical_lower_B = 0.0;
  double theoretical_upper_B = 0.0;
  double empirical_upper_K = 1.0;
  double empirical_upper_B = 1.0;
  double certified_upper_K = 1.0;
  double certified_upper_B = 1.0;
  std::size_t best_index = 0;
  std::optional<SparsePolynomial> best_witness;
  SupEstimate best_sup;
  std::size_t candidates_tried = 0;
  std::vector<CandidateRecord> candidates;
};

/// Empirical bracket of K and B for a small ball: the minimum over candidate
/// polynomials of the empirically normalized radii. Deterministic for a given
/// config and independent of config.threads.
EstimateReport estimate(const BallSpec& ball, const EstimatorConfig& config);

}  // namespace bohrlab
