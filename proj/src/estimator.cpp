#include "bohrlab/estimator.hpp"

#include <algorithm>
#include <stdexcept>

#include "bohrlab/bounds.hpp"
#include "bohrlab/numeric.hpp"
#include "bohrlab/parallel.hpp"
#include "bohrlab/sign_tensor.hpp"
#include "bohrlab/univariate.hpp"

namespace bohrlab {

namespace {

struct Candidate {
  std::string family;
  int degree = 0;
  std::uint64_t seed = 0;
  double a = 0.0;
};

SparsePolynomial build(const Candidate& c, int n) {
  const auto dim = static_cast<std::size_t>(n);
  if (c.family == "random") return to_homogeneous(draw_sign_tensor(n, c.degree, c.seed));
  const UnivariateSeries f = moebius_coeffs(c.a, moebius_truncation_order(c.a, kMoebiusTail));
  if (c.family == "moebius") return f.embed(dim, 0);
  return tensor_product(f.embed(1, 0), f.embed(dim - 1, 0));
}

void validate(const BallSpec& ball, const EstimatorConfig& config) {
  if (ball.n() > 8) throw std::invalid_argument("estimate: n must be at most 8");
  for (int d : config.degrees) {
    if (d < 2 || d > 8) throw std::invalid_argument("estimate: degrees must lie in 2..8");
  }
  if (config.budget < 1) throw std::invalid_argument("estimate: budget must be >= 1");
  const bool random_family = !config.degrees.empty() && !config.seeds.empty() && ball.n() >= 2;
  if (!random_family && !config.include_moebius) throw std::invalid_argument("estimate: configuration yields no candidates");
}

std::vector<Candidate> candidates_for(const BallSpec& ball, const EstimatorConfig& config) {
  std::vector<Candidate> out;
  if (ball.n() >= 2) {
    for (int d : config.degrees) {
      for (std::uint64_t s : config.seeds) out.push_back({"random", d, config.seed + s, 0.0});
    }
  }
  if (config.include_moebius) {
    for (double a : kMoebiusSingleParameters) out.push_back({"moebius", 0, config.seed, a});
    if (ball.n() >= 2) {
      for (double a : kMoebiusPairParameters) out.push_back({"moebius-pair", 0, config.seed, a});
    }
  }
  return out;
}

}  // namespace

CandidateRadius radius_of_candidate(const SparsePolynomial& poly, const BallSpec& ball, RadiusKind kind,
                                    const SupEstimate& sup_est) {
  if (poly.empty()) throw std::invalid_argument("radius_of_candidate: zero polynomial");
  if (!(sup_est.lower_est > 0.0) || !(sup_est.upper_cert > 0.0)) {
    throw std::invalid_argument("radius_of_candidate: sup estimate must be positive");
  }
  const SparsePolynomial abs = majorant(poly);
  return {largest_radius(abs, ball, kind, sup_est.upper_cert), largest_radius(abs, ball, kind, sup_est.lower_est)};
}

EstimateReport estimate(const BallSpec& ball, const EstimatorConfig& config) {
  validate(ball, config);
  EstimateReport report;
  report.ball = ball;
  report.config = config;
  if (ball.n() == 1) {
    report.theoretical_lower_K = report.theoretical_upper_K = kOneDimensionalBohrRadius;
    report.theoretical_lower_B = report.theoretical_upper_B = kOneDimensionalBohrRadius;
  } else {
    const BoundReport b = bound_report(ball);
    report.theoretical_lower_K = b.lower_K;
    report.theoretical_upper_K = b.upper_K;
    report.theoretical_lower_B = b.lower_B;
    report.theoretical_upper_B = b.upper_B;
  }

  const std::vector<Candidate> cands = candidates_for(ball, config);
  std::vector<CandidateRecord> records(cands.size());
  std::vector<SupEstimate> sups(cands.size());
  parallel_for(cands.size(), config.threads, [&](std::size_t i) {
    const Candidate& c = cands[i];
    const SparsePolynomial poly = build(c, ball.n());
    const bool long_series = c.family != "random";
    const std::size_t budget = long_series ? std::min(config.budget, kMoebiusBudgetCap) : config.budget;
    sups[i] = sup_norm_estimate(poly, ball, budget, derive_seed(c.seed, i), 1);
    CandidateRecord& r = records[i];
    r.index = i;
    r.family = c.family;
    r.degree = c.degree;
    r.seed = c.seed;
    r.moebius_a = c.a;
    r.terms = poly.size();
    r.lower_est = sups[i].lower_est;
    r.upper_cert = sups[i].upper_cert;
    r.relative_gap = sups[i].relative_gap();
    r.radius_first = radius_of_candidate(poly, ball, RadiusKind::first, sups[i]);
    r.radius_second = radius_of_candidate(poly, ball, RadiusKind::second, sups[i]);
  });

  double run_k = 1.0;
  double run_b = 1.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    CandidateRecord& r = records[i];
    if (r.radius_first.empirical < run_k) {
      run_k = r.radius_first.empirical;
      report.best_index = i;
    }
    run_b = std::min(run_b, r.radius_second.empirical);
    report.certified_upper_K = std::min(report.certified_upper_K, r.radius_first.certified);
    report.certified_upper_B = std::min(report.certified_upper_B, r.radius_second.certified);
    r.running_upper_K = run_k;
    r.running_upper_B = run_b;
  }
  report.empirical_upper_K = run_k;
  report.empirical_upper_B = run_b;
  report.candidates_tried = records.size();
  if (!records.empty()) {
    report.best_witness = build(cands[report.best_index], ball.n());
    report.best_sup = sups[report.best_index];
  }
  report.candidates = std::move(records);
  return report;
}

}  // namespace bohrlab
