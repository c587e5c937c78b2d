#include "commands.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bohrlab/bounds.hpp"
#include "bohrlab/estimator.hpp"
#include "bohrlab/parallel.hpp"
#include "bohrlab/random_poly.hpp"
#include "bohrlab/univariate.hpp"
#include "io.hpp"
#include "verify.hpp"

namespace bohrlab::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string format;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("BOHRLAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-') throw UsageError(std::string("BOHRLAB_SEED is not a 64-bit unsigned integer: ") + env);
  return v;
}

std::vector<Exponent> parse_exponents(const std::string& text) {
  std::vector<Exponent> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Exponent::parse(item));
  if (out.empty()) throw UsageError("no exponent given");
  return out;
}

json base_config(const Globals& g) {
  return json{{"seed", g.seed}, {"threads", g.threads}, {"format", g.format}};
}

/// One-record output: a JSON object or a two-line CSV.
void emit_record(const RunInfo& info, const Globals& g, const std::vector<std::pair<std::string, json>>& fields) {
  if (g.format == "csv") {
    std::string head;
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto& [k, v] = fields[i];
      head += (i ? "," : "") + k;
      std::string cell;
      if (v.is_number_float()) {
        cell = format_number(v.get<double>());
      } else if (v.is_null()) {
        cell = "";
      } else if (v.is_string()) {
        cell = v.get<std::string>();
      } else {
        cell = v.dump();
      }
      row += (i ? "," : "") + cell;
    }
    write_output(g.out, csv_header(info) + head + "\n" + row + "\n");
    return;
  }
  json result = json::object();
  for (const auto& [k, v] : fields) result[k] = v;
  write_output(g.out, json_envelope(info, result).dump(2) + "\n");
}

struct SeriesInput {
  std::string coeffs;
  double a = 0.0;
  int K = 0;

  void add_to(CLI::App* sub, int default_K) {
    K = default_K;
    sub->add_option("--coeffs", coeffs, "Maclaurin coefficients as a JSON array of numbers or [re, im] pairs");
    sub->add_option("--a", a, "Use the Moebius factor (z - a)/(1 - a z), 0 < a < 1");
    sub->add_option("--K", K, "Truncation order for --a")->capture_default_str();
  }

  UnivariateSeries series() const {
    if (!coeffs.empty() && a != 0.0) throw UsageError("give either --coeffs or --a, not both");
    if (!coeffs.empty()) return parse_series(coeffs);
    if (a == 0.0) throw UsageError("one of --coeffs or --a is required");
    return moebius_coeffs(a, K);
  }

  json config() const {
    if (!coeffs.empty()) return json{{"coeffs", json::parse(coeffs)}};
    return json{{"a", a}, {"K", K}};
  }
};

// bounds

struct BoundsArgs {
  std::string n_range = "2:200";
  std::string p = "1,2,inf";
};

int cmd_bounds(const BoundsArgs& args, Globals g) {
  if (g.format.empty()) g.format = "csv";
  const auto ns = parse_int_list(args.n_range);
  const auto ps = parse_exponents(args.p);
  for (auto n : ns) {
    if (n < 2 || n > 100'000'000) throw UsageError("bounds: every n must lie in 2..1e8");
  }
  json config = base_config(g);
  config["n_range"] = args.n_range;
  config["p"] = args.p;
  const RunInfo info{"bounds", config, g.seed};

  std::vector<BoundReport> rows;
  for (auto n : ns) {
    for (const auto& p : ps) rows.push_back(bound_report(BallSpec(static_cast<int>(n), p)));
  }
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n}, {"p", r.p.to_string()}, {"lower_K", r.lower_K}, {"upper_K", r.upper_K},
                     {"stir_K", r.stir_K}, {"d_K", r.d_used_K}, {"lower_B", r.lower_B}, {"upper_B", r.upper_B},
                     {"stir_B", r.stir_B ? json(*r.stir_B) : json(nullptr)}, {"d_B", r.d_used_B},
                     {"upper_K_raw", r.upper_K_raw}, {"upper_B_raw", r.upper_B_raw}});
    }
    write_output(g.out, json_envelope(info, json{{"rows", arr}}).dump(2) + "\n");
    return kExitOk;
  }
  std::string text = csv_header(info);
  text += "n,p,lower_K,upper_K,stir_K,d_K,lower_B,upper_B,stir_B,d_B,upper_K_raw,upper_B_raw\n";
  for (const auto& r : rows) {
    text += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.n, r.p.to_string(), format_number(r.lower_K),
                        format_number(r.upper_K), format_number(r.stir_K), r.d_used_K, format_number(r.lower_B),
                        format_number(r.upper_B), format_number(r.stir_B), r.d_used_B, format_number(r.upper_K_raw),
                        format_number(r.upper_B_raw));
  }
  write_output(g.out, text);
  return kExitOk;
}

// single-series commands

int cmd_wintner(const SeriesInput& in, Globals g) {
  const UnivariateSeries s = in.series();
  json config = base_config(g);
  config.update(in.config());
  const WintnerResult w = wintner_objective(s);
  const double c0 = std::abs(s[0]);
  const double h2 = h2_norm(s);
  emit_record({"wintner", config, g.seed}, g,
              {{"objective", json_number(w.value)},
               {"argmin_r", json_number(w.argmin)},
               {"abs_c0", json_number(c0)},
               {"h2_norm", json_number(h2)},
               {"h2_bound", c0 <= 1.0 ? json_number(wintner_h2_bound(c0)) : json(nullptr)},
               {"h2_hypothesis", h2 <= 1.0 + 1e-12}});
  return kExitOk;
}

int cmd_bohr1d(const SeriesInput& in, Globals g) {
  const UnivariateSeries s = in.series();
  json config = base_config(g);
  config.update(in.config());
  const UnitBallSample sample = sample_unit_ball(s);
  const double r = bohr_radius_1d(s);
  emit_record({"bohr1d", config, g.seed}, g,
              {{"radius", json_number(r)},
               {"sampled_max", json_number(sample.sampled_max)},
               {"sampling_radius", json_number(sample.radius)},
               {"tail_allowance", json_number(sample.tail_allowance)},
               {"order", s.order()}});
  return kExitOk;
}

int cmd_caratheodory(const SeriesInput& in, Globals g) {
  const UnivariateSeries s = in.series();
  json config = base_config(g);
  config.update(in.config());
  const CaratheodoryResult c = caratheodory_check(s);
  emit_record({"caratheodory", config, g.seed}, g,
              {{"passes", c.passes}, {"worst_ratio", json_number(c.worst_ratio)}, {"worst_index", c.worst_index},
               {"abs_c0", json_number(std::abs(s[0]))}});
  return kExitOk;
}

// wiener

struct WienerArgs {
  std::string poly;
  std::string poly_file;
  std::string alpha;
  double b = 0.0;
  std::string p = "inf";
};

int cmd_wiener(const WienerArgs& args, Globals g) {
  if (args.poly.empty() == args.poly_file.empty()) throw UsageError("wiener: give exactly one of --poly or --poly-file");
  std::string text = args.poly;
  if (!args.poly_file.empty()) {
    std::ifstream f(args.poly_file);
    if (!f) throw UsageError("wiener: cannot read " + args.poly_file);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  json pj;
  try {
    pj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("wiener: polynomial is not valid JSON: ") + e.what());
  }
  const SparsePolynomial poly = polynomial_from_json(pj);
  std::vector<int> exps;
  for (auto v : parse_int_list(args.alpha)) exps.push_back(static_cast<int>(v));
  const MultiIndex alpha(std::move(exps));
  const BallSpec ball(static_cast<int>(poly.dim()), Exponent::parse(args.p));
  const double b = args.b > 0.0 ? args.b : cauchy_derivative_bound(alpha, ball);

  json config = base_config(g);
  config["poly"] = pj;
  config["alpha"] = args.alpha;
  config["b"] = args.b;
  config["p"] = args.p;
  const WienerAverage w = wiener_average(poly, alpha, b);
  const double c_alpha = std::abs(poly.coefficient(alpha));
  g.format = "json";
  emit_record({"wiener", config, g.seed}, g,
              {{"averaged", to_json(w.averaged)},
               {"b", json_number(b)},
               {"derivative_bound", json_number(w.derivative_bound)},
               {"coefficient_bound", json_number(w.coefficient_bound)},
               {"abs_c_alpha", json_number(c_alpha)},
               {"within_coefficient_bound", c_alpha <= w.coefficient_bound + 1e-9}});
  return kExitOk;
}

int cmd_tree(Globals g) {
  const TreeSolution t = tree_solve();
  emit_record({"tree", base_config(g), g.seed}, g,
              {{"closed_form", json_number(t.closed_form)},
               {"newton", json_number(t.newton)},
               {"newton_iterations", t.newton_iterations},
               {"series_residual", json_number(t.series_residual)},
               {"tree_value", json_number(t.tree_value)}});
  return kExitOk;
}

// random-poly

struct RandomPolyArgs {
  int n = 0;
  int d = 0;
  std::string p = "inf";
  std::string seeds = "0:19";
  std::size_t budget = kDefaultSupBudget;
  bool redraw = false;
};

json row_json(const RandomPolyRow& r) {
  return json{{"seed", r.seed},
              {"lower_est", json_number(r.lower_est)},
              {"upper_cert", json_number(r.upper_cert)},
              {"final_prob_bound", json_number(r.final_prob_bound)},
              {"random_bound", json_number(r.random_bound)},
              {"implied_r_first_certified", json_number(r.implied_r_first_certified)},
              {"implied_r_first_empirical", json_number(r.implied_r_first_empirical)},
              {"implied_r_second", json_number(r.implied_r_second)},
              {"budget_used", r.budget_used}};
}

int cmd_random_poly(const RandomPolyArgs& args, Globals g) {
  if (g.format.empty()) g.format = "json";
  if (args.n < 2 || args.d < 2) throw UsageError("random-poly: need --n >= 2 and --d >= 2");
  if (args.budget < 1) throw UsageError("random-poly: --budget must be >= 1");
  const Exponent p = Exponent::parse(args.p);
  const auto offsets = parse_int_list(args.seeds);
  for (auto s : offsets) {
    if (s < 0) throw UsageError("random-poly: seeds must be non-negative");
  }
  json config = base_config(g);
  config.update(json{{"n", args.n}, {"d", args.d}, {"p", p.to_string()}, {"seeds", args.seeds},
                     {"budget", args.budget}, {"redraw", args.redraw}});
  const RunInfo info{"random-poly", config, g.seed};

  std::vector<RandomPolyRow> rows;
  for (auto s : offsets) {
    rows.push_back(random_poly_row(args.n, args.d, p, g.seed + static_cast<std::uint64_t>(s), args.budget, g.threads));
  }
  std::optional<RedrawResult> redraw;
  if (args.redraw) {
    redraw = redraw_until_bound(args.n, args.d, p, g.seed + static_cast<std::uint64_t>(offsets.front()),
                                offsets.size(), args.budget, g.threads);
  }

  if (g.format == "csv") {
    std::string text = csv_header(info);
    text += "seed,lower_est,upper_cert,final_prob_bound,random_bound,implied_r_first_certified,"
            "implied_r_first_empirical,implied_r_second\n";
    for (const auto& r : rows) {
      text += fmt::format("{},{},{},{},{},{},{},{}\n", r.seed, format_number(r.lower_est), format_number(r.upper_cert),
                          format_number(r.final_prob_bound), format_number(r.random_bound),
                          format_number(r.implied_r_first_certified), format_number(r.implied_r_first_empirical),
                          format_number(r.implied_r_second));
    }
    write_output(g.out, text);
    return kExitOk;
  }
  json arr = json::array();
  std::size_t below = 0;
  for (const auto& r : rows) {
    arr.push_back(row_json(r));
    if (r.lower_est <= r.final_prob_bound) ++below;
  }
  json result{{"rows", arr},
              {"log_final_prob_bound", log_final_prob_bound(args.n, args.d, p)},
              {"log_random_bound", log_random_bound(args.n, args.d, p)},
              {"rows_below_final_prob_bound", below}};
  if (redraw) {
    result["redraw"] = {{"found", redraw->found}, {"seed", redraw->seed}, {"redraws", redraw->redraws}};
  }
  write_output(g.out, json_envelope(info, result).dump(2) + "\n");
  return kExitOk;
}

// estimate

struct EstimateArgs {
  int n = 0;
  std::string p = "inf";
  std::string degrees = "2,3,4";
  std::string seeds = "0:9";
  std::size_t budget = kDefaultSupBudget;
  bool moebius = false;
  std::string log;
};

json sup_json(const SupEstimate& s) {
  json point = json::array();
  for (const auto& z : s.argmax_point) point.push_back({z.real(), z.imag()});
  return json{{"lower_est", json_number(s.lower_est)},
              {"upper_cert", json_number(s.upper_cert)},
              {"relative_gap", json_number(s.relative_gap())},
              {"budget_used", s.budget_used},
              {"argmax_point", point}};
}

int cmd_estimate(const EstimateArgs& args, Globals g) {
  if (args.n < 1) throw UsageError("estimate: need --n >= 1");
  EstimatorConfig config;
  for (auto d : parse_int_list(args.degrees)) config.degrees.push_back(static_cast<int>(d));
  for (auto s : parse_int_list(args.seeds)) {
    if (s < 0) throw UsageError("estimate: seeds must be non-negative");
    config.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  config.budget = args.budget;
  config.include_moebius = args.moebius;
  config.seed = g.seed;
  config.threads = g.threads;
  const BallSpec ball(args.n, Exponent::parse(args.p));

  json cfg = base_config(g);
  cfg.update(json{{"n", args.n}, {"p", ball.p().to_string()}, {"degrees", args.degrees}, {"seeds", args.seeds},
                  {"budget", args.budget}, {"moebius", args.moebius}});
  const RunInfo info{"estimate", cfg, g.seed};
  const EstimateReport r = estimate(ball, config);

  json cands = json::array();
  std::string log = csv_header(info);
  log += "index,family,degree,seed,moebius_a,terms,lower_est,upper_cert,relative_gap,r_first_certified,"
         "r_first_empirical,r_second_certified,r_second_empirical,running_upper_K,running_upper_B\n";
  for (const auto& c : r.candidates) {
    cands.push_back({{"index", c.index}, {"family", c.family}, {"degree", c.degree}, {"seed", c.seed},
                     {"moebius_a", c.moebius_a}, {"terms", c.terms}, {"lower_est", json_number(c.lower_est)},
                     {"upper_cert", json_number(c.upper_cert)}, {"relative_gap", json_number(c.relative_gap)},
                     {"r_first_certified", c.radius_first.certified}, {"r_first_empirical", c.radius_first.empirical},
                     {"r_second_certified", c.radius_second.certified},
                     {"r_second_empirical", c.radius_second.empirical}});
    log += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.index, c.family, c.degree, c.seed,
                       format_number(c.moebius_a), c.terms, format_number(c.lower_est), format_number(c.upper_cert),
                       format_number(c.relative_gap), format_number(c.radius_first.certified),
                       format_number(c.radius_first.empirical), format_number(c.radius_second.certified),
                       format_number(c.radius_second.empirical), format_number(c.running_upper_K),
                       format_number(c.running_upper_B));
  }
  json result{
      {"label", "empirical bracket"},
      {"columns",
       {{"empirical", "radius with the sup normalized by lower_est, the best evaluated modulus; an estimate, not a bound"},
        {"certified", "radius with the sup normalized by upper_cert = sum |c_alpha| sup|z^alpha|; rigorous per candidate"},
        {"theoretical", "closed-form lower and upper bounds, upper clamped to 1/3"}}},
      {"n", ball.n()},
      {"p", ball.p().to_string()},
      {"theoretical_lower_K", r.theoretical_lower_K},
      {"theoretical_upper_K", r.theoretical_upper_K},
      {"theoretical_lower_B", r.theoretical_lower_B},
      {"theoretical_upper_B", r.theoretical_upper_B},
      {"empirical_upper_K", r.empirical_upper_K},
      {"empirical_upper_B", r.empirical_upper_B},
      {"certified_upper_K", r.certified_upper_K},
      {"certified_upper_B", r.certified_upper_B},
      {"candidates_tried", r.candidates_tried},
      {"best_index", r.best_index},
      {"best_witness", r.best_witness ? to_json(*r.best_witness) : json(nullptr)},
      {"best_sup", sup_json(r.best_sup)},
      {"candidates", cands}};
  write_output(g.out, json_envelope(info, result).dump(2) + "\n");
  if (!args.log.empty()) write_output(args.log, log);
  return kExitOk;
}

// verify

int cmd_verify(const std::vector<std::string>& only_raw, Globals g) {
  std::vector<std::string> only;
  for (const auto& item : only_raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) only.push_back(part);
    }
  }
  json config = base_config(g);
  config["only"] = only;
  const RunInfo info{"verify", config, g.seed};
  const auto results = run_verify(only, g.threads);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"group", r.group}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    write_output(g.out, json_envelope(info, json{{"checks", arr}, {"all_passed", ok}}).dump(2) + "\n");
  } else {
    std::string text = csv_header(info);
    for (const auto& r : results) {
      text += fmt::format("{} {}/{}{}\n", r.passed ? "PASS" : "FAIL", r.group, r.name,
                          r.detail.empty() ? "" : "  (" + r.detail + ")");
    }
    text += ok ? "all checks passed\n" : "some checks FAILED\n";
    write_output(g.out, text);
  }
  return ok ? kExitOk : kExitInvariant;
}

}  // namespace

int run(int argc, char** argv) {
  Globals g;
  try {
    g.seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"bohrlab: numerical experiments on Bohr radii of l_p balls"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Global seed (default: $BOHRLAB_SEED or 0)");
  app.add_option("--threads", g.threads, "Worker threads; 0 = available parallelism. Results do not depend on it")
      ->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));

  BoundsArgs bounds;
  auto* s_bounds = app.add_subcommand("bounds", "Tabulate the closed-form bounds on K and B over n and p (CSV)");
  s_bounds->add_option("--n-range", bounds.n_range, "Dimensions: a:b inclusive or a comma list")->capture_default_str();
  s_bounds->add_option("--p", bounds.p, "Comma-separated exponents, 'inf' allowed")->capture_default_str();

  SeriesInput wintner;
  auto* s_wintner = app.add_subcommand("wintner", "inf over 0<r<1 of Mf(r)/r for a one-variable series");
  wintner.add_to(s_wintner, 400);

  SeriesInput bohr1d;
  auto* s_bohr1d = app.add_subcommand("bohr1d", "Bohr radius of a one-variable series in the unit ball");
  bohr1d.add_to(s_bohr1d, 300);

  SeriesInput cara;
  auto* s_cara = app.add_subcommand("caratheodory", "Check |c_k| <= 2(1 - |c_0|) for a one-variable series");
  cara.add_to(s_cara, 300);

  WienerArgs wiener;
  auto* s_wiener = app.add_subcommand("wiener", "Root-of-unity averaging of a polynomial for a multi-index (JSON)");
  s_wiener->add_option("--poly", wiener.poly, R"(Polynomial JSON {"dim": n, "terms": [{"alpha": [...], "re": x, "im": y}]})");
  s_wiener->add_option("--poly-file", wiener.poly_file, "File holding the polynomial JSON");
  s_wiener->add_option("--alpha", wiener.alpha, "Multi-index, comma separated")->required();
  s_wiener->add_option("--b", wiener.b, "Bound on |d^alpha f(0)| (default: Cauchy bound on the ball)");
  s_wiener->add_option("--p", wiener.p, "Exponent of the ball for the default b")->capture_default_str();

  auto* s_tree = app.add_subcommand("tree", "Solve for the tree-function constant x with sum k^k/k! x^k = 1/2");

  RandomPolyArgs rp;
  auto* s_rp = app.add_subcommand("random-poly", "Random +-multinomial polynomials: sup estimates and implied radii");
  s_rp->add_option("--n", rp.n, "Number of variables (>= 2)")->required();
  s_rp->add_option("--d", rp.d, "Degree (>= 2)")->required();
  s_rp->add_option("--p", rp.p, "Exponent, 'inf' allowed")->capture_default_str();
  s_rp->add_option("--seeds", rp.seeds, "Seed offsets a:b or list; tensor seed = --seed + offset")->capture_default_str();
  s_rp->add_option("--budget", rp.budget, "Sup-search evaluations per polynomial")->capture_default_str();
  s_rp->add_flag("--redraw", rp.redraw, "Also report how many redraws reach sup <= final_prob_bound");

  EstimateArgs est;
  auto* s_est = app.add_subcommand("estimate", "Empirical bracket of K and B for a small ball (JSON)");
  s_est->add_option("--n", est.n, "Number of variables (1..8)")->required();
  s_est->add_option("--p", est.p, "Exponent, 'inf' allowed")->capture_default_str();
  s_est->add_option("--degrees", est.degrees, "Degrees of random candidates, within 2..8")->capture_default_str();
  s_est->add_option("--seeds", est.seeds, "Seed offsets a:b or list")->capture_default_str();
  s_est->add_option("--budget", est.budget, "Sup-search evaluations per candidate")->capture_default_str();
  s_est->add_flag("--moebius", est.moebius, "Add Moebius factors and their products as candidates");
  s_est->add_option("--log", est.log, "Per-candidate CSV log file");

  std::vector<std::string> only;
  auto* s_verify = app.add_subcommand("verify", "Run the built-in invariant checks; exit 1 on any failure");
  s_verify->add_option("--only", only, "Restrict to groups: " + fmt::format("{}", fmt::join(verify_groups(), ", ")));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s_bounds) return cmd_bounds(bounds, g);
    if (*s_wintner) return cmd_wintner(wintner, g);
    if (*s_bohr1d) return cmd_bohr1d(bohr1d, g);
    if (*s_cara) return cmd_caratheodory(cara, g);
    if (*s_wiener) return cmd_wiener(wiener, g);
    if (*s_tree) return cmd_tree(g);
    if (*s_rp) return cmd_random_poly(rp, g);
    if (*s_est) return cmd_estimate(est, g);
    if (*s_verify) return cmd_verify(only, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}

}  // namespace bohrlab::cli
