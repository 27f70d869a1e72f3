// Command-line front end: RD bound sweeps, codebook training/evaluation,
// and the library's self-check suites. Output is CSV on stdout (or --out),
// with '#' header comment lines echoing the full configuration.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "pprd/bounds.hpp"
#include "pprd/codebook.hpp"
#include "pprd/io.hpp"
#include "pprd/rng.hpp"
#include "pprd/sampling.hpp"
#include "pprd/selfcheck.hpp"

namespace {

constexpr const char* kVersion = "pprd 1.0.0";

struct OutputSink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open output file: " + path);
    stream = file.get();
  }
  std::ostream& out() { return *stream; }
};

double to_rate_unit(double nats, bool bits) { return bits ? nats / std::log(2.0) : nats; }

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid;
  grid.reserve(n);
  if (n == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  grid.push_back(lo);
  for (std::size_t i = 1; i + 1 < n; ++i)
    grid.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
  grid.push_back(hi);  // endpoints exact: exp(log(x)) can overshoot by an ulp
  return grid;
}

int run_bounds_gaussian(std::size_t k, std::size_t d, double d_min, double d_max,
                        std::size_t n_points, double epsilon_override, bool bits,
                        const std::string& out_path) {
  if (!(d_min > 0.0) || !(d_min < d_max) ||
      d_max > static_cast<double>(k * d))
    throw CLI::ValidationError("--d-min/--d-max", "need 0 < d_min < d_max <= k*d");
  OutputSink sink;
  sink.open(out_path);
  auto& out = sink.out();
  out << "# " << kVersion << " bounds-gaussian k=" << k << " d=" << d
      << " d_min=" << pprd::format_double(d_min) << " d_max=" << pprd::format_double(d_max)
      << " points=" << n_points << " epsilon="
      << (epsilon_override > 0.0 ? pprd::format_double(epsilon_override) : "default")
      << " unit=" << (bits ? "bits" : "nats") << "\n";
  out << "# columns: D,R_vec,lower,lower_clamped,upper,epsilon\n";
  for (const double D : log_grid(d_min, d_max, n_points)) {
    const double rvec = pprd::gaussian_vector_rd(k, d, D);
    const double lower = pprd::gaussian_pp_lower(k, d, D);
    const double eps = epsilon_override > 0.0 ? epsilon_override
                                              : pprd::gaussian_default_epsilon(k, d, D);
    // At D = k*d the rate is zero and the upper-bound construction is void.
    const double upper = D < static_cast<double>(k * d)
                             ? pprd::gaussian_pp_upper(k, d, D, eps)
                             : 0.0;
    out << pprd::format_double(D) << ',' << pprd::format_double(to_rate_unit(rvec, bits))
        << ',' << pprd::format_double(to_rate_unit(lower, bits)) << ','
        << pprd::format_double(to_rate_unit(std::max(lower, 0.0), bits)) << ','
        << pprd::format_double(to_rate_unit(upper, bits)) << ','
        << pprd::format_double(eps) << '\n';
  }
  return 0;
}

int run_bounds_poisson(double lambda, double c, std::size_t k_max,
                       const std::vector<std::size_t>& n_list, std::size_t n_max_flag,
                       std::size_t lower_points, bool bits, const std::string& out_path) {
  OutputSink sink;
  sink.open(out_path);
  auto& out = sink.out();
  out << "# " << kVersion << " bounds-poisson lambda=" << pprd::format_double(lambda)
      << " c=" << pprd::format_double(c) << " kmax=" << k_max << " unit="
      << (bits ? "bits" : "nats") << "\n";
  out << "# columns: kind,N,D,R,R_clamped,lower_at_D,nonconcave\n";

  std::vector<std::string> errors;
  double d_lo = 1e300, d_hi = 0.0;
  std::vector<pprd::RdPoint> uppers;
  std::vector<pprd::PoissonBoundParams> upper_params;
  for (const std::size_t N : n_list) {
    pprd::PoissonBoundParams params = pprd::PoissonBoundParams::defaults(lambda, c, N);
    params.k_max = k_max;
    if (n_max_flag > 0) params.n_max = std::min(n_max_flag, N);
    if (static_cast<double>(N) < 1.0 / (std::sqrt(2.0) * c)) {
      std::ostringstream os;
      os << "N=" << N << " violates N >= 1/(sqrt(2) c) = " << 1.0 / (std::sqrt(2.0) * c);
      errors.push_back(os.str());
      continue;
    }
    uppers.push_back(pprd::poisson_upper_unit_square(params));
    upper_params.push_back(params);
    d_lo = std::min(d_lo, uppers.back().distortion_D);
    d_hi = std::max(d_hi, uppers.back().distortion_D);
  }
  if (uppers.empty()) {
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    throw CLI::ValidationError("--n-list", "no valid N values");
  }

  // Lower-bound curve over a D grid spanning the upper-bound range.
  pprd::PoissonBoundParams lower_params = upper_params.front();
  for (const double D : log_grid(d_lo, d_hi, lower_points)) {
    const pprd::PoissonLowerResult lo = pprd::poisson_lower_unit_square(lower_params, D);
    out << "lower,," << pprd::format_double(D) << ','
        << pprd::format_double(to_rate_unit(lo.rate, bits)) << ','
        << pprd::format_double(to_rate_unit(std::max(lo.rate, 0.0), bits)) << ",,"
        << (lo.nonconcave ? "true" : "false") << '\n';
  }
  for (std::size_t i = 0; i < uppers.size(); ++i) {
    const auto& up = uppers[i];
    const pprd::PoissonLowerResult lo =
        pprd::poisson_lower_unit_square(upper_params[i], up.distortion_D);
    if (up.rate_R < lo.rate) {
      std::ostringstream os;
      os << "upper bound below lower bound at D=" << up.distortion_D;
      errors.push_back(os.str());
    }
    out << "upper," << up.params[2].second << ',' << pprd::format_double(up.distortion_D)
        << ',' << pprd::format_double(to_rate_unit(up.rate_R, bits)) << ','
        << pprd::format_double(to_rate_unit(std::max(up.rate_R, 0.0), bits)) << ','
        << pprd::format_double(to_rate_unit(lo.rate, bits)) << ','
        << (lo.nonconcave ? "true" : "false") << '\n';
  }
  for (const auto& e : errors) std::cerr << "error: " << e << "\n";
  return errors.empty() ? 0 : 1;
}

struct SourceConfig {
  std::string kind = "gaussian";  // gaussian | poisson
  std::size_t k = 4;
  std::size_t d = 2;
  double lambda = 10.0;
};

pprd::PatternSource make_source(const SourceConfig& cfg) {
  if (cfg.kind == "gaussian") {
    const pprd::GaussianFixedSource src{cfg.k, cfg.d};
    return [src](pprd::Rng& rng) { return pprd::sample_gaussian_fixed(src, rng); };
  }
  if (cfg.kind == "poisson") {
    const pprd::PoissonUnitSquareSource src{cfg.lambda};
    return [src](pprd::Rng& rng) { return pprd::sample_poisson_unit_square(src, rng); };
  }
  throw CLI::ValidationError("--source", "unknown source kind: " + cfg.kind);
}

int run_train(const SourceConfig& source_cfg, std::size_t M, const std::string& heuristic,
              double cutoff, std::uint64_t seed, std::size_t train_samples,
              std::size_t eval_samples, bool bits, const std::string& codebook_path,
              const std::string& out_path) {
  const pprd::CenterHeuristic heur = pprd::center_heuristic_from_string(heuristic);
  const pprd::PatternSource source = make_source(source_cfg);
  const std::size_t n_train = train_samples > 0 ? train_samples : 100 * M;

  pprd::Rng root(seed);
  pprd::Rng sample_rng = root.split(0);
  pprd::Rng train_rng = root.split(1);
  pprd::Rng eval_rng = root.split(2);

  std::vector<pprd::PointPattern> training;
  training.reserve(n_train);
  for (std::size_t i = 0; i < n_train; ++i) training.push_back(source(sample_rng));

  pprd::DistortionSpec spec = source_cfg.kind == "poisson"
                                  ? pprd::DistortionSpec::usospa(cutoff)
                                  : pprd::DistortionSpec::rho2();

  pprd::DistortionEstimate estimate;
  pprd::RdPoint point;
  if (source_cfg.kind == "poisson") {
    // Variable cardinality: per-cardinality codebook family with a uniform
    // budget of M codewords per observed cardinality.
    std::map<std::size_t, std::size_t> budget;
    for (const auto& s : training) budget[s.size()] = std::max<std::size_t>(M, 1);
    if (budget.count(0)) budget[0] = 1;
    const pprd::CodebookFamily family = pprd::lbg_train_per_cardinality(
        training, budget, cutoff, heur, pprd::LbgOptions{}, train_rng);
    estimate = pprd::estimate_distortion(family, source, eval_samples, eval_rng);
    point.distortion_D = estimate.mean;
    point.rate_R = family.total_rate();
    point.bound_id = "codebook_family";
    point.params = {{"M_per_cardinality", std::to_string(M)},
                    {"heuristic", heuristic},
                    {"seed", std::to_string(seed)},
                    {"stderr", pprd::format_double(estimate.stderr_)}};
    if (!codebook_path.empty()) {
      std::ofstream cb_out(codebook_path);
      if (!cb_out) throw std::runtime_error("cannot open: " + codebook_path);
      for (const auto& [k, cb] : family.per_cardinality) pprd::save_codebook(cb_out, cb);
    }
  } else {
    pprd::Codebook cb =
        pprd::lbg_train(training, M, spec, heur, pprd::LbgOptions{}, train_rng);
    cb.metadata.seed = seed;
    estimate = pprd::estimate_distortion(cb, source, eval_samples, eval_rng);
    point = pprd::operational_point(cb, estimate);
    if (!codebook_path.empty()) pprd::save_codebook_file(codebook_path, cb);
  }

  OutputSink sink;
  sink.open(out_path);
  auto& out = sink.out();
  out << "# " << kVersion << " train source=" << source_cfg.kind << " k=" << source_cfg.k
      << " d=" << source_cfg.d << " lambda=" << pprd::format_double(source_cfg.lambda)
      << " M=" << M << " heuristic=" << heuristic << " seed=" << seed
      << " train_samples=" << n_train << " eval_samples=" << eval_samples
      << " unit=" << (bits ? "bits" : "nats") << "\n";
  out << "# columns: D,R,bound_id,params\n";
  point.rate_R = to_rate_unit(point.rate_R, bits);
  out << pprd::rd_point_csv(point) << '\n';
  return 0;
}

int run_eval(const std::string& codebook_path, const SourceConfig& source_cfg,
             std::size_t eval_samples, std::uint64_t seed, bool bits,
             const std::string& out_path) {
  const pprd::Codebook cb = pprd::load_codebook_file(codebook_path);
  const pprd::PatternSource source = make_source(source_cfg);
  pprd::Rng eval_rng = pprd::Rng(seed).split(2);
  const pprd::DistortionEstimate estimate =
      pprd::estimate_distortion(cb, source, eval_samples, eval_rng);
  pprd::RdPoint point = pprd::operational_point(cb, estimate);
  OutputSink sink;
  sink.open(out_path);
  auto& out = sink.out();
  out << "# " << kVersion << " eval codebook=" << codebook_path
      << " source=" << source_cfg.kind << " eval_samples=" << eval_samples
      << " seed=" << seed << " unit=" << (bits ? "bits" : "nats") << "\n";
  out << "# columns: D,R,bound_id,params\n";
  point.rate_R = to_rate_unit(point.rate_R, bits);
  out << pprd::rd_point_csv(point) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-distortion bounds and codebooks for finite point patterns"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Plain key = value config file ('#' comments)");
  app.require_subcommand(1);
  app.fallthrough();  // global flags (--seed, --out, --bits) after the subcommand

  bool bits = false;
  std::uint64_t seed = 1;
  std::string out_path;
  app.add_flag("--bits", bits, "Report rates in bits instead of nats");
  app.add_option("--seed", seed, "Random seed threaded through all samplers");
  app.add_option("--out", out_path, "Output file (default: stdout)");

  // bounds-gaussian
  auto* bg = app.add_subcommand("bounds-gaussian",
                                "Gaussian fixed-cardinality RD bound sweep");
  std::size_t bg_k = 4, bg_d = 2, bg_points = 50;
  double bg_dmin = 1e-6, bg_dmax = 0.0, bg_eps = 0.0;
  bg->add_option("--k", bg_k, "Pattern cardinality")->check(CLI::PositiveNumber);
  bg->add_option("--d", bg_d, "Point dimension")->check(CLI::PositiveNumber);
  bg->add_option("--d-min", bg_dmin, "Smallest distortion in the grid");
  bg->add_option("--d-max", bg_dmax, "Largest distortion in the grid (default k*d)");
  bg->add_option("--points", bg_points, "Grid size (log-spaced)");
  bg->add_option("--epsilon", bg_eps, "Fixed epsilon (default (D/(kd))^(3/8))");

  // bounds-poisson
  auto* bp = app.add_subcommand("bounds-poisson",
                                "Poisson unit-square RD bound sweep");
  double bp_lambda = 10.0, bp_c = 0.1;
  std::size_t bp_kmax = 0, bp_nmax = 0, bp_lower_points = 50;
  std::vector<std::size_t> bp_nlist{8, 16, 32, 64, 128, 207};
  bp->add_option("--lambda", bp_lambda, "Mean cardinality");
  bp->add_option("--cutoff", bp_c, "USOSPA cut-off c");
  bp->add_option("--kmax", bp_kmax, "Lower-bound truncation (default floor(1/(2 pi c^2)))");
  bp->add_option("--n-grid", bp_nlist, "Grid sizes N for the upper bound");
  bp->add_option("--nmax", bp_nmax, "Upper-bound truncation (default min(N,10))");
  bp->add_option("--lower-points", bp_lower_points, "Lower-bound D-grid size");

  // train
  auto* tr = app.add_subcommand("train", "Train and evaluate an LBG codebook");
  SourceConfig tr_src;
  std::size_t tr_m = 64, tr_samples = 0, tr_eval = 100000;
  double tr_cutoff = 0.1;
  std::string tr_heuristic = "modified_single_hub", tr_codebook;
  tr->add_option("--source", tr_src.kind, "Source model: gaussian | poisson");
  tr->add_option("--k", tr_src.k, "Cardinality (gaussian source)");
  tr->add_option("--d", tr_src.d, "Dimension (gaussian source)");
  tr->add_option("--lambda", tr_src.lambda, "Mean cardinality (poisson source)");
  tr->add_option("--M", tr_m, "Codebook size")->check(CLI::PositiveNumber);
  tr->add_option("--cutoff", tr_cutoff, "USOSPA cut-off (poisson source)");
  tr->add_option("--heuristic", tr_heuristic,
                 "exact | single_hub | multi_hub | modified_single_hub");
  tr->add_option("--samples", tr_samples, "Training sample count (default 100*M)");
  tr->add_option("--eval-samples", tr_eval, "Monte Carlo evaluation sample count");
  tr->add_option("--codebook-out", tr_codebook, "Codebook output file");

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a stored codebook");
  SourceConfig ev_src;
  std::string ev_codebook;
  std::size_t ev_samples = 100000;
  ev->add_option("--codebook", ev_codebook, "Codebook file")->required();
  ev->add_option("--source", ev_src.kind, "Source model: gaussian | poisson");
  ev->add_option("--k", ev_src.k, "Cardinality (gaussian source)");
  ev->add_option("--d", ev_src.d, "Dimension (gaussian source)");
  ev->add_option("--lambda", ev_src.lambda, "Mean cardinality (poisson source)");
  ev->add_option("--samples", ev_samples, "Monte Carlo evaluation sample count");

  // verify
  auto* vf = app.add_subcommand("verify", "Run the library property suites");
  std::string vf_suite = "all";
  vf->add_option("--suite", vf_suite, "distortion | bounds | sampling | codebook | all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bg->parsed()) {
      const double dmax = bg_dmax > 0.0 ? bg_dmax : static_cast<double>(bg_k * bg_d);
      return run_bounds_gaussian(bg_k, bg_d, bg_dmin, dmax, bg_points, bg_eps, bits,
                                 out_path);
    }
    if (bp->parsed()) {
      const std::size_t kmax =
          bp_kmax > 0 ? bp_kmax
                      : static_cast<std::size_t>(std::floor(
                            1.0 / (2.0 * 3.14159265358979323846 * bp_c * bp_c)));
      return run_bounds_poisson(bp_lambda, bp_c, kmax, bp_nlist, bp_nmax,
                                bp_lower_points, bits, out_path);
    }
    if (tr->parsed())
      return run_train(tr_src, tr_m, tr_heuristic, tr_cutoff, seed, tr_samples, tr_eval,
                       bits, tr_codebook, out_path);
    if (ev->parsed())
      return run_eval(ev_codebook, ev_src, ev_samples, seed, bits, out_path);
    if (vf->parsed()) {
      OutputSink sink;
      sink.open(out_path);
      const int failures = pprd::verify_suite(vf_suite, sink.out(), seed);
      sink.out() << (failures == 0 ? "ALL CHECKS PASSED" : "FAILURES: ")
                 << (failures == 0 ? std::string() : std::to_string(failures)) << "\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
