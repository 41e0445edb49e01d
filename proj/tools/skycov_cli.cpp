#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skycov/analytic.hpp"
#include "skycov/maths.hpp"
#include "skycov/params.hpp"
#include "skycov/sir_mc.hpp"

using namespace skycov;

namespace {

struct SweepSpec {
  std::string name;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& s) {
  SweepSpec sw;
  const auto c1 = s.find(':');
  if (c1 == std::string::npos) throw std::invalid_argument("--sweep expects NAME:START:STOP:STEP");
  sw.name = s.substr(0, c1);
  double start, stop, step;
  if (std::sscanf(s.c_str() + c1, ":%lf:%lf:%lf", &start, &stop, &step) != 3)
    throw std::invalid_argument("--sweep expects NAME:START:STOP:STEP");
  static const char* allowed[] = {"sir_threshold_db", "r_cluster", "c_f", "lambda_b", "h_ue"};
  bool ok = false;
  for (const char* a : allowed) ok = ok || sw.name == a;
  if (!ok) throw std::invalid_argument("--sweep: unknown parameter '" + sw.name + "'");
  if (!(step > 0.0) || stop < start)
    throw std::invalid_argument("--sweep: need START <= STOP and STEP > 0");
  for (double v = start; v <= stop + 1e-9 * step; v += step) sw.values.push_back(v);
  return sw;
}

// keeps the kappa_max tail invariant satisfied when a sweep enlarges the cluster
void refresh_kappa_max(SystemParams& p) {
  const double mu = p.c_f * p.lambda_b * M_PI * p.r_cluster * p.r_cluster;
  const int need = static_cast<int>(std::ceil(std::ceil(mu) + 8.0 * std::sqrt(mu)));
  if (p.numerics.kappa_max < need) p.numerics.kappa_max = need;
}

void apply_swept(SystemParams& p, const std::string& name, double v) {
  if (name == "sir_threshold_db") p.sir_threshold = db_to_linear(v);
  else if (name == "r_cluster") p.r_cluster = v;
  else if (name == "c_f") p.c_f = v;
  else if (name == "lambda_b") p.lambda_b = v * 1e-6;  // CLI unit: per km^2
  else if (name == "h_ue") p.h_ue = v;
  refresh_kappa_max(p);
  validate(p);
}

Scheme scheme_from_name(const std::string& s) {
  if (s == "comp-exact") return Scheme::CompExact;
  if (s == "comp-cauchy") return Scheme::CompCauchy;
  if (s == "nearest-sbs") return Scheme::NearestSbs;
  return Scheme::GroundUser;
}

int cmd_coverage(const std::string& config, const std::string& method,
                 std::vector<std::string> schemes, const std::string& sweep_str,
                 std::int64_t trials, std::int64_t seed_opt, double v_max_opt,
                 int kappa_max_opt) {
  SystemParams base = config.empty() ? SystemParams{} : load_config(config);
  if (trials > 0) base.numerics.n_trials = trials;
  if (seed_opt >= 0) base.numerics.rng_seed = static_cast<std::uint64_t>(seed_opt);
  if (v_max_opt > 0.0) base.numerics.v_max = v_max_opt;
  if (kappa_max_opt > 0) base.numerics.kappa_max = kappa_max_opt;
  refresh_kappa_max(base);
  validate(base);
  if (schemes.empty()) schemes.push_back("comp-exact");

  SweepSpec sw;
  if (sweep_str.empty()) {
    sw.name = "none";
    sw.values.push_back(0.0);
  } else {
    sw = parse_sweep(sweep_str);
  }

  std::printf("swept_name,swept_value,scheme,method,value,ci_low,ci_high,n_trials,seed\n");
  for (double v : sw.values) {
    SystemParams p = base;
    if (sw.name != "none") apply_swept(p, sw.name, v);
    for (const std::string& sname : schemes) {
      if (method == "analytic") {
        const CoverageResult cr = coverage_probability(p, p.sir_threshold);
        const double lo = std::max(0.0, cr.value - 1.959963984540054 * cr.std_error);
        const double hi = std::min(1.0, cr.value + 1.959963984540054 * cr.std_error);
        std::printf("%s,%.9g,%s,analytic,%.9g,%.9g,%.9g,%d,%" PRIu64 "\n", sw.name.c_str(), v,
                    sname.c_str(), cr.value, lo, hi, p.numerics.n_geom, p.numerics.rng_seed);
      } else {
        const CoverageEstimate est =
            estimate_coverage(p, scheme_from_name(sname), p.sir_threshold,
                              p.numerics.n_trials, p.numerics.rng_seed);
        std::printf("%s,%.9g,%s,simulated,%.9g,%.9g,%.9g,%" PRId64 ",%" PRIu64 "\n",
                    sw.name.c_str(), v, sname.c_str(), est.p_hat, est.ci_low, est.ci_high,
                    est.n_trials, p.numerics.rng_seed);
      }
    }
  }
  return 0;
}

int cmd_gain_pdf(const std::string& config, std::int64_t realizations, int bins,
                 std::int64_t seed_opt) {
  SystemParams p = config.empty() ? SystemParams{} : load_config(config);
  if (seed_opt >= 0) p.numerics.rng_seed = static_cast<std::uint64_t>(seed_opt);
  const GainPdf g = empirical_gain_pdf(p, realizations, bins, p.numerics.rng_seed);
  std::printf("bin_center,empirical_density,matched_gamma_density\n");
  for (std::size_t i = 0; i < g.bin_centers.size(); ++i)
    std::printf("%.9g,%.9g,%.9g\n", g.bin_centers[i], g.empirical_density[i],
                g.gamma_density[i]);
  std::printf("# ks_distance=%.9g kappa=%zu k_eq=%.9g theta=%.9g\n", g.ks_distance, g.kappa,
              g.k_eq, g.theta_scale);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage probability of cache-assisted CoMP for aerial users"};
  app.require_subcommand(1);

  std::string config, method = "simulated", sweep;
  std::vector<std::string> schemes;
  std::int64_t trials = 0, seed = -1, realizations = 100000;
  double v_max = 0.0;
  int kappa_max = 0, bins = 60;

  auto* cov = app.add_subcommand("coverage", "coverage probability, single point or sweep");
  cov->add_option("--config", config, "flat key/value parameter file");
  cov->add_option("--method", method)->check(CLI::IsMember({"simulated", "analytic"}));
  cov->add_option("--scheme", schemes,
                  "repeatable: comp-exact, comp-cauchy, nearest-sbs, ground-user")
      ->check(CLI::IsMember({"comp-exact", "comp-cauchy", "nearest-sbs", "ground-user"}));
  cov->add_option("--sweep", sweep, "NAME:START:STOP:STEP");
  cov->add_option("--trials", trials)->check(CLI::PositiveNumber);
  cov->add_option("--seed", seed)->check(CLI::NonNegativeNumber);
  cov->add_option("--v-max", v_max)->check(CLI::PositiveNumber);
  cov->add_option("--kappa-max", kappa_max)->check(CLI::PositiveNumber);

  auto* gp = app.add_subcommand("gain-pdf", "equivalent-gain histogram vs matched Gamma");
  gp->add_option("--config", config, "flat key/value parameter file");
  gp->add_option("--realizations", realizations, "fading draws (>= 10^4)");
  gp->add_option("--bins", bins)->check(CLI::PositiveNumber);
  gp->add_option("--seed", seed)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (cov->parsed())
      return cmd_coverage(config, method, schemes, sweep, trials, seed, v_max, kappa_max);
    return cmd_gain_pdf(config, realizations, bins, seed);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
}
