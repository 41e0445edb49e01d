// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Everything runs on the library's default parameter set and seed.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skycov/analytic.hpp"
#include "skycov/caching.hpp"
#include "skycov/channel.hpp"
#include "skycov/maths.hpp"
#include "skycov/sir_mc.hpp"

using namespace skycov;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// CI-aware "a >= b": only a confident reversal counts as a violation
bool geq_ci(double a_hi, double b_lo) { return a_hi >= b_lo; }

void keep_kappa_max_valid(SystemParams& p) {
  const double mu = p.c_f * p.lambda_b * M_PI * p.r_cluster * p.r_cluster;
  const int need = static_cast<int>(std::ceil(std::ceil(mu) + 8.0 * std::sqrt(mu)));
  if (p.numerics.kappa_max < need) p.numerics.kappa_max = need;
}

// shared-world SIR samples for the comp pair (same substream -> same world)
struct GridEstimates {
  std::vector<double> exact, cauchy;  // per-trial SIR values
};

GridEstimates sample_comp_pair(const SystemParams& p, std::int64_t n_trials) {
  SirSimulator se(p, Scheme::CompExact), sc(p, Scheme::CompCauchy);
  GridEstimates g;
  g.exact.resize(static_cast<std::size_t>(n_trials));
  g.cauchy.resize(static_cast<std::size_t>(n_trials));
  for (std::int64_t t = 0; t < n_trials; ++t) {
    Philox r1(p.numerics.rng_seed, static_cast<std::uint64_t>(t));
    Philox r2(p.numerics.rng_seed, static_cast<std::uint64_t>(t));
    g.exact[static_cast<std::size_t>(t)] = se.realize(r1).sir;
    g.cauchy[static_cast<std::size_t>(t)] = sc.realize(r2).sir;
  }
  return g;
}

CoverageEstimate coverage_of(const std::vector<double>& sirs, double theta) {
  std::int64_t hits = 0;
  for (double s : sirs)
    if (s > theta) ++hits;
  const auto n = static_cast<std::int64_t>(sirs.size());
  const Interval ci = wilson_interval(hits, n);
  return {static_cast<double>(hits) / static_cast<double>(n), n, ci.low, ci.high, theta};
}

void criterion_1() {
  SystemParams p;
  const CoverageEstimate comp =
      estimate_coverage(p, Scheme::CompExact, 1.0, 10000, p.numerics.rng_seed);
  const CoverageEstimate near =
      estimate_coverage(p, Scheme::NearestSbs, 1.0, 10000, p.numerics.rng_seed);
  const bool ok = comp.p_hat >= 0.63 && comp.p_hat <= 0.77 && near.p_hat >= 0.05 &&
                  near.p_hat <= 0.15;
  report(1, ok,
         "comp-exact " + fmt(comp.p_hat) + " in [0.63,0.77], nearest-sbs " + fmt(near.p_hat) +
             " in [0.05,0.15] (10^4 trials, 0 dB)");
}

void criterion_2() {
  SystemParams p;
  Philox rng(p.numerics.rng_seed, 1ull << 50);
  std::int64_t total = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    PointSet in = sample_ppp_annulus(p.lambda_b, 0.0, p.r_cluster, rng);
    total += static_cast<std::int64_t>(thin_in_cluster(in, p.c_f, rng).caching_in.count());
  }
  const double mean = static_cast<double>(total) / n;
  const bool ok = mean >= 2.51 - 0.03 && mean <= 2.51 + 0.03;
  report(2, ok, "mean caching-SBS count " + fmt(mean) + " in 2.51 +/- 0.03 (10^5 clusters)");
}

void criteria_3_4() {
  SystemParams p;
  const GridEstimates g = sample_comp_pair(p, 10000);
  bool ok3 = true;
  double max_gap = 0.0;
  std::string worst3;
  for (int db = -10; db <= 10; db += 2) {
    const double th = db_to_linear(db);
    const CoverageEstimate ce = coverage_of(g.exact, th);
    const CoverageEstimate cc = coverage_of(g.cauchy, th);
    const CoverageResult an = coverage_probability(p, th);
    const double an_hi = an.value + 1.959963984540054 * an.std_error;
    if (!geq_ci(an_hi, cc.ci_low) || !geq_ci(cc.ci_high, ce.ci_low)) {
      ok3 = false;
      worst3 = " violated at " + std::to_string(db) + " dB (analytic " + fmt(an.value) +
               ", cauchy " + fmt(cc.p_hat) + ", exact " + fmt(ce.p_hat) + ")";
    }
    max_gap = std::max(max_gap, cc.p_hat - ce.p_hat);
  }
  report(3, ok3,
         "analytic >= comp-cauchy >= comp-exact at every point of the -10..10 dB grid"
         " (CI-aware)" + worst3);
  report(4, max_gap <= 0.08,
         "max comp-cauchy - comp-exact gap " + fmt(max_gap) + " <= 0.08 on the grid");
}

void criterion_5() {
  bool ok = true;
  std::string detail;
  double prev_air_lo = 0.0, prev_gnd_lo = 0.0;
  for (int rc = 50; rc <= 400; rc += 50) {
    SystemParams p;
    p.r_cluster = rc;
    keep_kappa_max_valid(p);
    const CoverageEstimate air =
        estimate_coverage(p, Scheme::CompExact, 1.0, 10000, p.numerics.rng_seed);
    const CoverageEstimate gnd =
        estimate_coverage(p, Scheme::GroundUser, 1.0, 10000, p.numerics.rng_seed);
    // nondecreasing, CI-aware: each radius must reach the previous lower CI edge
    if (rc > 50 && (air.ci_high < prev_air_lo || gnd.ci_high < prev_gnd_lo)) {
      ok = false;
      detail += " decrease at R_c=" + std::to_string(rc);
    }
    if (!geq_ci(gnd.ci_high, air.ci_low)) {
      ok = false;
      detail += " ground<aerial at R_c=" + std::to_string(rc);
    }
    prev_air_lo = air.ci_low;
    prev_gnd_lo = gnd.ci_low;
  }
  report(5, ok,
         "comp-exact coverage nondecreasing in R_c (50..400 m) for aerial and ground users,"
         " ground >= aerial throughout" + detail);
}

void criterion_6() {
  bool ok = true;
  std::string detail;
  double prev_sim_lo = 0.0, prev_an_lo = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double cf = 0.2 + 0.2 * i;
    SystemParams p;
    p.c_f = cf;
    keep_kappa_max_valid(p);
    const CoverageEstimate sim =
        estimate_coverage(p, Scheme::CompExact, 1.0, 10000, p.numerics.rng_seed);
    const CoverageResult an = coverage_probability(p, 1.0);
    const double an_hi = an.value + 1.959963984540054 * an.std_error;
    if (i > 0 && sim.ci_high < prev_sim_lo) {
      ok = false;
      detail += " simulated decrease at c_f=" + fmt(cf);
    }
    if (i > 0 && an_hi < prev_an_lo) {
      ok = false;
      detail += " analytic decrease at c_f=" + fmt(cf);
    }
    prev_sim_lo = sim.ci_low;
    prev_an_lo = an.value - 1.959963984540054 * an.std_error;
  }
  report(6, ok,
         "simulated and analytic coverage nondecreasing in c_f (0.2..1.0, 0 dB, CI-aware)" +
             detail);
}

void criterion_7() {
  SystemParams p;
  const GainPdf g = empirical_gain_pdf(p, 100000, 60, p.numerics.rng_seed);
  report(7, g.ks_distance < 0.05,
         "equivalent-gain KS distance " + fmt(g.ks_distance) + " < 0.05 vs matched Gamma"
         " (kappa=" + std::to_string(g.kappa) + ")");
}

bool check_gamma_series() {
  for (int k : {1, 5, 20, 45, 60})
    for (double u : {0.5, 0.7 * k, 1.0 * k, 1.8 * k})
      if (std::fabs(gamma_ccdf_series(u, k, 1.0) - oracles::gamma_q(k, u)) > 1e-10)
        return false;
  return true;
}

bool check_laplace_oracle(const SystemParams& p) {
  const double zeta = path_gain(100.0, true, p, p.h_ue);
  const double w = p.m_nakagami / (p.p_tx * p.eta_spread * zeta);
  const double lam_in = 0.5 * p.lambda_b;
  oracles::Rng mc(20200521);
  const int n = 10000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double interf = 0.0;
    struct Band {
      double lam, a, b;
    };
    const Band bands[] = {{lam_in, 0.0, p.r_cluster}, {p.lambda_b, p.r_cluster, 3000.0}};
    for (const Band& bd : bands) {
      const double area = M_PI * (bd.b * bd.b - bd.a * bd.a);
      const std::int64_t cnt = mc.poisson(bd.lam * area);
      for (std::int64_t k = 0; k < cnt; ++k) {
        const double u = mc.uniform();
        const double r = std::sqrt(bd.a * bd.a + u * (bd.b * bd.b - bd.a * bd.a));
        const bool los = mc.uniform() < los_probability(r, p, p.h_ue);
        interf += p.p_tx * path_gain(r, los, p, p.h_ue) *
                  mc.gamma(p.m_nakagami, p.eta_spread / p.m_nakagami);
      }
    }
    const double e = std::exp(-w * interf);
    s += e;
    s2 += e * e;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  return std::fabs(laplace_interference(w, p, lam_in) - mean) <= 3.0 * se + 1e-4;
}

bool check_derivatives(const SystemParams& p) {
  const double zeta = path_gain(100.0, true, p, p.h_ue);
  const double w = p.m_nakagami / (p.p_tx * p.eta_spread * zeta);
  const double h = 1e-6 * w;
  const LaplaceEval mid = laplace_derivatives(w, 30, p, 0.5 * p.lambda_b);
  const LaplaceEval up = laplace_derivatives(w + h, 4, p, 0.5 * p.lambda_b);
  const LaplaceEval dn = laplace_derivatives(w - h, 4, p, 0.5 * p.lambda_b);
  for (int j = 1; j <= 5; ++j) {
    const double fd = (up.values[j - 1] - dn.values[j - 1]) / (2.0 * h);
    if (std::fabs(mid.values[j] - fd) > 1e-4 * std::fabs(fd)) return false;
  }
  double sign = 1.0;
  for (int j = 0; j <= 30; ++j, sign = -sign)
    if (sign * mid.values[j] <= 0.0) return false;
  return true;
}

bool check_single_server(const SystemParams& p) {
  const double r = 80.0;
  const double zeta = path_gain(r, true, p, p.h_ue);
  const double i0 = 4.7e-9;
  PointMassInterference pm(i0);
  for (double th : {0.25, 1.0, 4.0}) {
    const double got = conditional_coverage({r}, p, th, pm, 0);
    const double want = gamma_ccdf_series(th * i0 / p.p_tx, p.m_nakagami,
                                          p.eta_spread * zeta / p.m_nakagami);
    if (std::fabs(got - want) > 1e-8) return false;
  }
  return true;
}

bool check_sampler_distributions(const SystemParams& p) {
  // BPP distance law
  Philox rng(p.numerics.rng_seed, 1ull << 51);
  PointSet bpp = sample_bpp_disk(100000, p.r_cluster, rng);
  const double d = oracles::ks_statistic(
      bpp.r, [&](double r) { return (r / p.r_cluster) * (r / p.r_cluster); });
  if (d >= oracles::ks_critical(100000, 0.01)) return false;
  // fading power moments
  double s = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double w = sample_nakagami_amplitude(p.m_nakagami, p.eta_spread, rng);
    s += w * w;
  }
  if (std::fabs(s / n - p.eta_spread) > 0.02) return false;
  // cache-count law (total variation)
  double tv = 0.0;
  std::vector<std::int64_t> counts(40, 0);
  const int nc = 100000;
  for (int i = 0; i < nc; ++i) {
    PointSet in = sample_ppp_annulus(p.lambda_b, 0.0, p.r_cluster, rng);
    auto k = thin_in_cluster(in, p.c_f, rng).caching_in.count();
    if (k >= counts.size()) k = counts.size() - 1;
    ++counts[k];
  }
  for (std::size_t k = 0; k < counts.size(); ++k)
    tv += std::fabs(static_cast<double>(counts[k]) / nc -
                    caching_count_pmf(static_cast<std::int64_t>(k), p));
  return 0.5 * tv < 0.01;
}

bool check_determinism(const SystemParams& base) {
  const CoverageEstimate a =
      estimate_coverage(base, Scheme::CompExact, 1.0, 1000, base.numerics.rng_seed);
  const CoverageEstimate b =
      estimate_coverage(base, Scheme::CompExact, 1.0, 1000, base.numerics.rng_seed);
  if (a.p_hat != b.p_hat || a.ci_low != b.ci_low || a.ci_high != b.ci_high) return false;
  SystemParams p = base;
  p.numerics.n_geom = 100;
  const CoverageResult x = coverage_probability(p, 1.0);
  const CoverageResult y = coverage_probability(p, 1.0);
  return x.value == y.value && x.std_error == y.std_error;
}

void criterion_8() {
  SystemParams p;
  std::string detail;
  bool ok = true;
  struct Item {
    const char* name;
    bool pass;
  };
  const Item items[] = {
      {"sampler-distributions", check_sampler_distributions(p)},
      {"gamma-series-vs-oracle", check_gamma_series()},
      {"laplace-vs-mc-oracle", check_laplace_oracle(p)},
      {"derivatives-fd-and-signs", check_derivatives(p)},
      {"single-server-closed-form", check_single_server(p)},
      {"determinism", check_determinism(p)},
  };
  for (const Item& it : items) {
    if (!it.pass) {
      ok = false;
      detail += std::string(" ") + it.name + " failed;";
    }
  }
  report(8, ok, ok ? "property suite (samplers, series oracle, Laplace oracle, derivatives,"
                     " closed form, determinism) all green"
                   : "property suite:" + detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criteria_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
