#include "skycov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "skycov/caching.hpp"
#include "skycov/channel.hpp"
#include "skycov/geometry.hpp"
#include "skycov/maths.hpp"
#include "skycov/parallel.hpp"

namespace skycov {

GammaApprox moment_match_gamma(const std::vector<double>& zetas, const SystemParams& p) {
  if (zetas.empty()) throw std::domain_error("moment_match_gamma: empty gain list");
  double s1 = 0.0, s2 = 0.0;
  for (double z : zetas) {
    if (!(z > 0.0)) throw std::domain_error("moment_match_gamma: nonpositive gain");
    s1 += z;
    s2 += z * z;
  }
  const double m = p.m_nakagami;
  GammaApprox ga;
  ga.k_eq = m * s1 * s1 / s2;
  ga.theta = (p.eta_spread / m) * s2 / s1;
  ga.k_int = p.m_nakagami * static_cast<int>(zetas.size());
  return ga;
}

double gamma_ccdf_series(double x, int k_int, double theta) {
  if (k_int < 1 || !(theta > 0.0) || x < 0.0)
    throw std::invalid_argument("gamma_ccdf_series: need k >= 1, theta > 0, x >= 0");
  const double u = x / theta;
  if (u == 0.0) return 1.0;
  double sum;
  if (u < 700.0) {
    double term = std::exp(-u);
    sum = term;
    for (int j = 1; j < k_int; ++j) {
      term *= u / j;
      sum += term;
    }
  } else {  // log-space fallback for deep-tail arguments
    const double lu = std::log(u);
    sum = 0.0;
    for (int j = 0; j < k_int; ++j) sum += std::exp(-u + j * lu - std::lgamma(j + 1.0));
  }
  return std::min(sum, 1.0);
}

// ---------------------------------------------------------------------------

namespace {

// 16-point Gauss-Legendre on [-1,1]
const double kGlX[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                        0.9445750230732326, 0.9894009349916499};
const double kGlW[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                        0.0622535239386479, 0.0271524594117541};

std::vector<double> panelize(double lo, double hi, const std::vector<double>& candidates) {
  std::set<double> bk{lo, hi};
  for (double c : candidates)
    if (c > lo && c < hi) bk.insert(c);
  // split long gaps geometrically so the NLoS far field is still resolved
  std::vector<double> base(bk.begin(), bk.end());
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    double a = base[i];
    const double b = base[i + 1];
    while (b > 1.4 * (a + 50.0)) {
      a = 1.4 * (a + 50.0);
      if (a < b) bk.insert(a);
      else break;
    }
  }
  return {bk.begin(), bk.end()};
}

}  // namespace

InterferencePgfl::InterferencePgfl(const SystemParams& p, double in_cluster_intensity,
                                   double h_rx)
    : lam_out_(p.lambda_b),
      lam_in_(in_cluster_intensity),
      p_tx_(p.p_tx),
      pe_(p.p_tx * p.eta_spread),
      m_(p.m_nakagami),
      tol_(p.numerics.quad_tolerance) {
  const double v_max = p.numerics.v_max;
  const double sae = std::sqrt(p.bldg_area_fraction * p.bldg_density);
  LosTable los(p, h_rx, v_max);

  // breakpoints: every blockage step while P_l is still significant, the
  // antenna mainlobe edges, and geometric fill (done in panelize)
  std::vector<double> cand;
  {
    const int pmax = los.max_count();
    int last_sig = pmax;
    for (int k = pmax; k >= 1; --k) {
      if (los.at_count(k) > 1e-14) {
        last_sig = k;
        break;
      }
    }
    for (int k = 1; k <= std::min(last_sig + 1, pmax); ++k) cand.push_back(k / sae);
    const double dh = p.h_sbs - h_rx;
    constexpr double deg = M_PI / 180.0;
    for (double ang : {p.theta_tilt + p.theta_beam / 2.0, p.theta_tilt - p.theta_beam / 2.0}) {
      const double t = std::tan(ang * deg);
      if (t != 0.0) {
        const double r = dh / t;
        if (r > 0.0) cand.push_back(r);
      }
    }
  }

  auto fill = [&](double lo, double hi, std::vector<Node>& nodes) {
    const std::vector<double> bk = panelize(lo, hi, cand);
    for (std::size_t i = 0; i + 1 < bk.size(); ++i) {
      const double c = 0.5 * (bk[i] + bk[i + 1]);
      const double h = 0.5 * (bk[i + 1] - bk[i]);
      for (int g = 0; g < 8; ++g) {
        for (double sgn : {-1.0, 1.0}) {
          const double v = c + sgn * h * kGlX[g];
          nodes.push_back({v, h * kGlW[g], path_gain(v, true, p, h_rx),
                           path_gain(v, false, p, h_rx), los(v)});
        }
      }
    }
  };
  fill(p.r_cluster, v_max, out_nodes_);
  if (lam_in_ > 0.0) fill(0.0, p.r_cluster, in_nodes_);

  // first-order NLoS remainder of the [v_max, inf) integral
  const double h2 = (h_rx - p.h_sbs) * (h_rx - p.h_sbs);
  const double g_tail = antenna_gain(v_max, p, h_rx);
  tail_zeta_n_ = p.a_nlos * g_tail * std::pow(v_max * v_max + h2, -p.alpha_nlos / 2.0);
  tail_coef_ = 2.0 * M_PI * lam_out_ * pe_ * p.a_nlos * g_tail *
               std::pow(v_max * v_max + h2, (2.0 - p.alpha_nlos) / 2.0) / (p.alpha_nlos - 2.0);
  const double pl_end = los(v_max);
  if (pl_end > 0.0) {
    if (p.alpha_los <= 2.0)
      tail_los_coef_ = std::numeric_limits<double>::infinity();
    else
      tail_los_coef_ = 2.0 * M_PI * lam_out_ * pe_ * p.a_los * g_tail * pl_end *
                       std::pow(v_max, 2.0 - p.alpha_los) / (p.alpha_los - 2.0);
  }
}

void InterferencePgfl::accumulate(const std::vector<Node>& nodes, double lam, double varpi,
                                  double x_scale, int order, std::vector<double>& out) const {
  // x_scale = varpi gives d^j/dx^j S(varpi x)|_{x=1}; x_scale = 1 gives d^j/d varpi^j
  const double two_pi_lam = 2.0 * M_PI * lam;
  std::vector<double> tl(nodes.size()), tn(nodes.size());
  double acc0 = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    const double bl = pe_ * nd.zeta_l / m_;
    const double bn = pe_ * nd.zeta_n / m_;
    const double dl = std::pow(1.0 + varpi * bl, -static_cast<double>(m_));
    const double dn = std::pow(1.0 + varpi * bn, -static_cast<double>(m_));
    acc0 += nd.w * nd.v * (nd.p_los * (1.0 - dl) + (1.0 - nd.p_los) * (1.0 - dn));
    tl[i] = dl;
    tn[i] = dn;
  }
  out[0] -= two_pi_lam * acc0;
  for (int j = 1; j <= order; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& nd = nodes[i];
      const double bl = pe_ * nd.zeta_l / m_;
      const double bn = pe_ * nd.zeta_n / m_;
      const double cl = (x_scale == 1.0) ? bl : varpi * bl;
      const double cn = (x_scale == 1.0) ? bn : varpi * bn;
      tl[i] *= -cl * (m_ + j - 1.0) / (1.0 + varpi * bl);
      tn[i] *= -cn * (m_ + j - 1.0) / (1.0 + varpi * bn);
      acc += nd.w * nd.v * (nd.p_los * tl[i] + (1.0 - nd.p_los) * tn[i]);
    }
    out[j] += two_pi_lam * acc;
  }
}

std::vector<double> InterferencePgfl::exponent_derivs_scaled(double varpi, int order) const {
  if (varpi < 0.0) throw std::invalid_argument("laplace transform: varpi must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  if (varpi == 0.0) return out;  // S and all scaled derivatives vanish
  accumulate(out_nodes_, lam_out_, varpi, varpi, order, out);
  if (lam_in_ > 0.0) accumulate(in_nodes_, lam_in_, varpi, varpi, order, out);
  // first-order tail, linear in x: contributes to orders 0 and 1 only
  out[0] -= tail_coef_ * varpi;
  if (order >= 1) out[1] -= tail_coef_ * varpi;
  const double second_order =
      0.5 * (m_ + 1.0) / m_ * (varpi * pe_ * tail_zeta_n_) * tail_coef_ * varpi;
  const double err = tail_los_coef_ * varpi + second_order;
  if (err > std::max(tol_, tol_ * std::fabs(out[0])))
    throw accuracy_error(
        "laplace_interference: truncation tail exceeds quad_tolerance; increase v_max");
  return out;
}

std::vector<double> InterferencePgfl::exponent_derivs_true(double varpi, int order) const {
  if (varpi < 0.0) throw std::invalid_argument("laplace transform: varpi must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  accumulate(out_nodes_, lam_out_, varpi, 1.0, order, out);
  if (lam_in_ > 0.0) accumulate(in_nodes_, lam_in_, varpi, 1.0, order, out);
  out[0] -= tail_coef_ * varpi;
  if (order >= 1) out[1] -= tail_coef_;
  return out;
}

std::vector<double> PointMassInterference::exponent_derivs_scaled(double varpi,
                                                                  int order) const {
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  out[0] = -varpi * i0_;
  if (order >= 1) out[1] = -varpi * i0_;
  return out;
}

double laplace_interference(double varpi, const SystemParams& p, double in_cluster_intensity) {
  InterferencePgfl lt(p, in_cluster_intensity, p.h_ue);
  return std::exp(lt.exponent_derivs_scaled(varpi, 0)[0]);
}

LaplaceEval laplace_derivatives(double varpi, int order, const SystemParams& p,
                                double in_cluster_intensity) {
  if (order < 0) throw std::invalid_argument("laplace_derivatives: order must be >= 0");
  InterferencePgfl lt(p, in_cluster_intensity, p.h_ue);
  LaplaceEval ev;
  ev.varpi = varpi;
  ev.exponent_derivs = lt.exponent_derivs_true(varpi, order);
  // exponential-composite recursion L^(n+1) = sum_i C(n,i) S^(i+1) L^(n-i);
  // every term of a given order shares one sign, so no cancellation occurs
  ev.values.assign(static_cast<std::size_t>(order) + 1, 0.0);
  ev.values[0] = std::exp(ev.exponent_derivs[0]);
  for (int n = 0; n + 1 <= order; ++n) {
    double binom = 1.0;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      acc += binom * ev.exponent_derivs[static_cast<std::size_t>(i) + 1] *
             ev.values[static_cast<std::size_t>(n - i)];
      binom *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    ev.values[static_cast<std::size_t>(n) + 1] = acc;
  }
  return ev;
}

double gamma_laplace_series(const std::vector<double>& s_scaled, int k) {
  if (k < 1 || static_cast<int>(s_scaled.size()) < k)
    throw std::invalid_argument("gamma_laplace_series: need exponent derivatives up to k-1");
  if (s_scaled[0] < -745.0) return 0.0;  // exp underflow: coverage is numerically zero
  // bhat[j] = Ltilde^(j)(1) / (j! * Ltilde(1)); recursion in factorial-scaled form
  std::vector<double> bhat(static_cast<std::size_t>(k), 0.0);
  std::vector<double> shat(static_cast<std::size_t>(k), 0.0);
  double fact = 1.0;
  for (int j = 1; j < k; ++j) {
    fact *= j;
    shat[static_cast<std::size_t>(j)] = s_scaled[static_cast<std::size_t>(j)] / fact;
  }
  bhat[0] = 1.0;
  for (int n = 0; n + 1 < k; ++n) {
    double acc = 0.0;
    for (int i = 0; i <= n; ++i)
      acc += (static_cast<double>(i + 1) / static_cast<double>(n + 1)) *
             shat[static_cast<std::size_t>(i) + 1] * bhat[static_cast<std::size_t>(n - i)];
    bhat[static_cast<std::size_t>(n) + 1] = acc;
  }
  // compensated sum of (-1)^j bhat[j]; terms are nonnegative in exact
  // arithmetic (complete monotonicity), the guard catches conditioning loss
  double sum = 0.0, comp = 0.0, max_term = 0.0;
  double sgn = 1.0;
  for (int j = 0; j < k; ++j, sgn = -sgn) {
    const double term = sgn * bhat[static_cast<std::size_t>(j)];
    max_term = std::max(max_term, std::fabs(term));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (max_term > 1e6 * std::fabs(sum) && max_term > 1e-280)
    throw accuracy_error("gamma_laplace_series: catastrophic cancellation in the CCDF series");
  const double val = std::exp(s_scaled[0]) * sum;
  return std::clamp(val, 0.0, 1.0);
}

namespace {

double eval_assignment(const std::vector<double>& zl, const std::vector<double>& zn,
                       std::uint64_t mask, const SystemParams& p, double theta_thresh,
                       const LaplaceTransform& lt, std::vector<double>& zetas) {
  const std::size_t kap = zl.size();
  zetas.clear();
  for (std::size_t i = 0; i < kap; ++i)
    zetas.push_back((mask >> i & 1ull) ? zl[i] : zn[i]);
  const GammaApprox ga = moment_match_gamma(zetas, p);
  const double varpi = theta_thresh / (static_cast<double>(kap) * p.p_tx * ga.theta);
  const std::vector<double> s = lt.exponent_derivs_scaled(varpi, ga.k_int - 1);
  return gamma_laplace_series(s, ga.k_int);
}

}  // namespace

double conditional_coverage(const std::vector<double>& r_list, const SystemParams& p,
                            double theta_thresh, const LaplaceTransform& lt,
                            std::uint64_t assign_seed) {
  const std::size_t kap = r_list.size();
  if (kap == 0) throw std::domain_error("conditional_coverage: empty serving set");
  std::vector<double> pls(kap), zl(kap), zn(kap);
  for (std::size_t i = 0; i < kap; ++i) {
    pls[i] = los_probability(r_list[i], p, p.h_ue);
    zl[i] = path_gain(r_list[i], true, p, p.h_ue);
    zn[i] = path_gain(r_list[i], false, p, p.h_ue);
  }
  std::vector<double> zetas;
  zetas.reserve(kap);
  if (kap <= static_cast<std::size_t>(p.numerics.config_enum_cap)) {
    double tot = 0.0;
    const std::uint64_t nmask = 1ull << kap;
    for (std::uint64_t mask = 0; mask < nmask; ++mask) {
      double wgt = 1.0;
      for (std::size_t i = 0; i < kap && wgt > 1e-12; ++i)
        wgt *= (mask >> i & 1ull) ? pls[i] : 1.0 - pls[i];
      if (wgt <= 1e-12) continue;
      tot += wgt * eval_assignment(zl, zn, mask, p, theta_thresh, lt, zetas);
    }
    return std::min(tot, 1.0);
  }
  // beyond the enumeration cap: Monte Carlo over LoS assignments
  constexpr int kAssignDraws = 256;
  Philox rng(p.numerics.rng_seed ^ 0xC3A5C85C97CB3127ull, assign_seed);
  double tot = 0.0;
  for (int d = 0; d < kAssignDraws; ++d) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < kap; ++i)
      if (rng.uniform() < pls[i]) mask |= 1ull << i;
    tot += eval_assignment(zl, zn, mask, p, theta_thresh, lt, zetas);
  }
  return tot / kAssignDraws;
}

double conditional_coverage(const std::vector<double>& r_list, const SystemParams& p,
                            double theta_thresh) {
  InterferencePgfl lt(p, (1.0 - p.c_f) * p.lambda_b, p.h_ue);
  return conditional_coverage(r_list, p, theta_thresh, lt, 0);
}

CoverageResult coverage_probability(const SystemParams& p, double theta_thresh) {
  validate(p);
  if (p.c_f == 0.0) return {0.0, 0.0};
  const InterferencePgfl lt(p, (1.0 - p.c_f) * p.lambda_b, p.h_ue);
  const std::uint64_t seed = p.numerics.rng_seed ^ 0x9E3779B97F4A7C15ull;
  double pk_max = 0.0;
  for (int kap = 1; kap <= p.numerics.kappa_max; ++kap)
    pk_max = std::max(pk_max, caching_count_pmf(kap, p));
  double total = 0.0, var_total = 0.0;
  for (int kap = 1; kap <= p.numerics.kappa_max; ++kap) {
    const double pk = caching_count_pmf(kap, p);
    // skipped terms total well under the 1e-9 truncation budget
    if (pk < 1e-9) continue;
    // draw budget proportional to the Poisson weight: rare large clusters are
    // exponentially expensive (2^kappa assignments) and contribute O(pk)
    const int ng = std::max(24, static_cast<int>(std::ceil(p.numerics.n_geom * pk / pk_max)));
    std::vector<double> vals(static_cast<std::size_t>(ng));
    parallel_for(0, ng, [&](std::int64_t d) {
      const std::uint64_t stream = (static_cast<std::uint64_t>(kap) << 40) |
                                   static_cast<std::uint64_t>(d);
      Philox rng(seed, stream);
      const PointSet rs = sample_bpp_disk(static_cast<std::size_t>(kap), p.r_cluster, rng);
      vals[static_cast<std::size_t>(d)] =
          conditional_coverage(rs.r, p, theta_thresh, lt, stream | (1ull << 63));
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= ng;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= (ng > 1 ? static_cast<double>(ng) * (ng - 1) : 1.0);
    total += pk * mean;
    var_total += pk * pk * var;
  }
  return {total, std::sqrt(var_total)};
}

}  // namespace skycov
