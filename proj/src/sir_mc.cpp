#include "skycov/sir_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "skycov/analytic.hpp"
#include "skycov/maths.hpp"
#include "skycov/parallel.hpp"

namespace skycov {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::CompExact: return "comp-exact";
    case Scheme::CompCauchy: return "comp-cauchy";
    case Scheme::NearestSbs: return "nearest-sbs";
    default: return "ground-user";
  }
}

SirSimulator::SirSimulator(const SystemParams& p, Scheme scheme)
    : p_(p),
      scheme_(scheme),
      h_rx_(scheme == Scheme::GroundUser ? p.h_ground : p.h_ue),
      m_(scheme == Scheme::GroundUser ? p.m_ground : p.m_nakagami),
      los_(p, h_rx_, p.numerics.r_sim_window) {
  validate(p);
}

SirSample SirSimulator::realize(Philox& rng) const {
  PointSet in = sample_ppp_annulus(p_.lambda_b, 0.0, p_.r_cluster, rng);
  CachePartition part = thin_in_cluster(in, p_.c_f, rng);
  PointSet out = sample_ppp_annulus(p_.lambda_b, p_.r_cluster, p_.numerics.r_sim_window, rng);

  const std::size_t kappa = part.caching_in.count();
  SirSample s{scheme_, 0.0, kappa, 0.0, 0.0};

  // fixed draw order: servers, in-cluster interferers, out-of-cluster
  double amp_sum = 0.0, pow_sum = 0.0;
  double best_r = -1.0, best_pow = 0.0;
  for (double r : part.caching_in.r) {
    const bool los = rng.uniform() < los_(r);
    const double zeta = path_gain(r, los, p_, h_rx_);
    const double omega = sample_nakagami_amplitude(m_, p_.eta_spread, rng);
    amp_sum += std::sqrt(zeta) * omega;
    pow_sum += zeta * omega * omega;
    if (best_r < 0.0 || r < best_r) {
      best_r = r;
      best_pow = zeta * omega * omega;
    }
  }
  double interference = 0.0;
  for (const PointSet* ps : {&part.noncaching_in, &out}) {
    for (double r : ps->r) {
      const bool los = rng.uniform() < los_(r);
      const double zeta = path_gain(r, los, p_, h_rx_);
      const double omega = sample_nakagami_amplitude(m_, p_.eta_spread, rng);
      interference += zeta * omega * omega;
    }
  }

  if (kappa == 0) {
    s.interference_power = p_.p_tx * interference;
    return s;
  }
  switch (scheme_) {
    case Scheme::CompCauchy:
      s.desired_power = p_.p_tx * static_cast<double>(kappa) * pow_sum;
      break;
    case Scheme::NearestSbs:
      s.desired_power = p_.p_tx * best_pow;
      interference += pow_sum - best_pow;  // the other caching SBSs interfere
      break;
    default:  // CompExact and GroundUser share the coherent composition
      s.desired_power = p_.p_tx * amp_sum * amp_sum;
      break;
  }
  s.interference_power = p_.p_tx * interference;
  s.sir = s.interference_power > 0.0 ? s.desired_power / s.interference_power
                                     : std::numeric_limits<double>::infinity();
  return s;
}

SirSample simulate_realization(const SystemParams& p, Scheme scheme, Philox& rng) {
  return SirSimulator(p, scheme).realize(rng);
}

CoverageEstimate estimate_coverage(const SystemParams& p, Scheme scheme, double theta,
                                   std::int64_t n_trials, std::uint64_t seed) {
  if (n_trials < 100) throw std::invalid_argument("estimate_coverage: n_trials must be >= 100");
  SirSimulator sim(p, scheme);
  std::atomic<std::int64_t> hits{0};
  parallel_for(0, n_trials, [&](std::int64_t trial) {
    Philox rng(seed, static_cast<std::uint64_t>(trial));
    if (sim.realize(rng).sir > theta) hits.fetch_add(1, std::memory_order_relaxed);
  });
  const std::int64_t h = hits.load();
  const Interval ci = wilson_interval(h, n_trials);
  return {static_cast<double>(h) / static_cast<double>(n_trials), n_trials, ci.low, ci.high,
          theta};
}

GainPdf empirical_gain_pdf(const SystemParams& p, std::int64_t n_realizations, int bins,
                           std::uint64_t seed) {
  validate(p);
  if (n_realizations < 10000)
    throw std::invalid_argument("empirical_gain_pdf: need at least 10^4 realizations");
  if (bins < 2) throw std::invalid_argument("empirical_gain_pdf: need at least 2 bins");

  // freeze one arbitrary geometry with at least one server
  LosTable los(p, p.h_ue, p.r_cluster);
  std::vector<double> zetas;
  for (std::uint64_t attempt = 0; zetas.empty(); ++attempt) {
    Philox rng(seed, (1ull << 62) | attempt);
    PointSet in = sample_ppp_annulus(p.lambda_b, 0.0, p.r_cluster, rng);
    CachePartition part = thin_in_cluster(in, p.c_f, rng);
    for (double r : part.caching_in.r) {
      const bool is_los = rng.uniform() < los(r);
      zetas.push_back(path_gain(r, is_los, p, p.h_ue));
    }
  }
  const GammaApprox ga = moment_match_gamma(zetas, p);

  std::vector<double> samples(static_cast<std::size_t>(n_realizations));
  parallel_for(0, n_realizations, [&](std::int64_t i) {
    Philox rng(seed, static_cast<std::uint64_t>(i));
    double j = 0.0;
    for (double z : zetas) {
      const double w = sample_nakagami_amplitude(p.m_nakagami, p.eta_spread, rng);
      j += z * w * w;
    }
    samples[static_cast<std::size_t>(i)] = j;
  });
  std::sort(samples.begin(), samples.end());

  GainPdf out;
  out.kappa = zetas.size();
  out.zetas = zetas;
  out.k_eq = ga.k_eq;
  out.theta_scale = ga.theta;

  // KS distance against the matched Gamma CDF
  double ks = 0.0;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = gamma_p(ga.k_eq, samples[i] / ga.theta);
    ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - f));
    ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
  }
  out.ks_distance = ks;

  const double hi = samples.back() * (1.0 + 1e-12);
  const double width = hi / bins;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
  for (double s : samples) {
    auto b = static_cast<std::size_t>(s / width);
    if (b >= counts.size()) b = counts.size() - 1;
    ++counts[b];
  }
  for (int b = 0; b < bins; ++b) {
    const double center = (b + 0.5) * width;
    out.bin_centers.push_back(center);
    out.empirical_density.push_back(static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                                    (n * width));
    const double u = center / ga.theta;
    out.gamma_density.push_back(
        std::exp((ga.k_eq - 1.0) * std::log(u) - u - std::lgamma(ga.k_eq)) / ga.theta);
  }
  return out;
}

}  // namespace skycov
