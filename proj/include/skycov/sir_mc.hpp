#pragma once
#include <cstdint>
#include <vector>

#include "skycov/caching.hpp"
#include "skycov/channel.hpp"
#include "skycov/params.hpp"
#include "skycov/rng.hpp"

namespace skycov {

enum class Scheme { CompExact, CompCauchy, NearestSbs, GroundUser };

const char* scheme_name(Scheme s);

struct SirSample {
  Scheme scheme;
  double sir;                  // 0 when kappa == 0
  std::size_t kappa;           // caching SBS count in the cluster
  double desired_power;
  double interference_power;
};

struct CoverageEstimate {
  double p_hat;
  std::int64_t n_trials;
  double ci_low, ci_high;  // 95% Wilson
  double threshold;        // linear
};

// Holds the per-(params, scheme) precomputation (LoS table) so that a trial
// costs only the sampling work.
class SirSimulator {
 public:
  SirSimulator(const SystemParams& p, Scheme scheme);
  SirSample realize(Philox& rng) const;

 private:
  SystemParams p_;
  Scheme scheme_;
  double h_rx_;
  int m_;
  LosTable los_;
};

SirSample simulate_realization(const SystemParams& p, Scheme scheme, Philox& rng);

// Trials are fanned out over threads; trial i draws from Philox(seed, i), so
// the estimate is bit-identical for any worker count.
CoverageEstimate estimate_coverage(const SystemParams& p, Scheme scheme, double theta,
                                   std::int64_t n_trials, std::uint64_t seed);

struct GainPdf {
  std::vector<double> bin_centers;
  std::vector<double> empirical_density;
  std::vector<double> gamma_density;  // moment-matched Gamma overlay
  double ks_distance;
  double k_eq, theta_scale;
  std::size_t kappa;
  std::vector<double> zetas;  // the fixed geometry's composite gains
};

// One arbitrary network realization is frozen (distances + LoS states), then
// the equivalent channel gain sum_i zeta_i * omega_i^2 is histogrammed over
// fading draws and compared against its moment-matched Gamma law.
GainPdf empirical_gain_pdf(const SystemParams& p, std::int64_t n_realizations, int bins,
                           std::uint64_t seed);

}  // namespace skycov
