#pragma once
#include <vector>

#include "skycov/params.hpp"
#include "skycov/rng.hpp"

namespace skycov {

// mainlobe iff h_sbs - r*tan(tilt + beam/2) < h_rx < h_sbs - r*tan(tilt - beam/2)
double antenna_gain(double r, const SystemParams& p, double h_rx);

// number of buildings crossed: floor(r * sqrt(a*e)), e per m^2
int blockage_count(double r, const SystemParams& p);

// LoS probability of a link at horizontal distance r to a receiver at h_rx.
// Product of per-building clearance factors; equals 1 when no building is
// crossed. See README for the height/denominator variants.
double los_probability(double r, const SystemParams& p, double h_rx);

// composite gain zeta_v(r) = A_v * G(r) * (r^2 + (h_rx - h_sbs)^2)^(-alpha_v/2);
// throws std::domain_error when the 3D link distance is under 1 m
double path_gain(double r, bool is_los, const SystemParams& p, double h_rx);

// omega with omega^2 ~ Gamma(m, eta/m)
double sample_nakagami_amplitude(int m, double eta, Philox& rng);

// P_l by building count, precomputed once per (params, h_rx); the formula is
// piecewise constant in r so the table is exact, not an interpolation
class LosTable {
 public:
  LosTable(const SystemParams& p, double h_rx, double r_max);
  double operator()(double r) const {
    int idx = static_cast<int>(r * sqrt_ae_);
    if (idx >= static_cast<int>(tab_.size())) idx = static_cast<int>(tab_.size()) - 1;
    return tab_[static_cast<std::size_t>(idx)];
  }
  double at_count(int p) const { return tab_[static_cast<std::size_t>(p)]; }
  int max_count() const { return static_cast<int>(tab_.size()) - 1; }

 private:
  std::vector<double> tab_;
  double sqrt_ae_;
};

}  // namespace skycov
