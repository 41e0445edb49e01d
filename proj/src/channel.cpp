#include "skycov/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "skycov/geometry.hpp"

namespace skycov {

namespace {
constexpr double kDeg = M_PI / 180.0;

double los_from_count(int p, const SystemParams& sp, double h_rx) {
  if (p <= 0) return 1.0;  // no building crossed
  const double h = h_rx - sp.h_sbs;
  const double two_c2 = 2.0 * sp.bldg_height_scale * sp.bldg_height_scale;
  double den;
  switch (sp.blockage_denominator) {
    case BlockageDenominator::P: den = static_cast<double>(p); break;
    case BlockageDenominator::PPlus1: den = static_cast<double>(p) + 1.0; break;
    default: den = static_cast<double>(sp.m_nakagami) + 1.0; break;
  }
  double prod = 1.0;
  if (sp.blockage_height_base == BlockageHeightBase::Relative) {
    // ray height above the SBS mounting level; a receiver at or below the
    // SBS height is blocked by any crossed building
    if (h <= 0.0) return 0.0;
    for (int n = 0; n < p; ++n) {
      const double ht = h * (static_cast<double>(n) + 0.5) / den;
      prod *= 1.0 - std::exp(-ht * ht / two_c2);
    }
  } else {
    for (int n = 0; n < p; ++n) {
      const double ht = sp.h_sbs + h * (static_cast<double>(n) + 0.5) / den;
      prod *= 1.0 - std::exp(-ht * ht / two_c2);
    }
  }
  return prod;
}
}  // namespace

double antenna_gain(double r, const SystemParams& p, double h_rx) {
  const double lo = p.h_sbs - r * std::tan((p.theta_tilt + p.theta_beam / 2.0) * kDeg);
  const double hi = p.h_sbs - r * std::tan((p.theta_tilt - p.theta_beam / 2.0) * kDeg);
  return (lo < h_rx && h_rx < hi) ? p.g_main : p.g_side;
}

int blockage_count(double r, const SystemParams& p) {
  return static_cast<int>(std::floor(r * std::sqrt(p.bldg_area_fraction * p.bldg_density)));
}

double los_probability(double r, const SystemParams& p, double h_rx) {
  if (r < 0.0) throw std::invalid_argument("los_probability: r < 0");
  return los_from_count(blockage_count(r, p), p, h_rx);
}

double path_gain(double r, bool is_los, const SystemParams& p, double h_rx) {
  const double d = link_distance(r, h_rx, p.h_sbs);
  if (d < 1.0) throw std::domain_error("path_gain: link distance under 1 m");
  const double alpha = is_los ? p.alpha_los : p.alpha_nlos;
  const double a = is_los ? p.a_los : p.a_nlos;
  return a * antenna_gain(r, p, h_rx) * std::pow(d, -alpha);
}

double sample_nakagami_amplitude(int m, double eta, Philox& rng) {
  return std::sqrt(rng.gamma_int(m, eta / static_cast<double>(m)));
}

LosTable::LosTable(const SystemParams& p, double h_rx, double r_max) {
  sqrt_ae_ = std::sqrt(p.bldg_area_fraction * p.bldg_density);
  const int pmax = static_cast<int>(std::floor(r_max * sqrt_ae_)) + 1;
  tab_.resize(static_cast<std::size_t>(pmax) + 1);
  for (int k = 0; k <= pmax; ++k) tab_[static_cast<std::size_t>(k)] = los_from_count(k, p, h_rx);
}

}  // namespace skycov
