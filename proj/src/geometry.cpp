#include "skycov/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace skycov {

PointSet sample_bpp_disk(std::size_t kappa, double r_c, Philox& rng) {
  if (!(r_c > 0.0)) throw std::invalid_argument("sample_bpp_disk: r_c must be > 0");
  PointSet ps;
  ps.r.reserve(kappa);
  for (std::size_t i = 0; i < kappa; ++i) ps.r.push_back(r_c * std::sqrt(rng.uniform()));
  return ps;
}

PointSet sample_ppp_annulus(double intensity, double r_in, double r_out, Philox& rng) {
  if (!(r_in >= 0.0 && r_out > r_in))
    throw std::invalid_argument("sample_ppp_annulus: need 0 <= r_in < r_out");
  if (intensity < 0.0) throw std::invalid_argument("sample_ppp_annulus: intensity < 0");
  const double area = M_PI * (r_out * r_out - r_in * r_in);
  const std::int64_t n = rng.poisson(intensity * area);
  PointSet ps;
  ps.r.reserve(static_cast<std::size_t>(n));
  const double a2 = r_in * r_in, b2 = r_out * r_out;
  for (std::int64_t i = 0; i < n; ++i)
    ps.r.push_back(std::sqrt(a2 + rng.uniform() * (b2 - a2)));
  return ps;
}

double link_distance(double r, double h_ue, double h_sbs) {
  const double dh = h_ue - h_sbs;
  return std::sqrt(r * r + dh * dh);
}

}  // namespace skycov
