#pragma once
#include <vector>

#include "skycov/rng.hpp"

namespace skycov {

// Horizontal distances from the user's ground projection. Angles never enter
// the model (channel, gain and blockage are all isotropic), so they are not kept.
struct PointSet {
  std::vector<double> r;
  std::size_t count() const { return r.size(); }
};

// kappa i.i.d. distances with density 2r/r_c^2 on [0, r_c]
PointSet sample_bpp_disk(std::size_t kappa, double r_c, Philox& rng);

// homogeneous PPP restricted to the annulus [r_in, r_out]; intensity per m^2
PointSet sample_ppp_annulus(double intensity, double r_in, double r_out, Philox& rng);

double link_distance(double r, double h_ue, double h_sbs);

}  // namespace skycov
