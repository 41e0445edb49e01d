#include "skycov/caching.hpp"

#include <cmath>

#include "skycov/maths.hpp"

namespace skycov {

double caching_count_pmf(std::int64_t kappa, const SystemParams& p) {
  const double mean = p.c_f * p.lambda_b * M_PI * p.r_cluster * p.r_cluster;
  return poisson_pmf(kappa, mean);
}

CachePartition thin_in_cluster(const PointSet& points, double c_f, Philox& rng) {
  CachePartition part;
  part.caching_in.r.reserve(points.r.size());
  for (double r : points.r) {
    if (rng.uniform() < c_f)
      part.caching_in.r.push_back(r);
    else
      part.noncaching_in.r.push_back(r);
  }
  return part;
}

}  // namespace skycov
