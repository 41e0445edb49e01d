#pragma once
#include "skycov/geometry.hpp"
#include "skycov/params.hpp"
#include "skycov/rng.hpp"

namespace skycov {

struct CachePartition {
  PointSet caching_in;     // servers inside R_c
  PointSet noncaching_in;  // in-cluster interferers (empty when c_f = 1)
  PointSet all_out;        // everything outside R_c interferes
};

// Poisson PMF of the in-cluster caching count, mean c_f * lambda_b * pi * R_c^2
double caching_count_pmf(std::int64_t kappa, const SystemParams& p);

// independent thinning: each in-cluster point caches with probability c_f
CachePartition thin_in_cluster(const PointSet& points, double c_f, Philox& rng);

}  // namespace skycov
