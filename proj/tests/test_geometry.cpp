#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skycov/geometry.hpp"

using namespace skycov;

TEST_CASE("bpp disk: kappa = 0 gives an empty set") {
  Philox rng(1, 0);
  CHECK(sample_bpp_disk(0, 200.0, rng).count() == 0);
}

TEST_CASE("bpp disk: mean distance and CDF match 2r/R^2") {
  Philox rng(2, 0);
  const double rc = 200.0;
  PointSet ps = sample_bpp_disk(1000000, rc, rng);
  REQUIRE(ps.count() == 1000000);
  double sum = 0.0;
  std::int64_t below100 = 0;
  for (double r : ps.r) {
    REQUIRE(r >= 0.0);
    REQUIRE(r <= rc);
    sum += r;
    if (r <= 100.0) ++below100;
  }
  CHECK(sum / 1e6 == doctest::Approx(2.0 * rc / 3.0).epsilon(0.5 / 133.33));
  CHECK(static_cast<double>(below100) / 1e6 == doctest::Approx(0.25).epsilon(0.002 / 0.25));
}

TEST_CASE("bpp disk: KS against CDF (r/R)^2 below the 1% critical value") {
  Philox rng(3, 0);
  const double rc = 200.0;
  PointSet ps = sample_bpp_disk(100000, rc, rng);
  const double d =
      oracles::ks_statistic(ps.r, [&](double r) { return (r / rc) * (r / rc); });
  CHECK(d < oracles::ks_critical(100000, 0.01));
}

TEST_CASE("ppp annulus: zero intensity gives an empty set") {
  Philox rng(4, 0);
  CHECK(sample_ppp_annulus(0.0, 0.0, 200.0, rng).count() == 0);
}

TEST_CASE("ppp annulus: mean counts match area times intensity") {
  const double lam = 20e-6;
  Philox rng(5, 0);
  std::int64_t total_disk = 0;
  for (int i = 0; i < 100000; ++i) {
    PointSet ps = sample_ppp_annulus(lam, 0.0, 200.0, rng);
    for (double r : ps.r) REQUIRE(r <= 200.0);
    total_disk += static_cast<std::int64_t>(ps.count());
  }
  // lam * pi * 200^2 = 2.513
  CHECK(static_cast<double>(total_disk) / 1e5 == doctest::Approx(2.513).epsilon(0.02 / 2.513));

  Philox rng2(6, 0);
  std::int64_t total_ann = 0;
  for (int i = 0; i < 100000; ++i) {
    PointSet ps = sample_ppp_annulus(lam, 200.0, 1000.0, rng2);
    for (double r : ps.r) {
      REQUIRE(r >= 200.0);
      REQUIRE(r <= 1000.0);
    }
    total_ann += static_cast<std::int64_t>(ps.count());
  }
  // lam * pi * (1000^2 - 200^2) = 60.32
  CHECK(static_cast<double>(total_ann) / 1e5 == doctest::Approx(60.32).epsilon(0.3 / 60.32));
}

TEST_CASE("ppp annulus: distances follow the 2r/(b^2-a^2) density") {
  Philox rng(7, 0);
  std::vector<double> all;
  while (all.size() < 100000) {
    PointSet ps = sample_ppp_annulus(20e-6, 200.0, 1000.0, rng);
    all.insert(all.end(), ps.r.begin(), ps.r.end());
  }
  const double a2 = 200.0 * 200.0, b2 = 1000.0 * 1000.0;
  const double d = oracles::ks_statistic(
      all, [&](double r) { return (r * r - a2) / (b2 - a2); });
  CHECK(d < oracles::ks_critical(all.size(), 0.01));
}

TEST_CASE("ppp counts over disjoint annuli are uncorrelated") {
  Philox rng(8, 0);
  const int n = 100000;
  std::vector<double> c1(n), c2(n);
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    c1[i] = static_cast<double>(sample_ppp_annulus(20e-6, 0.0, 300.0, rng).count());
    c2[i] = static_cast<double>(sample_ppp_annulus(20e-6, 300.0, 600.0, rng).count());
    m1 += c1[i];
    m2 += c2[i];
  }
  m1 /= n;
  m2 /= n;
  double cov = 0.0, v1 = 0.0, v2 = 0.0;
  for (int i = 0; i < n; ++i) {
    cov += (c1[i] - m1) * (c2[i] - m2);
    v1 += (c1[i] - m1) * (c1[i] - m1);
    v2 += (c2[i] - m2) * (c2[i] - m2);
  }
  CHECK(std::fabs(cov / std::sqrt(v1 * v2)) < 0.01);
}

TEST_CASE("link distance") {
  CHECK(link_distance(0.0, 100.0, 30.0) == doctest::Approx(70.0));
  CHECK(link_distance(240.0, 100.0, 30.0) == doctest::Approx(250.0));
  CHECK(link_distance(0.0, 30.0, 30.0) == doctest::Approx(0.0));
}

TEST_CASE("sampling is deterministic under a fixed stream") {
  Philox a(11, 5), b(11, 5);
  PointSet x = sample_ppp_annulus(20e-6, 0.0, 2000.0, a);
  PointSet y = sample_ppp_annulus(20e-6, 0.0, 2000.0, b);
  CHECK(x.r == y.r);
  PointSet u = sample_bpp_disk(100, 200.0, a);
  PointSet v = sample_bpp_disk(100, 200.0, b);
  CHECK(u.r == v.r);
}
