#pragma once
#include <cstdint>
#include <vector>

#include "skycov/params.hpp"
#include "skycov/rng.hpp"

namespace skycov {

struct GammaApprox {
  double k_eq;   // m * (sum zeta)^2 / sum zeta^2
  int k_int;     // integer shape bound m * kappa
  double theta;  // (eta/m) * sum zeta^2 / sum zeta
};

// throws std::domain_error on an empty gain list
GammaApprox moment_match_gamma(const std::vector<double>& zetas, const SystemParams& p);

// P(J > x) for J ~ Gamma(integer k, theta): e^(-u) * sum_{j<k} u^j / j!
double gamma_ccdf_series(double x, int k_int, double theta);

struct LaplaceEval {
  double varpi;
  std::vector<double> values;           // [L, L', ..., L^(n)] at varpi
  std::vector<double> exponent_derivs;  // [S, S', ..., S^(n)], L = exp(S)
};

// Laplace transform of an interference distribution, exposed through the
// scaled exponent derivatives d^j/dx^j S(varpi*x) at x = 1. Working at x = 1
// keeps every magnitude O(1)..O(j!) instead of O(varpi^±j).
class LaplaceTransform {
 public:
  virtual ~LaplaceTransform() = default;
  virtual std::vector<double> exponent_derivs_scaled(double varpi, int order) const = 0;
};

// PGFL form: two exponential factors, in-cluster thinned PPP over [0, R_c]
// and the full PPP over [R_c, inf), each integral on a fixed panel grid with
// breakpoints at every blockage step and antenna-pattern edge. The [v_max,
// inf) remainder enters as a closed-form first-order NLoS term; the residual
// is checked against quad_tolerance.
class InterferencePgfl : public LaplaceTransform {
 public:
  InterferencePgfl(const SystemParams& p, double in_cluster_intensity, double h_rx);
  std::vector<double> exponent_derivs_scaled(double varpi, int order) const override;
  // true-scale derivatives (d/d varpi), usable at varpi = 0
  std::vector<double> exponent_derivs_true(double varpi, int order) const;

 private:
  struct Node {
    double v, w, zeta_l, zeta_n, p_los;
  };
  void accumulate(const std::vector<Node>& nodes, double lam, double varpi, double x_scale,
                  int order, std::vector<double>& out) const;
  std::vector<Node> out_nodes_, in_nodes_;
  double lam_out_, lam_in_;
  double p_tx_;
  double pe_;  // p_tx * eta: per-interferer kernel is (1 + varpi*pe*zeta/m)^(-m)
  int m_;
  double tol_;
  // first-order NLoS tail beyond v_max: S_tail ~= -tail_coef_ * varpi
  double tail_coef_ = 0.0;
  double tail_zeta_n_ = 0.0;  // zeta_n(v_max), drives the residual estimate
  double tail_los_coef_ = 0.0;  // worst-case LoS mass beyond v_max
};

// L(varpi) = exp(-varpi * i0): degenerate world used by tests
class PointMassInterference : public LaplaceTransform {
 public:
  explicit PointMassInterference(double i0) : i0_(i0) {}
  std::vector<double> exponent_derivs_scaled(double varpi, int order) const override;

 private:
  double i0_;
};

double laplace_interference(double varpi, const SystemParams& p, double in_cluster_intensity);
LaplaceEval laplace_derivatives(double varpi, int order, const SystemParams& p,
                                double in_cluster_intensity);

// sum_{j=0}^{k-1} (-1)^j / j! * d^j/dx^j exp(S(varpi x))|_{x=1} via the
// scaled Bell recursion; compensated summation with a conditioning guard
double gamma_laplace_series(const std::vector<double>& s_scaled, int k);

// Conditional coverage for fixed serving distances: averages the
// Gamma-CCDF/Laplace series over the 2^kappa LoS assignments
double conditional_coverage(const std::vector<double>& r_list, const SystemParams& p,
                            double theta_thresh);
double conditional_coverage(const std::vector<double>& r_list, const SystemParams& p,
                            double theta_thresh, const LaplaceTransform& lt,
                            std::uint64_t assign_seed);

struct CoverageResult {
  double value;
  double std_error;  // Monte Carlo error of the outer geometry expectation
};

// Analytic upper bound: Poisson mixture over kappa with a Monte Carlo outer
// expectation over serving distances (n_geom draws per kappa)
CoverageResult coverage_probability(const SystemParams& p, double theta_thresh);

}  // namespace skycov
