#pragma once
#include <stdexcept>
#include <string>

namespace skycov {

// Raised when a numerical guarantee (quadrature tail, series conditioning)
// cannot be met with the current numerics settings.
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

struct Interval {
  double low;
  double high;
};

// 95% Wilson score interval for a binomial proportion
Interval wilson_interval(std::int64_t successes, std::int64_t n);

// Regularized lower incomplete gamma P(a,x); Q(a,x) = 1 - P(a,x)
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double poisson_pmf(std::int64_t k, double mean);

}  // namespace skycov
