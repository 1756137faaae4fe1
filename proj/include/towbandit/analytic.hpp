#pragma once

#include "towbandit/core.hpp"
#include "towbandit/exact.hpp"

namespace towbandit::analytic {

/// Environment on the p_a + p_b = 1 boundary, parameterized by p = p_a.
class BoundaryEnvironment {
 public:
  explicit BoundaryEnvironment(double p);

  double p() const noexcept { return p_; }
  Environment to_environment() const { return Environment(p_, 1.0 - p_); }

 private:
  double p_;
};

/// Limit of CDR_n on the boundary p_a + p_b = 1. Evaluated through ratio
/// powers (q/p or p/q, whichever is below 1) so large N cannot cancel
/// catastrophically. p = 0.5 returns the analytic limit 0.5.
double cdr_infinity_closed_form(double p, const ThresholdConfig& config);

/// Stationary distribution on the boundary: pi(+-x, i) proportional to
/// (q/p)^i, identical across signal signs. p = 0.5 returns the uniform
/// distribution.
exact::JointDistribution stationary_closed_form(double p,
                                                const ThresholdConfig& config);

/// Large-N approximation 1 - ((1-p)/p)^m / 2 of the boundary limit, with
/// m playing the role of bound - floor_x. Domain (0.5, 1); m is the
/// caller's choice and is not tied to any ThresholdConfig here.
double f_approx(double p, int m);

}  // namespace towbandit::analytic
