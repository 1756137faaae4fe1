#pragma once

#include <utility>
#include <vector>

#include "towbandit/core.hpp"

namespace towbandit::sweep {

/// Ordered grid of autocorrelation coefficients, strictly increasing and
/// confined to [-1, 1). The standard grid is -1.00, -0.99, ..., 0.99.
class LambdaGrid {
 public:
  LambdaGrid(double min, double max, double step);
  explicit LambdaGrid(std::vector<double> values);

  static LambdaGrid standard() { return LambdaGrid(-1.0, 0.99, 0.01); }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// (p_a, p_b) pairs on {step, 2*step, ...} up to 0.99, restricted to
/// p_a > p_b, sorted by (p_a, p_b).
class EnvGrid {
 public:
  explicit EnvGrid(double step);

  const std::vector<std::pair<double, double>>& values() const noexcept {
    return values_;
  }
  double step() const noexcept { return step_; }

 private:
  double step_;
  std::vector<std::pair<double, double>> values_;
};

struct SweepPoint {
  double lambda;
  double cdr;
};

struct ArgmaxResult {
  double lambda_m;    // mean of the argmax set
  double max_cdr;
  int argmax_count;   // size of the argmax set; the full grid means a tie
};

struct SweepRecord {
  double p_a;
  double p_b;
  double max_cdr;
  double lambda_m;
  int argmax_count;
};

/// CDR at the requested step for every lambda on the grid, computed with
/// the exact engine. The signal amplitude only enters through floor_x, so
/// the sweep reconstructs it as floor_x + 0.5.
std::vector<SweepPoint> lambda_sweep(const Environment& env,
                                     const ThresholdConfig& config,
                                     const LambdaGrid& grid, int at_step);

/// Mean and count of the lambdas whose CDR is within tie_tol of the max.
ArgmaxResult argmax_lambda(const std::vector<SweepPoint>& sweep,
                           double tie_tol = 1e-12);

/// One record per environment cell; cells are independent and the output
/// order follows the grid regardless of jobs.
std::vector<SweepRecord> heatmap(const EnvGrid& env_grid,
                                 const ThresholdConfig& config,
                                 const LambdaGrid& lambda_grid, int at_step,
                                 double tie_tol = 1e-12, int jobs = 1);

}  // namespace towbandit::sweep
