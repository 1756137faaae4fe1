#pragma once

#include <cstddef>
#include <vector>

#include "towbandit/core.hpp"

namespace towbandit::exact {

/// Probability vector over joint states (signal sign, threshold).
///
/// Entries are stacked threshold-major from -N to N, each threshold
/// holding the pair (s = +x, s = -x):
///
///   [mu(+x,-N), mu(-x,-N), mu(+x,-N+1), ..., mu(+x,N), mu(-x,N)]
///
/// Length is 4N+2. Entries are nonnegative and sum to 1 within 1e-12.
class JointDistribution {
 public:
  JointDistribution(int bound, std::vector<double> entries);

  static JointDistribution point_mass(const ThresholdConfig& config,
                                      int signal_sign, int threshold);

  static std::size_t index(int bound, int signal_sign, int threshold) noexcept {
    return 2 * static_cast<std::size_t>(threshold + bound) +
           (signal_sign > 0 ? 0 : 1);
  }

  int bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<double>& entries() const noexcept { return entries_; }

  double at(int signal_sign, int threshold) const {
    return entries_[index(bound_, signal_sign, threshold)];
  }

  double sum() const noexcept;

 private:
  int bound_;
  std::vector<double> entries_;
};

/// Column-stochastic one-step operator M of the joint chain,
/// mu_{n+1} = M mu_n. Columns are source states, rows are targets.
/// Stored dense column-major; the matrix is block-tridiagonal in the
/// threshold index with diagonal blocks only at the clamped rows +-N.
class TransitionMatrix {
 public:
  TransitionMatrix(const Environment& env, const SignalModel& model,
                   const ThresholdConfig& config);

  std::size_t dim() const noexcept { return dim_; }
  double at(std::size_t row, std::size_t col) const {
    return storage_[col * dim_ + row];
  }

  /// out = M * in. Buffers must have length dim() and be distinct.
  void apply(const std::vector<double>& in, std::vector<double>& out) const;

  const Environment& env() const noexcept { return env_; }
  const SignalModel& model() const noexcept { return model_; }
  const ThresholdConfig& config() const noexcept { return config_; }

 private:
  std::size_t dim_;
  std::vector<double> storage_;  // column-major
  Environment env_;
  SignalModel model_;
  ThresholdConfig config_;
};

TransitionMatrix build_transition_matrix(const Environment& env,
                                         const SignalModel& model,
                                         const ThresholdConfig& config);

/// mu_1: threshold at the origin, signal sign uniform, so 1/2 on each of
/// (+x, 0) and (-x, 0).
JointDistribution initial_distribution(const ThresholdConfig& config);

/// M^steps * mu. Does not renormalize; propagation preserves the entry sum
/// to machine precision because M is column-stochastic.
JointDistribution propagate(const JointDistribution& mu,
                            const TransitionMatrix& m, long steps);

/// Probability of selecting arm A under mu:
/// sum_{i<=floor_x} mu(+x,i) + sum_{i<=-floor_x-1} mu(-x,i).
double cdr(const JointDistribution& mu, const ThresholdConfig& config);

struct CdrPoint {
  int n;
  double cdr;
};

/// CDR_n for n = 1..max_steps from the standard initial distribution.
std::vector<CdrPoint> cdr_curve(const Environment& env,
                                const SignalModel& model,
                                const ThresholdConfig& config, int max_steps);

/// Fixed point pi = M pi by power iteration on the damped operator
/// (M + I)/2, which shares its fixed points with M and suppresses the
/// period-2 oscillation that appears at lambda = -1. Returns pi with
/// ||M pi - pi||_1 <= tol or throws ConvergenceError.
JointDistribution stationary_distribution(const TransitionMatrix& m,
                                          double tol = 1e-12,
                                          long max_iter = 1000000);

}  // namespace towbandit::exact
