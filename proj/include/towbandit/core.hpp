#pragma once

#include <string>

#include "towbandit/errors.hpp"

namespace towbandit {

/// The two slot machines of the bandit.
enum class Arm : char { A = 'A', B = 'B' };

inline char to_char(Arm arm) noexcept { return static_cast<char>(arm); }

/// Winning probabilities (p_a, p_b) of arms A and B.
///
/// Both must lie in [0,1]. The analysis convention is p_a > p_b (arm A
/// optimal); environments violating it are constructible but
/// arm_a_optimal() lets callers warn about them.
class Environment {
 public:
  Environment(double p_a, double p_b);

  double p_a() const noexcept { return p_a_; }
  double p_b() const noexcept { return p_b_; }
  bool arm_a_optimal() const noexcept { return p_a_ > p_b_; }

 private:
  double p_a_;
  double p_b_;
};

/// Two-valued Markov signal s_n in {+x, -x}.
///
/// The sign flips each step with probability gamma = (1 - lambda) / 2,
/// where lambda in [-1, 1) is the lag-one autocorrelation. lambda = 1 is
/// rejected: the signal would never switch. x must be a positive
/// non-integer; its upper bound is checked against the paired
/// ThresholdConfig by validate_model_pair().
class SignalModel {
 public:
  SignalModel(double x, double lambda);

  double x() const noexcept { return x_; }
  double lambda() const noexcept { return lambda_; }
  double gamma() const noexcept { return gamma_; }

 private:
  double x_;
  double lambda_;
  double gamma_;
};

/// Integer threshold bounds: theta_n is confined to [-bound, bound].
///
/// floor_x is the largest integer below the signal amplitude x; it is the
/// only trace of x the exact engine needs, so it is computed once here.
class ThresholdConfig {
 public:
  ThresholdConfig(int bound, double x);

  int bound() const noexcept { return bound_; }
  int floor_x() const noexcept { return floor_x_; }
  /// Number of joint (signal sign, threshold) states: 2 * (2 * bound + 1).
  int state_count() const noexcept { return 2 * (2 * bound_ + 1); }

 private:
  int bound_;
  int floor_x_;
};

/// One joint state of the chain: signal sign in {+1, -1}, |threshold| <= bound.
struct JointState {
  int signal_sign;
  int threshold;
};

/// STEP 1: arm A iff the signal is at or above the threshold.
Arm select_arm(double signal_value, double threshold_value) noexcept;

/// STEP 3: move the threshold by one, clamped to [-bound, bound].
/// An A-win or B-loss decrements; an A-loss or B-win increments.
int update_threshold(int current, Arm selected, bool won,
                     const ThresholdConfig& config) noexcept;

/// Probability that the threshold moves up from `threshold` under signal
/// sign*x: 1 - p_a when arm A is selected, p_b when arm B is selected.
double upward_probability(int signal_sign, int threshold,
                          const Environment& env, const SignalModel& model);

/// Cross-checks a SignalModel against a ThresholdConfig: x must lie in
/// (0, bound) and agree with the stored floor_x.
void validate_model_pair(const SignalModel& model,
                         const ThresholdConfig& config);

}  // namespace towbandit
