#include "towbandit/core.hpp"

#include <cmath>
#include <sstream>

namespace towbandit {

namespace {

std::string describe(const char* name, double value) {
  std::ostringstream os;
  os << name << " = " << value;
  return os.str();
}

void require_probability(const char* name, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidParameter(describe(name, value) + " is not in [0, 1]");
  }
}

}  // namespace

Environment::Environment(double p_a, double p_b) : p_a_(p_a), p_b_(p_b) {
  require_probability("p_a", p_a);
  require_probability("p_b", p_b);
}

SignalModel::SignalModel(double x, double lambda)
    : x_(x), lambda_(lambda), gamma_((1.0 - lambda) / 2.0) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw InvalidParameter(describe("x", x) + " must be positive");
  }
  if (std::floor(x) == x) {
    throw InvalidParameter(describe("x", x) + " must be non-integer");
  }
  if (!(lambda >= -1.0 && lambda < 1.0)) {
    throw InvalidParameter(describe("lambda", lambda) +
                           " is not in [-1, 1); lambda = 1 would never switch");
  }
}

ThresholdConfig::ThresholdConfig(int bound, double x) : bound_(bound) {
  if (bound < 1) {
    throw InvalidParameter("threshold bound must be >= 1, got " +
                           std::to_string(bound));
  }
  if (!std::isfinite(x) || x <= 0.0 || x >= static_cast<double>(bound)) {
    throw InvalidParameter(describe("x", x) + " is not in (0, " +
                           std::to_string(bound) + ")");
  }
  if (std::floor(x) == x) {
    throw InvalidParameter(describe("x", x) + " must be non-integer");
  }
  floor_x_ = static_cast<int>(std::floor(x));
}

Arm select_arm(double signal_value, double threshold_value) noexcept {
  return signal_value >= threshold_value ? Arm::A : Arm::B;
}

int update_threshold(int current, Arm selected, bool won,
                     const ThresholdConfig& config) noexcept {
  const bool down = (selected == Arm::A) == won;  // A-win or B-loss
  if (down) {
    return current - 1 < -config.bound() ? -config.bound() : current - 1;
  }
  return current + 1 > config.bound() ? config.bound() : current + 1;
}

double upward_probability(int signal_sign, int threshold,
                          const Environment& env, const SignalModel& model) {
  const double signal_value = signal_sign > 0 ? model.x() : -model.x();
  // x is non-integer, so the comparison is never a tie.
  if (select_arm(signal_value, static_cast<double>(threshold)) == Arm::A) {
    return 1.0 - env.p_a();
  }
  return env.p_b();
}

void validate_model_pair(const SignalModel& model,
                         const ThresholdConfig& config) {
  if (model.x() >= static_cast<double>(config.bound())) {
    throw InvalidParameter("x = " + std::to_string(model.x()) +
                           " must be below the threshold bound " +
                           std::to_string(config.bound()));
  }
  if (static_cast<int>(std::floor(model.x())) != config.floor_x()) {
    throw InvalidParameter("SignalModel.x disagrees with ThresholdConfig.floor_x");
  }
}

}  // namespace towbandit
