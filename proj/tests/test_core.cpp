#include <doctest.h>

#include <cmath>
#include <random>

#include "towbandit/core.hpp"

using namespace towbandit;

TEST_CASE("select_arm follows the >= rule") {
  CHECK(select_arm(3.5, 0.0) == Arm::A);
  CHECK(select_arm(-3.5, 0.0) == Arm::B);
  CHECK(select_arm(2.0, 2.0) == Arm::A);  // equality selects A
}

TEST_CASE("update_threshold moves one step and clamps") {
  const ThresholdConfig config(4, 3.5);
  CHECK(update_threshold(0, Arm::A, true, config) == -1);
  CHECK(update_threshold(-4, Arm::A, true, config) == -4);
  CHECK(update_threshold(3, Arm::B, true, config) == 4);

  SUBCASE("exhaustive: never leaves [-N, N], never jumps") {
    for (int theta = -4; theta <= 4; ++theta) {
      for (Arm arm : {Arm::A, Arm::B}) {
        for (bool won : {false, true}) {
          const int next = update_threshold(theta, arm, won, config);
          CHECK(std::abs(next) <= 4);
          CHECK(std::abs(next - theta) <= 1);
        }
      }
    }
  }
}

TEST_CASE("upward_probability matches the selection rule") {
  const Environment env(0.7, 0.3);
  const SignalModel model(3.5, 0.0);
  CHECK(upward_probability(+1, 0, env, model) == doctest::Approx(0.3));
  CHECK(upward_probability(-1, 0, env, model) == doctest::Approx(0.3));

  const Environment env2(0.7, 0.1);
  CHECK(upward_probability(+1, 4, env2, model) == doctest::Approx(0.1));

  SUBCASE("consistency with select_arm over all states") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const Environment e(prob(gen), prob(gen));
      const double x = 0.5 + std::floor(prob(gen) * 4.0);  // 0.5 .. 3.5
      const SignalModel sm(x, 0.0);
      for (int sign : {+1, -1}) {
        for (int theta = -4; theta <= 4; ++theta) {
          const double q = upward_probability(sign, theta, e, sm);
          const Arm arm = select_arm(sign * x, theta);
          CHECK(q == (arm == Arm::A ? 1.0 - e.p_a() : e.p_b()));
        }
      }
    }
  }
}

TEST_CASE("gamma and lambda are complements across the grid") {
  for (int k = -100; k < 100; ++k) {
    const double lambda = k / 100.0;
    const SignalModel model(3.5, lambda);
    CHECK(model.gamma() == (1.0 - lambda) / 2.0);
    // Round trip through the stored gamma is exact up to one rounding step.
    CHECK(1.0 - 2.0 * model.gamma() ==
          doctest::Approx(lambda).epsilon(1e-15));
  }
}

TEST_CASE("parameter validation throws instead of repairing") {
  CHECK_THROWS_AS(Environment(-0.1, 0.5), InvalidParameter);
  CHECK_THROWS_AS(Environment(0.5, 1.5), InvalidParameter);
  CHECK_NOTHROW(Environment(0.3, 0.7));  // flagged, not rejected
  CHECK_FALSE(Environment(0.3, 0.7).arm_a_optimal());
  CHECK(Environment(0.7, 0.3).arm_a_optimal());

  CHECK_THROWS_AS(SignalModel(3.0, 0.0), InvalidParameter);   // integer x
  CHECK_THROWS_AS(SignalModel(-3.5, 0.0), InvalidParameter);  // negative x
  CHECK_THROWS_AS(SignalModel(3.5, 1.0), InvalidParameter);   // never switches
  CHECK_THROWS_AS(SignalModel(3.5, -1.5), InvalidParameter);
  CHECK_NOTHROW(SignalModel(3.5, -1.0));

  CHECK_THROWS_AS(ThresholdConfig(0, 0.5), InvalidParameter);
  CHECK_THROWS_AS(ThresholdConfig(4, 4.5), InvalidParameter);  // x >= N
  CHECK_THROWS_AS(ThresholdConfig(4, 2.0), InvalidParameter);  // integer x
  CHECK(ThresholdConfig(4, 3.5).floor_x() == 3);
  CHECK(ThresholdConfig(4, 0.25).floor_x() == 0);

  CHECK_THROWS_AS(
      validate_model_pair(SignalModel(4.5, 0.0), ThresholdConfig(4, 3.5)),
      InvalidParameter);
  CHECK_THROWS_AS(
      validate_model_pair(SignalModel(2.5, 0.0), ThresholdConfig(4, 3.5)),
      InvalidParameter);
  CHECK_NOTHROW(
      validate_model_pair(SignalModel(3.5, 0.0), ThresholdConfig(4, 3.5)));
}
