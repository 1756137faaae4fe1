#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "towbandit/exact.hpp"

using namespace towbandit;
using exact::JointDistribution;
using exact::TransitionMatrix;

namespace {

struct RandomParams {
  Environment env;
  SignalModel model;
  ThresholdConfig config;
};

RandomParams draw_params(std::mt19937& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> bound_dist(1, 6);
  const int bound = bound_dist(gen);
  std::uniform_int_distribution<int> whole(0, bound - 1);
  const double x = whole(gen) + 0.05 + 0.9 * unit(gen);  // non-integer in (0,N)
  const double lambda = -1.0 + 1.99 * unit(gen);
  return {Environment(unit(gen), unit(gen)), SignalModel(x, lambda),
          ThresholdConfig(bound, x)};
}

// Exhaustive outcome-path oracle, independent of the matrix machinery:
// branch on (reward, signal flip) at every step and sum path probabilities.
void enumerate_paths(const Environment& env, const SignalModel& model,
                     const ThresholdConfig& config, int sign, int theta,
                     double prob, int steps_left, std::vector<double>& out) {
  if (steps_left == 0) {
    out[JointDistribution::index(config.bound(), sign, theta)] += prob;
    return;
  }
  const Arm arm = select_arm(sign * model.x(), theta);
  const double p_win = arm == Arm::A ? env.p_a() : env.p_b();
  for (bool won : {true, false}) {
    const int next_theta = update_threshold(theta, arm, won, config);
    const double pw = won ? p_win : 1.0 - p_win;
    for (bool flip : {true, false}) {
      const double pf = flip ? model.gamma() : 1.0 - model.gamma();
      enumerate_paths(env, model, config, flip ? -sign : sign, next_theta,
                      prob * pw * pf, steps_left - 1, out);
    }
  }
}

// Explicit Kronecker expansion for p_a + p_b = 1: birth-death threshold
// chain (up q, down p, clamped) times the 2x2 signal flip matrix.
std::vector<double> kronecker_oracle(double p, double gamma, int bound) {
  const double q = 1.0 - p;
  const int states = 2 * bound + 1;
  std::vector<double> walk(static_cast<std::size_t>(states) * states, 0.0);
  for (int i = 0; i < states; ++i) {
    const int up = std::min(i + 1, states - 1);
    const int down = std::max(i - 1, 0);
    walk[static_cast<std::size_t>(up) * states + i] += q;
    walk[static_cast<std::size_t>(down) * states + i] += p;
  }
  const double flip[2][2] = {{1.0 - gamma, gamma}, {gamma, 1.0 - gamma}};
  const std::size_t dim = 2 * static_cast<std::size_t>(states);
  std::vector<double> m(dim * dim, 0.0);
  for (int j = 0; j < states; ++j) {
    for (int i = 0; i < states; ++i) {
      for (int tau = 0; tau < 2; ++tau) {
        for (int sigma = 0; sigma < 2; ++sigma) {
          m[(2 * j + tau) + dim * (2 * i + sigma)] =
              walk[static_cast<std::size_t>(j) * states + i] * flip[tau][sigma];
        }
      }
    }
  }
  return m;  // column-major, same layout as TransitionMatrix
}

}  // namespace

TEST_CASE("transition matrix reproduces the hand-expanded factorization") {
  const Environment env(0.7, 0.3);
  const SignalModel model(3.5, 0.7);  // gamma = 0.15
  const ThresholdConfig config(4, 3.5);
  const TransitionMatrix m(env, model, config);

  const auto col = JointDistribution::index(4, +1, 0);
  CHECK(m.at(JointDistribution::index(4, +1, 1), col) == doctest::Approx(0.255));
  CHECK(m.at(JointDistribution::index(4, +1, -1), col) == doctest::Approx(0.595));
  CHECK(m.at(JointDistribution::index(4, -1, 1), col) == doctest::Approx(0.045));
  CHECK(m.at(JointDistribution::index(4, -1, -1), col) == doctest::Approx(0.105));

  double sum = 0.0;
  for (std::size_t row = 0; row < m.dim(); ++row) sum += m.at(row, col);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lower boundary clamps the downward move") {
  const Environment env(0.7, 0.3);
  const SignalModel model(3.5, 0.0);  // gamma = 0.5
  const ThresholdConfig config(4, 3.5);
  const TransitionMatrix m(env, model, config);

  const auto col = JointDistribution::index(4, +1, -4);
  // Arm A selected at (-4); a win keeps the threshold at -4.
  CHECK(m.at(JointDistribution::index(4, +1, -4), col) ==
        doctest::Approx(0.7 * 0.5));
  CHECK(m.at(JointDistribution::index(4, -1, -4), col) ==
        doctest::Approx(0.7 * 0.5));
  CHECK(m.at(JointDistribution::index(4, +1, -3), col) ==
        doctest::Approx(0.3 * 0.5));
}

TEST_CASE("columns are stochastic and the band structure holds" *
          doctest::timeout(60)) {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto params = draw_params(gen);
    const TransitionMatrix m(params.env, params.model, params.config);
    const int bound = params.config.bound();
    for (std::size_t colidx = 0; colidx < m.dim(); ++colidx) {
      double sum = 0.0;
      for (std::size_t row = 0; row < m.dim(); ++row) {
        const double entry = m.at(row, colidx);
        REQUIRE(entry >= 0.0);
        REQUIRE(entry <= 1.0);
        sum += entry;
      }
      REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    // |j - i| <= 1 everywhere; j == i only on the clamped rows i = +-N.
    for (int i = -bound; i <= bound; ++i) {
      for (int j = -bound; j <= bound; ++j) {
        for (int sigma : {+1, -1}) {
          for (int tau : {+1, -1}) {
            const double entry =
                m.at(JointDistribution::index(bound, tau, j),
                     JointDistribution::index(bound, sigma, i));
            if (std::abs(j - i) > 1) REQUIRE(entry == 0.0);
            if (j == i && std::abs(i) != bound) REQUIRE(entry == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("initial distribution puts half mass on each signal at zero") {
  const ThresholdConfig config(4, 3.5);
  const auto mu = exact::initial_distribution(config);
  CHECK(mu.at(+1, 0) == 0.5);
  CHECK(mu.at(-1, 0) == 0.5);
  CHECK(mu.sum() == doctest::Approx(1.0));

  const auto tiny = exact::initial_distribution(ThresholdConfig(1, 0.5));
  CHECK(tiny.size() == 6);
  CHECK(tiny.at(+1, 0) == 0.5);
}

TEST_CASE("propagate: identity, one hand-expanded step, and the long-run value") {
  const Environment env(0.7, 0.1);
  const SignalModel model(3.5, 0.0);
  const ThresholdConfig config(4, 3.5);
  const TransitionMatrix m(env, model, config);
  const auto mu0 = exact::initial_distribution(config);

  SUBCASE("zero steps is the identity") {
    const auto mu = exact::propagate(mu0, m, 0);
    for (std::size_t k = 0; k < mu.size(); ++k) {
      CHECK(mu.entries()[k] == mu0.entries()[k]);
    }
  }

  SUBCASE("one step matches the hand-expanded matrix-vector product") {
    const auto mu = exact::propagate(mu0, m, 1);
    CHECK(mu.at(+1, 1) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(mu.at(-1, 1) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(mu.at(+1, -1) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(mu.at(-1, -1) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(mu.at(+1, 0) == 0.0);
    CHECK(mu.at(-1, 2) == 0.0);
  }

  SUBCASE("dimension mismatch is rejected") {
    const auto small = exact::initial_distribution(ThresholdConfig(2, 1.5));
    CHECK_THROWS_AS(exact::propagate(small, m, 1), InvalidParameter);
  }
}

TEST_CASE("boundary environment reaches the known limit by n = 1000") {
  const ThresholdConfig config(4, 3.5);
  for (double lambda : {-0.7, 0.0, 0.4}) {
    const TransitionMatrix m(Environment(0.7, 0.3), SignalModel(3.5, lambda),
                             config);
    const auto mu = exact::propagate(exact::initial_distribution(config), m, 999);
    CHECK(std::abs(exact::cdr(mu, config) - 0.7855) <= 5e-5);
    // Within 1e-6 of the stationary limit.
    const double p = 0.7, q = 0.3;
    const double limit =
        (2 * std::pow(p, 9) - std::pow(p, 1) * std::pow(q, 8) -
         std::pow(p, 8) * std::pow(q, 1)) /
        (2 * (std::pow(p, 9) - std::pow(q, 9)));
    CHECK(std::abs(exact::cdr(mu, config) - limit) <= 1e-6);
  }
}

TEST_CASE("cdr counts exactly the arm-A states") {
  const ThresholdConfig config(4, 3.5);
  CHECK(exact::cdr(exact::initial_distribution(config), config) == 0.5);

  // Threshold N = 4 above x = 3.5: arm B is selected, contribution zero.
  const auto at_top = JointDistribution::point_mass(config, +1, 4);
  CHECK(exact::cdr(at_top, config) == 0.0);

  const auto below = JointDistribution::point_mass(config, +1, 3);
  CHECK(exact::cdr(below, config) == 1.0);

  // Negative signal selects A only below -x.
  const auto neg_low = JointDistribution::point_mass(config, -1, -4);
  CHECK(exact::cdr(neg_low, config) == 1.0);
  const auto neg_mid = JointDistribution::point_mass(config, -1, -3);
  CHECK(exact::cdr(neg_mid, config) == 0.0);
}

TEST_CASE("normalization drifts less than 1e-12 over 1000 steps") {
  std::mt19937 gen(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto params = draw_params(gen);
    const TransitionMatrix m(params.env, params.model, params.config);
    const auto mu =
        exact::propagate(exact::initial_distribution(params.config), m, 1000);
    CHECK(std::abs(mu.sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("cdr_curve is lambda-invariant on the boundary and ordered off it") {
  const ThresholdConfig config(4, 3.5);

  SUBCASE("p_a + p_b = 1: all lambda curves coincide") {
    const Environment env(0.7, 0.3);
    const auto reference =
        exact::cdr_curve(env, SignalModel(3.5, 0.0), config, 1000);
    CHECK(reference.front().cdr == doctest::Approx(0.5));
    for (double lambda : {-1.0, -0.7, -0.4, 0.4, 0.7, 0.99}) {
      const auto curve =
          exact::cdr_curve(env, SignalModel(3.5, lambda), config, 1000);
      for (std::size_t k = 0; k < curve.size(); ++k) {
        REQUIRE(std::abs(curve[k].cdr - reference[k].cdr) <= 1e-12);
      }
    }
  }

  SUBCASE("p_b = 0.1: positive autocorrelation wins at n = 1000") {
    const Environment env(0.7, 0.1);
    const double hi =
        exact::cdr_curve(env, SignalModel(3.5, 0.7), config, 1000).back().cdr;
    const double mid =
        exact::cdr_curve(env, SignalModel(3.5, 0.0), config, 1000).back().cdr;
    const double lo =
        exact::cdr_curve(env, SignalModel(3.5, -0.7), config, 1000).back().cdr;
    CHECK(hi > mid + 1e-4);
    CHECK(mid > lo + 1e-4);
  }

  SUBCASE("p_b = 0.5: negative autocorrelation wins at n = 1000") {
    const Environment env(0.7, 0.5);
    const double hi =
        exact::cdr_curve(env, SignalModel(3.5, -0.7), config, 1000).back().cdr;
    const double lo =
        exact::cdr_curve(env, SignalModel(3.5, 0.7), config, 1000).back().cdr;
    CHECK(hi > lo + 1e-4);
  }
}

TEST_CASE("Kronecker equivalence on the p_a + p_b = 1 boundary") {
  std::mt19937 gen(512);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double p = 0.01 + 0.98 * unit(gen);
    const double lambda = -1.0 + 1.99 * unit(gen);
    const int bound = 1 + static_cast<int>(unit(gen) * 5.0);
    const double x = std::min(bound - 0.5, 0.5 + std::floor(unit(gen) * bound));
    const SignalModel model(x, lambda);
    const ThresholdConfig config(bound, x);
    const TransitionMatrix m(Environment(p, 1.0 - p), model, config);
    const auto oracle = kronecker_oracle(p, model.gamma(), bound);
    for (std::size_t col = 0; col < m.dim(); ++col) {
      for (std::size_t row = 0; row < m.dim(); ++row) {
        REQUIRE(std::abs(m.at(row, col) - oracle[col * m.dim() + row]) <=
                1e-15);
      }
    }
  }
}

TEST_CASE("small instances match exhaustive path enumeration") {
  std::mt19937 gen(333);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Environment env(unit(gen), unit(gen));
    const double x = 0.05 + 0.9 * unit(gen);  // N = 1, x in (0, 1)
    const SignalModel model(x, -1.0 + 1.99 * unit(gen));
    const ThresholdConfig config(1, x);
    const TransitionMatrix m(env, model, config);

    for (int steps : {1, 2, 3}) {
      std::vector<double> oracle(config.state_count(), 0.0);
      for (int sign : {+1, -1}) {
        enumerate_paths(env, model, config, sign, 0, 0.5, steps, oracle);
      }
      const auto mu =
          exact::propagate(exact::initial_distribution(config), m, steps);
      for (std::size_t k = 0; k < mu.size(); ++k) {
        REQUIRE(mu.entries()[k] == doctest::Approx(oracle[k]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("stationary distribution: uniform case, closed form, residuals") {
  SUBCASE("p_a = p_b = 0.5 is uniform for any lambda") {
    for (double lambda : {-0.9, 0.0, 0.6}) {
      const ThresholdConfig config(4, 3.5);
      const TransitionMatrix m(Environment(0.5, 0.5),
                               SignalModel(3.5, lambda), config);
      const auto pi = exact::stationary_distribution(m);
      for (double e : pi.entries()) {
        CHECK(e == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
      }
    }
  }

  SUBCASE("boundary closed form evaluated directly as oracle") {
    const double p = 0.7, q = 0.3;
    const int bound = 4;
    const ThresholdConfig config(bound, 3.5);
    const TransitionMatrix m(Environment(p, q), SignalModel(3.5, 0.4), config);
    const auto pi = exact::stationary_distribution(m, 1e-14);
    const double scale = (p - q) * std::pow(p, bound) * std::pow(q, bound) /
                         (2.0 * (std::pow(p, 2 * bound + 1) -
                                 std::pow(q, 2 * bound + 1)));
    CHECK(pi.at(+1, 0) == doctest::Approx(0.009644).epsilon(1e-3));
    for (int i = -bound; i <= bound; ++i) {
      const double expected = scale * std::pow(q / p, i);
      CHECK(std::abs(pi.at(+1, i) - expected) <= 1e-10);
      CHECK(std::abs(pi.at(-1, i) - expected) <= 1e-10);
    }
  }

  SUBCASE("residual below tolerance for random parameters") {
    std::mt19937 gen(42);
    for (int trial = 0; trial < 10; ++trial) {
      const auto params = draw_params(gen);
      const TransitionMatrix m(params.env, params.model, params.config);
      const auto pi = exact::stationary_distribution(m, 1e-12);
      std::vector<double> image(pi.size());
      m.apply(pi.entries(), image);
      double residual = 0.0;
      for (std::size_t k = 0; k < pi.size(); ++k) {
        residual += std::abs(image[k] - pi.entries()[k]);
      }
      CHECK(residual <= 1e-12);
    }
  }

  SUBCASE("lambda = -1 converges despite the periodic signal") {
    const ThresholdConfig config(4, 3.5);
    const TransitionMatrix m(Environment(0.7, 0.2), SignalModel(3.5, -1.0),
                             config);
    const auto pi = exact::stationary_distribution(m, 1e-12);
    std::vector<double> image(pi.size());
    m.apply(pi.entries(), image);
    double residual = 0.0;
    for (std::size_t k = 0; k < pi.size(); ++k) {
      residual += std::abs(image[k] - pi.entries()[k]);
    }
    CHECK(residual <= 1e-12);
  }

  SUBCASE("non-convergence reports the residual") {
    const ThresholdConfig config(4, 3.5);
    const TransitionMatrix m(Environment(0.7, 0.2), SignalModel(3.5, 0.0),
                             config);
    CHECK_THROWS_AS(exact::stationary_distribution(m, 1e-15, 2),
                    ConvergenceError);
  }
}

TEST_CASE("joint distribution validation") {
  CHECK_THROWS_AS(JointDistribution(4, std::vector<double>(17, 0.0)),
                  InvalidParameter);
  std::vector<double> negative(18, 1.0 / 18.0);
  negative[0] = -negative[0];
  CHECK_THROWS_AS(JointDistribution(4, negative), InvalidParameter);
  std::vector<double> unnormalized(18, 1.0);
  CHECK_THROWS_AS(JointDistribution(4, unnormalized), InvalidParameter);
}
