#include "towbandit/analytic.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace towbandit::analytic {

BoundaryEnvironment::BoundaryEnvironment(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidParameter("boundary p = " + std::to_string(p) +
                           " must lie in (0, 1)");
  }
}

double cdr_infinity_closed_form(double p, const ThresholdConfig& config) {
  const BoundaryEnvironment boundary(p);
  if (p == 0.5) return 0.5;

  const int bound = config.bound();
  const int fx = config.floor_x();
  if (p > 0.5) {
    const double r = (1.0 - p) / p;
    return (2.0 - std::pow(r, bound + fx + 1) - std::pow(r, bound - fx)) /
           (2.0 * (1.0 - std::pow(r, 2 * bound + 1)));
  }
  // Mirror form in s = p / (1 - p) < 1 keeps all powers below 1.
  const double s = p / (1.0 - p);
  return (2.0 * std::pow(s, 2 * bound + 1) - std::pow(s, bound - fx) -
          std::pow(s, bound + fx + 1)) /
         (2.0 * (std::pow(s, 2 * bound + 1) - 1.0));
}

exact::JointDistribution stationary_closed_form(double p,
                                                const ThresholdConfig& config) {
  const BoundaryEnvironment boundary(p);
  const int bound = config.bound();
  const int states = 2 * bound + 1;
  std::vector<double> entries(config.state_count());

  if (p == 0.5) {
    const double u = 1.0 / static_cast<double>(2 * states);
    for (double& e : entries) e = u;
    return exact::JointDistribution(bound, std::move(entries));
  }

  const double r = (1.0 - p) / p;
  // Weights r^(N+i) for i = -N..N, built by successive multiplication from
  // the largest one so nothing overflows; normalizing the anchor first and
  // multiplying outward keeps the stored ratio between consecutive entries
  // exactly r (for r < 1, the relevant p_a > p_b half).
  std::vector<double> weights(static_cast<std::size_t>(states));
  if (r <= 1.0) {
    weights[0] = 1.0;
    for (int k = 1; k < states; ++k) weights[k] = weights[k - 1] * r;
  } else {
    const double inv = p / (1.0 - p);
    weights[states - 1] = 1.0;
    for (int k = states - 2; k >= 0; --k) weights[k] = weights[k + 1] * inv;
  }
  double total = 0.0;
  for (double w : weights) total += w;
  const double norm = 2.0 * total;

  std::vector<double> normalized(static_cast<std::size_t>(states));
  if (r <= 1.0) {
    normalized[0] = weights[0] / norm;
    for (int k = 1; k < states; ++k) normalized[k] = normalized[k - 1] * r;
  } else {
    const double inv = p / (1.0 - p);
    normalized[states - 1] = weights[states - 1] / norm;
    for (int k = states - 2; k >= 0; --k) {
      normalized[k] = normalized[k + 1] * inv;
    }
  }
  for (int i = -bound; i <= bound; ++i) {
    entries[exact::JointDistribution::index(bound, +1, i)] =
        normalized[i + bound];
    entries[exact::JointDistribution::index(bound, -1, i)] =
        normalized[i + bound];
  }
  return exact::JointDistribution(bound, std::move(entries));
}

double f_approx(double p, int m) {
  if (!(p > 0.5 && p < 1.0)) {
    throw InvalidParameter("f_approx requires p in (0.5, 1), got " +
                           std::to_string(p));
  }
  if (m < 1) {
    throw InvalidParameter("f_approx requires m >= 1, got " +
                           std::to_string(m));
  }
  return 1.0 - 0.5 * std::pow((1.0 - p) / p, m);
}

}  // namespace towbandit::analytic
