#include "towbandit/exact.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace towbandit::exact {

namespace {

constexpr double kSumTolerance = 1e-12;

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d += std::abs(a[k] - b[k]);
  }
  return d;
}

}  // namespace

JointDistribution::JointDistribution(int bound, std::vector<double> entries)
    : bound_(bound), entries_(std::move(entries)) {
  const std::size_t expected = 2 * static_cast<std::size_t>(2 * bound + 1);
  if (bound < 1 || entries_.size() != expected) {
    throw InvalidParameter("joint distribution must have length 4N+2 = " +
                           std::to_string(expected) + ", got " +
                           std::to_string(entries_.size()));
  }
  double total = 0.0;
  for (double e : entries_) {
    if (!(e >= 0.0)) {
      throw InvalidParameter("joint distribution entries must be nonnegative");
    }
    total += e;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InvalidParameter("joint distribution entries sum to " +
                           std::to_string(total) + ", expected 1");
  }
}

JointDistribution JointDistribution::point_mass(const ThresholdConfig& config,
                                                int signal_sign,
                                                int threshold) {
  if (std::abs(threshold) > config.bound()) {
    throw InvalidParameter("point mass threshold outside [-N, N]");
  }
  std::vector<double> entries(config.state_count(), 0.0);
  entries[index(config.bound(), signal_sign, threshold)] = 1.0;
  return JointDistribution(config.bound(), std::move(entries));
}

double JointDistribution::sum() const noexcept {
  double total = 0.0;
  for (double e : entries_) total += e;
  return total;
}

TransitionMatrix::TransitionMatrix(const Environment& env,
                                   const SignalModel& model,
                                   const ThresholdConfig& config)
    : dim_(static_cast<std::size_t>(config.state_count())),
      storage_(dim_ * dim_, 0.0),
      env_(env),
      model_(model),
      config_(config) {
  validate_model_pair(model, config);
  const int bound = config.bound();
  const double gamma = model.gamma();
  for (int i = -bound; i <= bound; ++i) {
    for (int sigma : {+1, -1}) {
      const std::size_t col = JointDistribution::index(bound, sigma, i);
      const double q = upward_probability(sigma, i, env, model);
      const int up = i + 1 > bound ? bound : i + 1;    // clamped stay at +N
      const int down = i - 1 < -bound ? -bound : i - 1;  // clamped stay at -N
      for (int tau : {+1, -1}) {
        const double g = tau == sigma ? 1.0 - gamma : gamma;
        storage_[col * dim_ + JointDistribution::index(bound, tau, up)] += g * q;
        storage_[col * dim_ + JointDistribution::index(bound, tau, down)] +=
            g * (1.0 - q);
      }
    }
  }
}

void TransitionMatrix::apply(const std::vector<double>& in,
                             std::vector<double>& out) const {
  assert(in.size() == dim_ && out.size() == dim_ && &in != &out);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t col = 0; col < dim_; ++col) {
    const double w = in[col];
    if (w == 0.0) continue;
    const double* column = storage_.data() + col * dim_;
    for (std::size_t row = 0; row < dim_; ++row) {
      out[row] += column[row] * w;
    }
  }
}

TransitionMatrix build_transition_matrix(const Environment& env,
                                         const SignalModel& model,
                                         const ThresholdConfig& config) {
  return TransitionMatrix(env, model, config);
}

JointDistribution initial_distribution(const ThresholdConfig& config) {
  std::vector<double> entries(config.state_count(), 0.0);
  entries[JointDistribution::index(config.bound(), +1, 0)] = 0.5;
  entries[JointDistribution::index(config.bound(), -1, 0)] = 0.5;
  return JointDistribution(config.bound(), std::move(entries));
}

JointDistribution propagate(const JointDistribution& mu,
                            const TransitionMatrix& m, long steps) {
  if (steps < 0) {
    throw InvalidParameter("propagation steps must be nonnegative");
  }
  if (mu.size() != m.dim()) {
    throw InvalidParameter("distribution length " + std::to_string(mu.size()) +
                           " does not match matrix dimension " +
                           std::to_string(m.dim()));
  }
  std::vector<double> current = mu.entries();
  std::vector<double> next(current.size());
  for (long s = 0; s < steps; ++s) {
    m.apply(current, next);
    current.swap(next);
  }
  JointDistribution result(mu.bound(), std::move(current));
  assert(std::abs(result.sum() - 1.0) <= kSumTolerance);
  return result;
}

double cdr(const JointDistribution& mu, const ThresholdConfig& config) {
  const int bound = config.bound();
  const int fx = config.floor_x();
  double total = 0.0;
  for (int i = -bound; i <= fx; ++i) total += mu.at(+1, i);
  for (int i = -bound; i <= -fx - 1; ++i) total += mu.at(-1, i);
  return total;
}

std::vector<CdrPoint> cdr_curve(const Environment& env,
                                const SignalModel& model,
                                const ThresholdConfig& config, int max_steps) {
  if (max_steps < 1) {
    throw InvalidParameter("cdr_curve needs max_steps >= 1");
  }
  const TransitionMatrix m(env, model, config);
  std::vector<double> current = initial_distribution(config).entries();
  std::vector<double> next(current.size());

  const int bound = config.bound();
  const int fx = config.floor_x();
  auto cdr_of = [&](const std::vector<double>& v) {
    double total = 0.0;
    for (int i = -bound; i <= fx; ++i)
      total += v[JointDistribution::index(bound, +1, i)];
    for (int i = -bound; i <= -fx - 1; ++i)
      total += v[JointDistribution::index(bound, -1, i)];
    return total;
  };

  std::vector<CdrPoint> curve;
  curve.reserve(static_cast<std::size_t>(max_steps));
  curve.push_back({1, cdr_of(current)});
  for (int n = 2; n <= max_steps; ++n) {
    m.apply(current, next);
    current.swap(next);
    curve.push_back({n, cdr_of(current)});
  }
  return curve;
}

JointDistribution stationary_distribution(const TransitionMatrix& m,
                                          double tol, long max_iter) {
  if (!(tol > 0.0)) {
    throw InvalidParameter("stationary tolerance must be positive");
  }
  const std::size_t dim = m.dim();
  std::vector<double> x(dim, 1.0 / static_cast<double>(dim));
  std::vector<double> mx(dim);

  double residual = 0.0;
  for (long iter = 0; iter < max_iter; ++iter) {
    m.apply(x, mx);
    residual = l1_distance(mx, x);
    if (residual <= tol) {
      const int bound = m.config().bound();
      return JointDistribution(bound, std::move(x));
    }
    // Damped step: x <- (x + Mx) / 2, renormalized against drift.
    double total = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      x[k] = 0.5 * (x[k] + mx[k]);
      total += x[k];
    }
    for (std::size_t k = 0; k < dim; ++k) x[k] /= total;
  }
  throw ConvergenceError("stationary distribution did not converge: residual " +
                             std::to_string(residual) + " after " +
                             std::to_string(max_iter) + " iterations",
                         residual, max_iter);
}

}  // namespace towbandit::exact
