#include "towbandit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "towbandit/exact.hpp"

namespace towbandit::sweep {

LambdaGrid::LambdaGrid(double min, double max, double step) {
  if (!(step > 0.0)) {
    throw InvalidParameter("lambda step must be positive");
  }
  if (min < -1.0 || max >= 1.0 || min > max) {
    throw InvalidParameter("lambda range must satisfy -1 <= min <= max < 1");
  }
  const int count = static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
  values_.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double lambda = min + k * step;
    if (lambda >= 1.0) break;
    values_.push_back(lambda);
  }
}

LambdaGrid::LambdaGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw InvalidParameter("lambda grid must be non-empty");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] < -1.0 || values_[k] >= 1.0) {
      throw InvalidParameter("lambda grid values must lie in [-1, 1)");
    }
    if (k > 0 && values_[k] <= values_[k - 1]) {
      throw InvalidParameter("lambda grid must be strictly increasing");
    }
  }
}

EnvGrid::EnvGrid(double step) : step_(step) {
  if (!(step > 0.0 && step < 1.0)) {
    throw InvalidParameter("env grid step must lie in (0, 1)");
  }
  std::vector<double> axis;
  for (int k = 1; k * step <= 0.99 + 1e-9; ++k) {
    axis.push_back(k * step);
  }
  for (double p_a : axis) {
    for (double p_b : axis) {
      if (p_a > p_b) values_.emplace_back(p_a, p_b);
    }
  }
  std::sort(values_.begin(), values_.end());
}

std::vector<SweepPoint> lambda_sweep(const Environment& env,
                                     const ThresholdConfig& config,
                                     const LambdaGrid& grid, int at_step) {
  if (at_step < 1) {
    throw InvalidParameter("lambda sweep needs at_step >= 1");
  }
  std::vector<SweepPoint> points;
  points.reserve(grid.values().size());
  const double x = config.floor_x() + 0.5;
  for (double lambda : grid.values()) {
    const SignalModel model(x, lambda);
    const exact::TransitionMatrix m(env, model, config);
    const auto mu =
        exact::propagate(exact::initial_distribution(config), m, at_step - 1);
    points.push_back({lambda, exact::cdr(mu, config)});
  }
  return points;
}

ArgmaxResult argmax_lambda(const std::vector<SweepPoint>& sweep,
                           double tie_tol) {
  if (sweep.empty()) {
    throw InvalidParameter("argmax over an empty sweep");
  }
  if (tie_tol < 0.0) {
    throw InvalidParameter("tie tolerance must be nonnegative");
  }
  double max_cdr = sweep.front().cdr;
  for (const auto& point : sweep) max_cdr = std::max(max_cdr, point.cdr);

  double lambda_sum = 0.0;
  int count = 0;
  for (const auto& point : sweep) {
    if (point.cdr >= max_cdr - tie_tol) {
      lambda_sum += point.lambda;
      ++count;
    }
  }
  return {lambda_sum / count, max_cdr, count};
}

std::vector<SweepRecord> heatmap(const EnvGrid& env_grid,
                                 const ThresholdConfig& config,
                                 const LambdaGrid& lambda_grid, int at_step,
                                 double tie_tol, int jobs) {
  const auto& cells = env_grid.values();
  std::vector<SweepRecord> records(cells.size());

  auto evaluate = [&](std::size_t cell) {
    const auto [p_a, p_b] = cells[cell];
    const Environment env(p_a, p_b);
    const auto points = lambda_sweep(env, config, lambda_grid, at_step);
    const auto best = argmax_lambda(points, tie_tol);
    records[cell] = {p_a, p_b, best.max_cdr, best.lambda_m, best.argmax_count};
  };

  const int workers =
      std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
  if (workers == 1) {
    for (std::size_t cell = 0; cell < cells.size(); ++cell) evaluate(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t cell = next.fetch_add(1); cell < cells.size();
             cell = next.fetch_add(1)) {
          evaluate(cell);
        }
      });
    }
    for (auto& t : threads) t.join();
  }
  return records;
}

}  // namespace towbandit::sweep
