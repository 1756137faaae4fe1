#include "towbandit/montecarlo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "towbandit/exact.hpp"

namespace towbandit::mc {

namespace {

struct Accumulator {
  std::vector<std::uint64_t> correct;   // arm-A selections per step
  std::vector<std::uint64_t> positive;  // s_n = +x per step
  std::vector<std::uint64_t> histogram;

  explicit Accumulator(int steps, int states)
      : correct(static_cast<std::size_t>(steps), 0),
        positive(static_cast<std::size_t>(steps), 0),
        histogram(static_cast<std::size_t>(states), 0) {}

  void merge(const Accumulator& other) {
    for (std::size_t k = 0; k < correct.size(); ++k)
      correct[k] += other.correct[k];
    for (std::size_t k = 0; k < positive.size(); ++k)
      positive[k] += other.positive[k];
    for (std::size_t k = 0; k < histogram.size(); ++k)
      histogram[k] += other.histogram[k];
  }
};

double ta_step(double ta, Arm selected, bool won, const TaParams& t,
               double bound) {
  const double pulled = t.alpha * ta;
  if ((selected == Arm::A) == won) {  // A-win or B-loss: move down
    const double step = selected == Arm::A ? t.delta : t.omega;
    return std::max(pulled - step, -bound);
  }
  const double step = selected == Arm::B ? t.delta : t.omega;
  return std::min(pulled + step, bound);
}

void run_range(const SimulationConfig& cfg, std::uint64_t first,
               std::uint64_t last, Accumulator& acc) {
  const double x = cfg.model.x();
  const double gamma = cfg.model.gamma();
  const double p_a = cfg.env.p_a();
  const double p_b = cfg.env.p_b();
  const int bound = cfg.config.bound();
  const bool integer_mode = cfg.mode == Mode::integer_threshold;

  for (std::uint64_t r = first; r < last; ++r) {
    SplitMix64 rng = replication_stream(cfg.seed, r);
    int sign = rng.uniform01() < 0.5 ? +1 : -1;
    int theta = 0;
    double ta = 0.0;

    for (int n = 0; n < cfg.steps; ++n) {
      const double threshold =
          integer_mode ? static_cast<double>(theta)
                       : cfg.ta.k * std::floor(ta);
      const Arm arm = select_arm(sign * x, threshold);
      if (arm == Arm::A) ++acc.correct[static_cast<std::size_t>(n)];
      if (sign > 0) ++acc.positive[static_cast<std::size_t>(n)];

      const bool won = rng.uniform01() < (arm == Arm::A ? p_a : p_b);
      if (integer_mode) {
        theta = update_threshold(theta, arm, won, cfg.config);
      } else {
        ta = ta_step(ta, arm, won, cfg.ta, static_cast<double>(bound));
        assert(std::abs(ta) <= static_cast<double>(bound));
      }
      if (rng.uniform01() < gamma) sign = -sign;
    }

    const int final_state =
        integer_mode ? theta : static_cast<int>(std::floor(ta));
    ++acc.histogram[static_cast<std::size_t>(final_state + bound)];
  }
}

}  // namespace

void SimulationConfig::validate() const {
  validate_model_pair(model, config);
  if (steps < 1) {
    throw InvalidParameter("simulation needs steps >= 1");
  }
  if (replications < 1) {
    throw InvalidParameter("simulation needs replications >= 1");
  }
  if (!(ta.alpha >= 0.0 && ta.alpha <= 1.0)) {
    throw InvalidParameter("memory parameter alpha must be in [0, 1]");
  }
  if (mode == Mode::integer_threshold &&
      (ta.k != 1.0 || ta.alpha != 1.0 || ta.delta != 1.0 || ta.omega != 1.0)) {
    throw InvalidParameter(
        "integer_threshold mode requires ta params (1, 1, 1, 1)");
  }
}

TrajectoryStats simulate(const SimulationConfig& cfg, int jobs) {
  cfg.validate();
  const int states = 2 * cfg.config.bound() + 1;
  const std::uint64_t reps = static_cast<std::uint64_t>(cfg.replications);
  const int workers = std::clamp<int>(jobs, 1, cfg.replications);

  Accumulator total(cfg.steps, states);
  if (workers == 1) {
    run_range(cfg, 0, reps, total);
  } else {
    std::vector<Accumulator> partials(
        static_cast<std::size_t>(workers), Accumulator(cfg.steps, states));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    const std::uint64_t chunk = (reps + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t first = static_cast<std::uint64_t>(w) * chunk;
      const std::uint64_t last = std::min(reps, first + chunk);
      threads.emplace_back([&cfg, first, last, &acc = partials[w]] {
        if (first < last) run_range(cfg, first, last, acc);
      });
    }
    for (auto& t : threads) t.join();
    // Integer counts make the merge exact in any order.
    for (const auto& p : partials) total.merge(p);
  }

  TrajectoryStats stats;
  stats.replications = cfg.replications;
  stats.cdr_by_step.resize(total.correct.size());
  stats.signal_positive_by_step.resize(total.positive.size());
  for (std::size_t k = 0; k < total.correct.size(); ++k) {
    stats.cdr_by_step[k] =
        static_cast<double>(total.correct[k]) / static_cast<double>(reps);
    stats.signal_positive_by_step[k] =
        static_cast<double>(total.positive[k]) / static_cast<double>(reps);
  }
  stats.final_threshold_histogram = std::move(total.histogram);
  return stats;
}

std::vector<CdrComparison> compare_to_exact(
    const TrajectoryStats& stats, const SimulationConfig& cfg,
    const std::vector<int>& sample_steps) {
  if (sample_steps.empty()) {
    throw InvalidParameter("compare_to_exact needs at least one sample step");
  }
  int max_step = 0;
  for (int n : sample_steps) {
    if (n < 1 || n > static_cast<int>(stats.cdr_by_step.size())) {
      throw InvalidParameter("sample step " + std::to_string(n) +
                             " outside the simulated range");
    }
    max_step = std::max(max_step, n);
  }
  const auto curve = exact::cdr_curve(cfg.env, cfg.model, cfg.config, max_step);

  std::vector<CdrComparison> report;
  report.reserve(sample_steps.size());
  const double reps = static_cast<double>(stats.replications);
  for (int n : sample_steps) {
    const double expected = curve[static_cast<std::size_t>(n - 1)].cdr;
    const double empirical = stats.cdr_at(n);
    const double se = std::sqrt(expected * (1.0 - expected) / reps);
    double z = 0.0;
    if (se > 0.0) {
      z = (empirical - expected) / se;
    } else if (empirical != expected) {
      z = std::numeric_limits<double>::infinity();
    }
    report.push_back({n, empirical, expected, z, std::abs(z) > 4.0});
  }
  return report;
}

std::vector<CdrComparison> empirical_cdr_vs_exact(
    const SimulationConfig& cfg, const std::vector<int>& sample_steps,
    int jobs) {
  if (cfg.mode != Mode::integer_threshold) {
    throw InvalidParameter(
        "exact cross-validation is defined for integer_threshold mode only");
  }
  return compare_to_exact(simulate(cfg, jobs), cfg, sample_steps);
}

}  // namespace towbandit::mc
