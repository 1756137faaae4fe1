#pragma once

#include <cstdint>
#include <vector>

#include "towbandit/core.hpp"
#include "towbandit/rng.hpp"

namespace towbandit::mc {

enum class Mode {
  integer_threshold,  // unit-step threshold walk, the exact engine's model
  generalized_ta,     // threshold adjuster with (k, alpha, delta, omega)
};

/// Threshold-adjuster parameters. At (1, 1, 1, 1) the adjuster walk
/// reduces to the integer threshold walk step for step.
struct TaParams {
  double k = 1.0;
  double alpha = 1.0;  // memory, in [0, 1]
  double delta = 1.0;  // step on a win
  double omega = 1.0;  // step on a loss
};

struct SimulationConfig {
  Environment env;
  SignalModel model;
  ThresholdConfig config;
  int steps = 1000;
  int replications = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::integer_threshold;
  TaParams ta;

  void validate() const;
};

/// Aggregates over replications. cdr_by_step[n-1] is the fraction of
/// replications that chose arm A at step n; signal_positive_by_step[n-1]
/// the fraction whose signal sat at +x. The histogram covers the final
/// threshold (integer mode) or floor of the final adjuster (generalized
/// mode), indexed theta + bound; its counts sum to replications.
struct TrajectoryStats {
  std::vector<double> cdr_by_step;
  std::vector<double> signal_positive_by_step;
  std::vector<std::uint64_t> final_threshold_histogram;
  int replications = 0;

  double cdr_at(int n) const { return cdr_by_step.at(n - 1); }
  double signal_positive_at(int n) const {
    return signal_positive_by_step.at(n - 1);
  }
};

/// Runs cfg.replications independent trajectories. Replication r draws
/// from replication_stream(seed, r); per trajectory the draw order is one
/// uniform for the initial sign, then per step one uniform for the reward
/// and one for the signal flip. Results are bit-identical for a given
/// config regardless of jobs.
TrajectoryStats simulate(const SimulationConfig& cfg, int jobs = 1);

struct CdrComparison {
  int n;
  double empirical;
  double exact;
  double z;
  bool flagged;  // |z| > 4
};

/// Scores existing stats against the exact engine at the sampled steps,
/// using the binomial standard error of the exact value.
std::vector<CdrComparison> compare_to_exact(const TrajectoryStats& stats,
                                            const SimulationConfig& cfg,
                                            const std::vector<int>& sample_steps);

/// simulate + compare_to_exact. Integer-threshold mode only.
std::vector<CdrComparison> empirical_cdr_vs_exact(
    const SimulationConfig& cfg, const std::vector<int>& sample_steps,
    int jobs = 1);

}  // namespace towbandit::mc
