#pragma once

#include <string>
#include <vector>

#include "towbandit/sweep.hpp"

namespace towbandit::svg {

/// Heatmap of max-over-lambda CDR on the (p_a, p_b) plane, sequential
/// colormap over [0.5, 1].
std::string max_cdr_heatmap(const std::vector<sweep::SweepRecord>& records,
                            double grid_step);

/// Heatmap of the mean optimal autocorrelation, diverging colormap
/// centered at 0 (blue negative, red positive).
std::string lambda_m_heatmap(const std::vector<sweep::SweepRecord>& records,
                             double grid_step);

}  // namespace towbandit::svg
