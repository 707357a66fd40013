#pragma once

// Per-iteration kernels of the block schemes. The OpenMP kernel must stay
// bit-identical to the serial reference: each block is computed by exactly
// one thread with the same arithmetic, and every cross-block reduction is
// done serially in ascending block order.

#include <span>
#include <vector>

#include "aamr/operator.hpp"

namespace aamr::detail {

struct BlockStepArgs {
  const std::vector<MonotoneOperator>* ops = nullptr;
  double beta = 0.5;
  double gamma = 1.0;
  double lambda = 0.9;
  /// Multiplier of p_n in the inner reflection: 2 beta (original) or 2 (alternative).
  double mean_factor = 1.0;
  std::span<const double> q;
  std::span<const double> x;  // r * d
  std::span<const double> mean;  // d
  std::span<double> next;  // r * d
  std::span<double> scratch;  // r * d
  std::span<double> step_norms;  // r
};

/// p = (1/r) sum_i x_i, summed in ascending block order.
void block_mean(std::span<const double> x, std::size_t r, std::span<double> mean) noexcept;

/// Serial reference kernel. Returns max_i |x_i+ - x_i|.
double block_step_serial(const BlockStepArgs& args);

/// OpenMP kernel; falls back to the serial loop when built without OpenMP.
double block_step_omp(const BlockStepArgs& args);

}  // namespace aamr::detail
