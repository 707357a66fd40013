#include "parallel_kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aamr::detail {

namespace {

void update_block(const BlockStepArgs& a, std::size_t i) {
  const std::size_t d = a.q.size();
  const auto xi = a.x.subspan(i * d, d);
  const auto yi = a.scratch.subspan(i * d, d);
  const auto ni = a.next.subspan(i * d, d);

  for (std::size_t k = 0; k < d; ++k) yi[k] = a.mean_factor * a.mean[k] - xi[k];
  for (std::size_t k = 0; k < d; ++k) ni[k] = yi[k] + a.q[k];
  (*a.ops)[i].resolve_into(a.gamma, ni, ni);
  double sq = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double reflected = 2.0 * a.beta * (ni[k] - a.q[k]) - yi[k];
    ni[k] = (1.0 - a.lambda) * xi[k] + a.lambda * reflected;
    const double diff = ni[k] - xi[k];
    sq += diff * diff;
  }
  a.step_norms[i] = std::sqrt(sq);
}

double max_norm(std::span<const double> norms) noexcept {
  double m = 0.0;
  for (double v : norms) m = std::max(m, v);
  return m;
}

}  // namespace

void block_mean(std::span<const double> x, std::size_t r, std::span<double> mean) noexcept {
  const std::size_t d = mean.size();
  std::fill(mean.begin(), mean.end(), 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < d; ++k) mean[k] += x[i * d + k];
  }
  for (double& m : mean) m /= static_cast<double>(r);
}

double block_step_serial(const BlockStepArgs& args) {
  const std::size_t r = args.ops->size();
  for (std::size_t i = 0; i < r; ++i) update_block(args, i);
  return max_norm(args.step_norms);
}

double block_step_omp(const BlockStepArgs& args) {
#ifdef _OPENMP
  const auto r = static_cast<std::ptrdiff_t>(args.ops->size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < r; ++i) update_block(args, static_cast<std::size_t>(i));
  return max_norm(args.step_norms);
#else
  return block_step_serial(args);
#endif
}

}  // namespace aamr::detail
