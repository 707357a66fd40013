#pragma once

// Shared driver for the relaxed fixed-point loops. Internal to the solvers.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aamr/errors.hpp"
#include "aamr/iteration.hpp"

namespace aamr::detail {

inline double checked_lambda(const Relaxation& schedule, std::size_t n) {
  const double lambda = schedule(n);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("relaxation parameter lambda_" + std::to_string(n) + " outside [0, 1]");
  }
  return lambda;
}

inline std::vector<Vector> split_blocks(std::span<const double> x, std::size_t blocks) {
  const std::size_t d = x.size() / blocks;
  std::vector<Vector> out;
  out.reserve(blocks);
  for (std::size_t i = 0; i < blocks; ++i) out.emplace_back(x.subspan(i * d, d));
  return out;
}

/// Runs x_{n+1} = step(n, lambda_n, x_n) until the stop rule fires or the
/// iteration cap is hit.
///
/// `step(n, lambda, x, next)` writes x_{n+1} into `next` and returns the step
/// norm; `shadow(x, s)` writes the shadow point of x into `s`. On return `x`
/// holds the last iterate and `s` its shadow.
template <class StepFn, class ShadowFn>
RunTrace run_fixed_point(const SolveOptions& opt, std::vector<double>& x, std::size_t blocks,
                         std::vector<double>& s, StepFn&& step, ShadowFn&& shadow) {
  const TrueError* true_error = std::get_if<TrueError>(&opt.stop_rule);
  if (true_error) require_same_dim(s.size(), true_error->reference.dim(), "TrueError reference");

  RunTrace trace;
  std::vector<double> next(x.size());

  shadow(std::span<const double>(x), std::span<double>(s));
  if (true_error && distance(std::span<const double>(s), true_error->reference.coords()) < opt.tol) {
    trace.converged = true;
    return trace;
  }

  IterateRecord last;
  for (std::size_t n = 0; n < opt.max_iter; ++n) {
    const double lambda = checked_lambda(opt.lambda, n);
    const double step_norm = step(n, lambda, std::span<const double>(x), std::span<double>(next));
    if (!all_finite(next) || !std::isfinite(step_norm)) {
      throw NumericalBreakdown("non-finite iterate at step " + std::to_string(n));
    }
    std::swap(x, next);
    shadow(std::span<const double>(x), std::span<double>(s));

    std::optional<double> error;
    bool done = false;
    if (true_error) {
      error = distance(std::span<const double>(s), true_error->reference.coords());
      done = *error < opt.tol;
    } else {
      done = step_norm < opt.tol;
    }

    trace.iterations_used = n + 1;
    const bool keep = opt.record_iterates || done || n + 1 == opt.max_iter;
    if (keep) {
      last = IterateRecord{n, split_blocks(x, blocks), Vector(std::span<const double>(s)), step_norm, error};
      if (opt.record_iterates) trace.iterates.push_back(last);
    }
    if (done) {
      trace.converged = true;
      break;
    }
  }
  if (!opt.record_iterates && trace.iterations_used > 0) trace.iterates.push_back(std::move(last));
  return trace;
}

}  // namespace aamr::detail
