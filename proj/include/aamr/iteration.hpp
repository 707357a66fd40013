#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "aamr/vector.hpp"

namespace aamr {

/// Relaxation schedule n -> lambda_n in [0, 1]. Convergence needs
/// sum lambda_n (1 - lambda_n) = +inf, which is the caller's responsibility;
/// any constant schedule with lambda in (0, 1) satisfies it.
using Relaxation = std::function<double(std::size_t)>;

Relaxation constant_relaxation(double lambda);

/// Stop once |x_{n+1} - x_n| < tol (max over blocks for block schemes).
struct FixedPointResidual {};

/// Stop once |shadow_n - reference| < tol.
struct TrueError {
  Vector reference;
};

using StopRule = std::variant<FixedPointResidual, TrueError>;

/// Controls shared by every iterative solver.
struct SolveOptions {
  Relaxation lambda = constant_relaxation(0.9);
  double tol = 1e-6;
  std::size_t max_iter = 100000;
  StopRule stop_rule = FixedPointResidual{};
  /// When false only the final record is kept in the trace.
  bool record_iterates = true;

  void validate() const;
};

/// Parameters of the AAMR iteration: beta in (0, 1), gamma > 0.
struct IterationParams {
  double beta = 0.5;
  double gamma = 1.0;
  SolveOptions options{};

  void validate() const;
};

struct IterateRecord {
  /// Zero-based step index: the record describes the step x_n -> x_{n+1}.
  std::size_t n = 0;
  /// x_{n+1}; one entry for two-operator schemes, r entries for block schemes.
  std::vector<Vector> governing;
  /// Shadow point computed from x_{n+1}.
  Vector shadow;
  /// |x_{n+1} - x_n| (max over blocks in block schemes).
  double step_norm = 0.0;
  /// |shadow - reference| when stopping on the true error.
  std::optional<double> error;
};

struct RunTrace {
  std::vector<IterateRecord> iterates;
  bool converged = false;
  std::size_t iterations_used = 0;
};

struct AamrResult {
  /// The claimed resolvent value (or zero, for Douglas-Rachford).
  Vector shadow_limit;
  /// Last governing iterate.
  Vector governing_limit;
  RunTrace trace;
};

}  // namespace aamr
