#include "aamr/iteration.hpp"

#include <cmath>
#include <stdexcept>

namespace aamr {

Relaxation constant_relaxation(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("constant_relaxation: lambda must lie in [0, 1]");
  }
  return [lambda](std::size_t) { return lambda; };
}

void SolveOptions::validate() const {
  if (!lambda) throw std::invalid_argument("SolveOptions: missing relaxation schedule");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("SolveOptions: tol must be positive");
  if (max_iter == 0) throw std::invalid_argument("SolveOptions: max_iter must be positive");
  if (const auto* te = std::get_if<TrueError>(&stop_rule); te && te->reference.empty()) {
    throw std::invalid_argument("SolveOptions: TrueError needs a reference point");
  }
}

void IterationParams::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("IterationParams: beta must lie in (0, 1)");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("IterationParams: gamma must be positive");
  options.validate();
}

}  // namespace aamr
