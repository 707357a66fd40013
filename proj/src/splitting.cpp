#include "aamr/splitting.hpp"

#include <stdexcept>

#include "fixed_point.hpp"

namespace aamr {

namespace {

void check_pair(const MonotoneOperator& a, const MonotoneOperator& b, const Vector& q, const Vector& x) {
  require_same_dim(a.dim(), b.dim(), "operator pair");
  require_same_dim(a.dim(), q.dim(), "query point");
  require_same_dim(a.dim(), x.dim(), "starting point");
}

// (2 beta J_{gamma A_{-q}} - Id)(x) into out, with J_{gamma A_{-q}}(y) = J_{gamma A}(y + q) - q.
void modified_reflection(const MonotoneOperator& op, double beta, double gamma, std::span<const double> q,
                         std::span<const double> x, std::span<double> out) {
  const std::size_t d = x.size();
  for (std::size_t i = 0; i < d; ++i) out[i] = x[i] + q[i];
  op.resolve_into(gamma, out, out);
  for (std::size_t i = 0; i < d; ++i) out[i] = 2.0 * beta * (out[i] - q[i]) - x[i];
}

double aamr_step_into(const MonotoneOperator& a, const MonotoneOperator& b, double beta, double gamma,
                      double lambda, std::span<const double> q, std::span<const double> x,
                      std::span<double> next, std::vector<double>& y, std::vector<double>& z) {
  modified_reflection(a, beta, gamma, q, x, y);
  modified_reflection(b, beta, gamma, q, y, z);
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    next[i] = (1.0 - lambda) * x[i] + lambda * z[i];
    const double diff = next[i] - x[i];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

}  // namespace

Vector aamr_step(const MonotoneOperator& a, const MonotoneOperator& b, const IterationParams& params,
                 const Vector& q, const Vector& x, std::size_t n) {
  check_pair(a, b, q, x);
  if (!(params.beta > 0.0 && params.beta <= 1.0)) {
    throw std::invalid_argument("aamr_step: beta must lie in (0, 1]");
  }
  if (!(params.gamma > 0.0)) throw std::invalid_argument("aamr_step: gamma must be positive");
  const double lambda = detail::checked_lambda(params.options.lambda, n);
  std::vector<double> y(x.dim()), z(x.dim());
  Vector next(x.dim());
  aamr_step_into(a, b, params.beta, params.gamma, lambda, q.coords(), x.coords(), next.coords(), y, z);
  return next;
}

AamrResult aamr_solve(const MonotoneOperator& a, const MonotoneOperator& b, const IterationParams& params,
                      const Vector& q, const Vector& x0) {
  params.validate();
  check_pair(a, b, q, x0);

  const std::size_t d = x0.dim();
  const auto qs = q.coords();
  std::vector<double> x = x0.raw();
  std::vector<double> s(d), y(d), z(d);

  auto step = [&](std::size_t, double lambda, std::span<const double> cur, std::span<double> next) {
    return aamr_step_into(a, b, params.beta, params.gamma, lambda, qs, cur, next, y, z);
  };
  auto shadow = [&](std::span<const double> cur, std::span<double> out) {
    for (std::size_t i = 0; i < d; ++i) out[i] = qs[i] + cur[i];
    a.resolve_into(params.gamma, out, out);
  };

  RunTrace trace = detail::run_fixed_point(params.options, x, 1, s, step, shadow);
  return AamrResult{Vector(std::move(s)), Vector(std::move(x)), std::move(trace)};
}

AamrResult resolvent_of_sum(const MonotoneOperator& a, const MonotoneOperator& b, const Vector& q, double beta,
                            const SolveOptions& options, std::optional<Vector> x0) {
  IterationParams params{beta, 2.0 * (1.0 - beta), options};
  return aamr_solve(a, b, params, q, x0 ? *x0 : Vector::zeros(q.dim()));
}

AamrResult dr_solve(const MonotoneOperator& a, const MonotoneOperator& b, double gamma,
                    const SolveOptions& options, const Vector& x0) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("dr_solve: gamma must be positive");
  options.validate();
  require_same_dim(a.dim(), b.dim(), "operator pair");
  require_same_dim(a.dim(), x0.dim(), "starting point");

  const std::size_t d = x0.dim();
  std::vector<double> x = x0.raw();
  std::vector<double> s(d), y(d), z(d);

  auto step = [&](std::size_t, double lambda, std::span<const double> cur, std::span<double> next) {
    a.resolve_into(gamma, cur, y);
    for (std::size_t i = 0; i < d; ++i) y[i] = 2.0 * y[i] - cur[i];
    b.resolve_into(gamma, y, z);
    for (std::size_t i = 0; i < d; ++i) z[i] = 2.0 * z[i] - y[i];
    double sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      next[i] = (1.0 - lambda) * cur[i] + lambda * z[i];
      const double diff = next[i] - cur[i];
      sq += diff * diff;
    }
    return std::sqrt(sq);
  };
  auto shadow = [&](std::span<const double> cur, std::span<double> out) { a.resolve_into(gamma, cur, out); };

  RunTrace trace = detail::run_fixed_point(options, x, 1, s, step, shadow);
  return AamrResult{Vector(std::move(s)), Vector(std::move(x)), std::move(trace)};
}

AamrResult best_approx_pair(const ConvexSet& c1, const ConvexSet& c2, const Vector& q, double beta,
                            const SolveOptions& options, std::optional<Vector> x0) {
  IterationParams params{beta, 1.0, options};
  return aamr_solve(make_normal_cone(c1), make_normal_cone(c2), params, q, x0 ? *x0 : Vector::zeros(q.dim()));
}

Vector zeros_of_strengthened_sum_check(const MonotoneOperator& a, const MonotoneOperator& b, double beta,
                                       const SolveOptions& options) {
  IterationParams params{beta, 1.0, options};
  const Vector origin = Vector::zeros(a.dim());
  const AamrResult res = aamr_solve(a, b, params, origin, origin);
  return beta * res.shadow_limit;
}

}  // namespace aamr
