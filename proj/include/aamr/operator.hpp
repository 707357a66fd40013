#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aamr/sets.hpp"
#include "aamr/vector.hpp"

namespace aamr {

/// Evaluates the scaled resolvent (gamma, x) -> J_{gamma A}(x) of a maximally
/// monotone operator A.
///
/// Implementations must be pure and must tolerate `out` aliasing `x` exactly
/// (the same buffer). Partial overlap is never passed in.
class ResolventKernel {
 public:
  virtual ~ResolventKernel() = default;
  virtual void resolve(double gamma, std::span<const double> x, std::span<double> out) const = 0;
};

/// A maximally monotone operator on R^d, known only through its resolvent.
///
/// Maximal monotonicity is a contract of whoever builds the operator; it is
/// checked statistically in the test suite via firm nonexpansiveness of the
/// resolvent. Instances are immutable and cheap to copy, and may be evaluated
/// from many threads at once.
class MonotoneOperator {
 public:
  MonotoneOperator(std::shared_ptr<const ResolventKernel> kernel, std::size_t dim, std::string name);

  std::size_t dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }

  /// J_{gamma A}(x). Throws on dimension mismatch or gamma <= 0.
  Vector resolvent(double gamma, const Vector& x) const;

  /// Unchecked hot-path form of resolvent(); `out` may alias `x`.
  void resolve_into(double gamma, std::span<const double> x, std::span<double> out) const {
    kernel_->resolve(gamma, x, out);
  }

 private:
  std::shared_ptr<const ResolventKernel> kernel_;
  std::size_t dim_;
  std::string name_;
};

using ResolventFn = std::function<void(double gamma, std::span<const double> x, std::span<double> out)>;

/// Wraps an arbitrary resolvent map. `fn` must satisfy the ResolventKernel contract.
MonotoneOperator make_operator(std::size_t dim, std::string name, ResolventFn fn);

/// A = 0, so J_{gamma A} = Id.
MonotoneOperator make_zero_operator(std::size_t dim);

/// N_C for a closed ball C; the resolvent is P_C at every gamma.
MonotoneOperator make_ball_normal_cone(const Vector& center, double radius);

/// Normal cone of any projectable set.
MonotoneOperator make_normal_cone(const ConvexSet& set);

/// A(x) = x - c, the gradient of 0.5 |x - c|^2. J_{gamma A}(x) = (x + gamma c) / (1 + gamma).
MonotoneOperator make_quadratic_subdifferential(const Vector& center);

/// Subdifferential of weight * |x|_1; the resolvent soft-thresholds at gamma * weight.
MonotoneOperator make_l1_subdifferential(std::size_t dim, double weight);

/// N_V for the affine set V = offset + span(basis).
MonotoneOperator make_affine_subspace_normal_cone(const std::vector<Vector>& basis, const Vector& offset);

/// A_w(x) = A(x - w). J_{gamma A_w}(x) = J_{gamma A}(x - w) + w for every gamma.
MonotoneOperator inner_perturbation(const MonotoneOperator& a, const Vector& w);

/// A^(beta)(x) = (A + (1 - beta) Id)(x / beta), strongly monotone with modulus
/// (1 - beta) / beta. At unit scale J_{A^(beta)} = beta J_A exactly; at other
/// scales J_{g A^(beta)}(x) = beta J_{(g/s) A}(x / s) with s = beta + g (1 - beta).
MonotoneOperator beta_strengthening(const MonotoneOperator& a, double beta);

/// gamma A. J_{g (gamma A)} = J_{(g gamma) A}.
MonotoneOperator scale(const MonotoneOperator& a, double gamma);

/// A + mu (Id - center), strongly monotone with modulus mu.
/// J_{g(A + mu(Id - c))}(x) = J_{(g / t) A}((x + g mu c) / t) with t = 1 + g mu.
MonotoneOperator add_quadratic(const MonotoneOperator& a, double mu, const Vector& center);

/// Block operator on (R^d)^r acting as A_1(x_1) x ... x A_r(x_r), on
/// flattened vectors of length r * d (block i occupies [i d, (i + 1) d)).
MonotoneOperator product_operator(const std::vector<MonotoneOperator>& ops);

/// Normal cone to the diagonal {(x, ..., x)} of (R^d)^r; its resolvent
/// replaces every block with the block mean.
MonotoneOperator diagonal_normal_cone(std::size_t r, std::size_t d);

/// Modified reflected resolvent (2 beta J_{gamma A} - Id)(x), beta in (0, 1].
Vector reflected_step(const MonotoneOperator& a, double beta, double gamma, const Vector& x);

}  // namespace aamr
