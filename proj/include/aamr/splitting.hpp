#pragma once

#include <optional>

#include "aamr/iteration.hpp"
#include "aamr/operator.hpp"
#include "aamr/sets.hpp"

namespace aamr {

/// One relaxed AAMR step for the resolvent of A + B at q:
///
///   x+ = (1 - lambda_n) x + lambda_n (2 beta J_{gamma B_{-q}} - Id)(2 beta J_{gamma A_{-q}} - Id)(x)
///
/// with J_{gamma A_{-q}}(y) = J_{gamma A}(y + q) - q. `beta` may be 1 here, in
/// which case the step is a Douglas-Rachford step on the translated operators.
Vector aamr_step(const MonotoneOperator& a, const MonotoneOperator& b, const IterationParams& params,
                 const Vector& q, const Vector& x, std::size_t n);

/// Iterates aamr_step from x0. The shadow sequence J_{gamma A}(q + x_n)
/// converges to J_{gamma / (2 (1 - beta)) (A + B)}(q), provided q lies in
/// ran(Id + gamma / (2 (1 - beta)) (A + B)). That range condition cannot be
/// checked for black-box operators; when it fails the run simply reports
/// converged = false.
///
/// Throws NumericalBreakdown on a non-finite iterate.
AamrResult aamr_solve(const MonotoneOperator& a, const MonotoneOperator& b, const IterationParams& params,
                      const Vector& q, const Vector& x0);

/// J_{A + B}(q): aamr_solve with gamma = 2 (1 - beta). x0 defaults to 0.
AamrResult resolvent_of_sum(const MonotoneOperator& a, const MonotoneOperator& b, const Vector& q, double beta,
                            const SolveOptions& options = {}, std::optional<Vector> x0 = std::nullopt);

/// Douglas-Rachford: x+ = (1 - lambda_n) x + lambda_n R_{gamma B} R_{gamma A}(x).
/// The shadow J_{gamma A}(x_n) approaches a zero of A + B (assumed to exist).
AamrResult dr_solve(const MonotoneOperator& a, const MonotoneOperator& b, double gamma,
                    const SolveOptions& options, const Vector& x0);

/// P_{C1 n C2}(q) by AAMR on the two normal cones with gamma = 1. The shadow
/// is P_{C1}(q + x_n). Requires q - P(q) in (N_C1 + N_C2)(P(q)), which holds
/// e.g. when the sets have a common interior point.
AamrResult best_approx_pair(const ConvexSet& c1, const ConvexSet& c2, const Vector& q, double beta,
                            const SolveOptions& options = {}, std::optional<Vector> x0 = std::nullopt);

/// The unique zero of A^(beta) + B^(beta), computed as
/// beta J_{(A + B) / (2 (1 - beta))}(0) through aamr_solve at gamma = 1, q = 0.
/// Requires 0 in ran(Id + (A + B) / (2 (1 - beta))).
Vector zeros_of_strengthened_sum_check(const MonotoneOperator& a, const MonotoneOperator& b, double beta,
                                       const SolveOptions& options);

}  // namespace aamr
