#pragma once

// Ground-truth solvers used for verification and for TrueError stopping.
// Nothing here depends on the AAMR solvers.

#include <cstddef>
#include <vector>

#include "aamr/operator.hpp"
#include "aamr/sets.hpp"

namespace aamr {

enum class ReferenceMethod { Dykstra, ReferenceDR, Analytic };

struct ReferenceSolution {
  Vector point;
  ReferenceMethod method = ReferenceMethod::Analytic;
  /// Optimality certificate of `point`; see the producing function.
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Solutions whose certified residual is not below this are rejected.
inline constexpr double kOracleRejectThreshold = 1e-10;

/// P_{C_1 n ... n C_m}(q) by cyclic Dykstra with correction terms.
///
/// Stops once a full pass moves the point by less than `tol`. The residual is
/// max_i |P_i(x + p_i) - x| together with |q - x - sum_i p_i|, where p_i are
/// the corrections; it vanishes exactly at the projection. When `tol` is below
/// kOracleRejectThreshold, passes continue until the residual is below the
/// threshold too. Throws MaxIterExceeded when `max_iter` passes are not enough
/// and OracleRejected when a loose `tol` stops with a residual at or above the
/// threshold. The intersection is assumed nonempty.
ReferenceSolution dykstra_project(const std::vector<ConvexSet>& sets, const Vector& q, double tol = 1e-12,
                                  std::size_t max_iter = 1000000);

/// J_{A + B}(q), the unique zero of (A + (Id - q)/2) + (B + (Id - q)/2), by a
/// plain Douglas-Rachford loop with gamma = 1 and lambda = 1/2.
///
/// The residual is |a - b| with a = J_{A'}(x), b = J_{B'}(2a - x) at the last
/// iterate, which is zero exactly at a fixed point. Same error behaviour as
/// dykstra_project.
ReferenceSolution reference_resolvent_of_sum(const MonotoneOperator& a, const MonotoneOperator& b, const Vector& q,
                                             double tol = 1e-12, std::size_t max_iter = 1000000);

}  // namespace aamr
