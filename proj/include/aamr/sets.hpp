#pragma once

#include <span>
#include <variant>
#include <vector>

#include "aamr/vector.hpp"

namespace aamr {

/// Closed Euclidean ball {x : |x - center| <= radius}.
class Ball {
 public:
  Ball(Vector center, double radius);

  std::size_t dim() const noexcept { return center_.dim(); }
  const Vector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  /// Points at distance exactly `radius` are returned unchanged.
  void project_into(std::span<const double> x, std::span<double> out) const noexcept;
  Vector project(const Vector& x) const;
  bool contains(const Vector& x, double slack = 0.0) const;

 private:
  Vector center_;
  double radius_;
};

/// offset + span(basis). The basis is orthonormalised on construction
/// (modified Gram-Schmidt); a linearly dependent basis is rejected.
class AffineSubspace {
 public:
  AffineSubspace(const std::vector<Vector>& basis, Vector offset);

  std::size_t dim() const noexcept { return offset_.dim(); }
  std::size_t rank() const noexcept { return orthonormal_.size(); }
  const Vector& offset() const noexcept { return offset_; }

  void project_into(std::span<const double> x, std::span<double> out) const;
  Vector project(const Vector& x) const;

 private:
  std::vector<Vector> orthonormal_;
  Vector offset_;
};

/// The closed convex sets the library can project onto in closed form.
class ConvexSet {
 public:
  ConvexSet(Ball ball) : shape_(std::move(ball)) {}  // NOLINT(google-explicit-constructor)
  ConvexSet(AffineSubspace sub) : shape_(std::move(sub)) {}  // NOLINT(google-explicit-constructor)

  std::size_t dim() const noexcept;
  void project_into(std::span<const double> x, std::span<double> out) const;
  Vector project(const Vector& x) const;
  double distance_to(const Vector& x) const;

  const std::variant<Ball, AffineSubspace>& shape() const noexcept { return shape_; }

 private:
  std::variant<Ball, AffineSubspace> shape_;
};

}  // namespace aamr
