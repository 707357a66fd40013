#include "aamr/sets.hpp"

#include <cmath>
#include <stdexcept>

namespace aamr {

Ball::Ball(Vector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("Ball: radius must be positive and finite");
  }
  if (center_.empty()) throw std::invalid_argument("Ball: center must have positive dimension");
}

void Ball::project_into(std::span<const double> x, std::span<double> out) const noexcept {
  const auto c = center_.coords();
  const double dist = distance(x, c);
  if (dist <= radius_) {
    if (out.data() != x.data()) {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    }
    return;
  }
  const double s = radius_ / dist;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = c[i] + s * (x[i] - c[i]);
}

Vector Ball::project(const Vector& x) const {
  require_same_dim(dim(), x.dim(), "Ball::project");
  Vector out(x.dim());
  project_into(x.coords(), out.coords());
  return out;
}

bool Ball::contains(const Vector& x, double slack) const {
  return distance(x, center_) <= radius_ + slack;
}

AffineSubspace::AffineSubspace(const std::vector<Vector>& basis, Vector offset)
    : offset_(std::move(offset)) {
  if (offset_.empty()) throw std::invalid_argument("AffineSubspace: offset must have positive dimension");
  for (const Vector& b : basis) {
    require_same_dim(offset_.dim(), b.dim(), "AffineSubspace basis");
    const double original = norm(b);
    Vector v = b;
    for (const Vector& u : orthonormal_) v -= dot(u, v) * u;
    const double n = norm(v);
    if (!(original > 0.0) || n <= 1e-12 * original) {
      throw std::invalid_argument("AffineSubspace: rank-deficient basis");
    }
    orthonormal_.push_back(v / n);
  }
}

void AffineSubspace::project_into(std::span<const double> x, std::span<double> out) const {
  const auto o = offset_.coords();
  std::vector<double> coef(orthonormal_.size());
  for (std::size_t k = 0; k < orthonormal_.size(); ++k) {
    const auto u = orthonormal_[k].coords();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += u[i] * (x[i] - o[i]);
    coef[k] = s;
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = o[i];
  for (std::size_t k = 0; k < orthonormal_.size(); ++k) {
    const auto u = orthonormal_[k].coords();
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += coef[k] * u[i];
  }
}

Vector AffineSubspace::project(const Vector& x) const {
  require_same_dim(dim(), x.dim(), "AffineSubspace::project");
  Vector out(x.dim());
  project_into(x.coords(), out.coords());
  return out;
}

std::size_t ConvexSet::dim() const noexcept {
  return std::visit([](const auto& s) { return s.dim(); }, shape_);
}

void ConvexSet::project_into(std::span<const double> x, std::span<double> out) const {
  std::visit([&](const auto& s) { s.project_into(x, out); }, shape_);
}

Vector ConvexSet::project(const Vector& x) const {
  return std::visit([&](const auto& s) { return s.project(x); }, shape_);
}

double ConvexSet::distance_to(const Vector& x) const { return distance(project(x), x); }

}  // namespace aamr
