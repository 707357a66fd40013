#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "aamr/errors.hpp"

namespace aamr {

/// A point of R^d. Coordinates supplied by callers must be finite; the
/// arithmetic operators check dimensions and throw DimensionMismatch.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> coords);
  explicit Vector(std::vector<double> coords);
  explicit Vector(std::span<const double> coords);

  static Vector zeros(std::size_t dim) { return Vector(dim); }

  std::size_t dim() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }

  std::span<const double> coords() const noexcept { return data_; }
  std::span<double> coords() noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  bool all_finite() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s) noexcept;
  Vector& operator/=(double s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);
Vector operator/(Vector a, double s);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double distance(const Vector& a, const Vector& b);
double max_abs_diff(const Vector& a, const Vector& b);

void require_same_dim(std::size_t expected, std::size_t actual, const char* what);

std::ostream& operator<<(std::ostream& os, const Vector& v);

// Span kernels used by the solvers. Callers guarantee equal lengths.
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm(std::span<const double> a) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;
bool all_finite(std::span<const double> a) noexcept;

}  // namespace aamr
