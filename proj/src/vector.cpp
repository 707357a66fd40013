#include "aamr/vector.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace aamr {

namespace {

void require_finite(std::span<const double> coords) {
  if (!all_finite(coords)) {
    throw std::invalid_argument("Vector: coordinates must be finite");
  }
}

}  // namespace

Vector::Vector(std::size_t dim, double fill) : data_(dim, fill) {
  require_finite(data_);
}

Vector::Vector(std::initializer_list<double> coords) : data_(coords) {
  require_finite(data_);
}

Vector::Vector(std::vector<double> coords) : data_(std::move(coords)) {
  require_finite(data_);
}

Vector::Vector(std::span<const double> coords) : data_(coords.begin(), coords.end()) {
  require_finite(data_);
}

bool Vector::all_finite() const noexcept { return aamr::all_finite(data_); }

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "Vector::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "Vector::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Vector& Vector::operator/=(double s) noexcept {
  for (double& v : data_) v /= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }
Vector operator/(Vector a, double s) { return a /= s; }

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "dot");
  return dot(a.coords(), b.coords());
}

double norm(const Vector& a) { return norm(a.coords()); }

double distance(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "distance");
  return distance(a.coords(), b.coords());
}

double max_abs_diff(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void require_same_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                            std::to_string(expected) + " vs " + std::to_string(actual) + ")");
  }
}

std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  return os << ')';
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

double distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool all_finite(std::span<const double> a) noexcept {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace aamr
