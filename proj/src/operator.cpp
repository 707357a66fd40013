#include "aamr/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aamr {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void copy_if_needed(std::span<const double> x, std::span<double> out) noexcept {
  if (out.data() != x.data()) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
  }
}

class FunctionKernel final : public ResolventKernel {
 public:
  explicit FunctionKernel(ResolventFn fn) : fn_(std::move(fn)) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    fn_(gamma, x, out);
  }

 private:
  ResolventFn fn_;
};

class IdentityKernel final : public ResolventKernel {
 public:
  void resolve(double, std::span<const double> x, std::span<double> out) const override {
    copy_if_needed(x, out);
  }
};

// Normal cones are cones, so gamma never enters.
class ProjectionKernel final : public ResolventKernel {
 public:
  explicit ProjectionKernel(ConvexSet set) : set_(std::move(set)) {}
  void resolve(double, std::span<const double> x, std::span<double> out) const override {
    set_.project_into(x, out);
  }

 private:
  ConvexSet set_;
};

class QuadraticKernel final : public ResolventKernel {
 public:
  explicit QuadraticKernel(Vector center) : center_(std::move(center)) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    const auto c = center_.coords();
    const double denom = 1.0 + gamma;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + gamma * c[i]) / denom;
  }

 private:
  Vector center_;
};

class SoftThresholdKernel final : public ResolventKernel {
 public:
  explicit SoftThresholdKernel(double weight) : weight_(weight) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    const double t = gamma * weight_;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = x[i];
      if (v > t) {
        out[i] = v - t;
      } else if (v < -t) {
        out[i] = v + t;
      } else {
        out[i] = 0.0;
      }
    }
  }

 private:
  double weight_;
};

class PerturbationKernel final : public ResolventKernel {
 public:
  PerturbationKernel(MonotoneOperator inner, Vector shift) : inner_(std::move(inner)), shift_(std::move(shift)) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    const auto w = shift_.coords();
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - w[i];
    inner_.resolve_into(gamma, out, out);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += w[i];
  }

 private:
  MonotoneOperator inner_;
  Vector shift_;
};

class StrengtheningKernel final : public ResolventKernel {
 public:
  StrengtheningKernel(MonotoneOperator inner, double beta) : inner_(std::move(inner)), beta_(beta) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    if (gamma == 1.0) {
      inner_.resolve_into(1.0, x, out);
    } else {
      const double s = beta_ + gamma * (1.0 - beta_);
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / s;
      inner_.resolve_into(gamma / s, out, out);
    }
    for (std::size_t i = 0; i < x.size(); ++i) out[i] *= beta_;
  }

 private:
  MonotoneOperator inner_;
  double beta_;
};

class ScaledKernel final : public ResolventKernel {
 public:
  ScaledKernel(MonotoneOperator inner, double factor) : inner_(std::move(inner)), factor_(factor) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    inner_.resolve_into(gamma * factor_, x, out);
  }

 private:
  MonotoneOperator inner_;
  double factor_;
};

class QuadraticShiftKernel final : public ResolventKernel {
 public:
  QuadraticShiftKernel(MonotoneOperator inner, double mu, Vector center)
      : inner_(std::move(inner)), mu_(mu), center_(std::move(center)) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    const auto c = center_.coords();
    const double gm = gamma * mu_;
    const double t = 1.0 + gm;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + gm * c[i]) / t;
    inner_.resolve_into(gamma / t, out, out);
  }

 private:
  MonotoneOperator inner_;
  double mu_;
  Vector center_;
};

class ProductKernel final : public ResolventKernel {
 public:
  explicit ProductKernel(std::vector<MonotoneOperator> ops) : ops_(std::move(ops)), d_(ops_.front().dim()) {}
  void resolve(double gamma, std::span<const double> x, std::span<double> out) const override {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      ops_[i].resolve_into(gamma, x.subspan(i * d_, d_), out.subspan(i * d_, d_));
    }
  }

 private:
  std::vector<MonotoneOperator> ops_;
  std::size_t d_;
};

class DiagonalKernel final : public ResolventKernel {
 public:
  DiagonalKernel(std::size_t r, std::size_t d) : r_(r), d_(d) {}
  void resolve(double, std::span<const double> x, std::span<double> out) const override {
    std::vector<double> mean(d_, 0.0);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t k = 0; k < d_; ++k) mean[k] += x[i * d_ + k];
    }
    for (double& m : mean) m /= static_cast<double>(r_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t k = 0; k < d_; ++k) out[i * d_ + k] = mean[k];
    }
  }

 private:
  std::size_t r_;
  std::size_t d_;
};

}  // namespace

MonotoneOperator::MonotoneOperator(std::shared_ptr<const ResolventKernel> kernel, std::size_t dim, std::string name)
    : kernel_(std::move(kernel)), dim_(dim), name_(std::move(name)) {
  if (!kernel_) throw std::invalid_argument("MonotoneOperator: null kernel");
  if (dim_ == 0) throw std::invalid_argument("MonotoneOperator: dimension must be positive");
}

Vector MonotoneOperator::resolvent(double gamma, const Vector& x) const {
  require_positive(gamma, "resolvent gamma");
  require_same_dim(dim_, x.dim(), name_.c_str());
  Vector out(x.dim());
  kernel_->resolve(gamma, x.coords(), out.coords());
  return out;
}

MonotoneOperator make_operator(std::size_t dim, std::string name, ResolventFn fn) {
  if (!fn) throw std::invalid_argument("make_operator: empty resolvent function");
  return {std::make_shared<FunctionKernel>(std::move(fn)), dim, std::move(name)};
}

MonotoneOperator make_zero_operator(std::size_t dim) {
  return {std::make_shared<IdentityKernel>(), dim, "zero"};
}

MonotoneOperator make_ball_normal_cone(const Vector& center, double radius) {
  return make_normal_cone(Ball(center, radius));
}

MonotoneOperator make_normal_cone(const ConvexSet& set) {
  const bool ball = std::holds_alternative<Ball>(set.shape());
  return {std::make_shared<ProjectionKernel>(set), set.dim(), ball ? "N_ball" : "N_affine"};
}

MonotoneOperator make_quadratic_subdifferential(const Vector& center) {
  if (center.empty()) throw std::invalid_argument("make_quadratic_subdifferential: empty center");
  return {std::make_shared<QuadraticKernel>(center), center.dim(), "quadratic"};
}

MonotoneOperator make_l1_subdifferential(std::size_t dim, double weight) {
  require_positive(weight, "l1 weight");
  return {std::make_shared<SoftThresholdKernel>(weight), dim, "l1"};
}

MonotoneOperator make_affine_subspace_normal_cone(const std::vector<Vector>& basis, const Vector& offset) {
  return make_normal_cone(AffineSubspace(basis, offset));
}

MonotoneOperator inner_perturbation(const MonotoneOperator& a, const Vector& w) {
  require_same_dim(a.dim(), w.dim(), "inner_perturbation");
  return {std::make_shared<PerturbationKernel>(a, w), a.dim(), a.name() + "_w"};
}

MonotoneOperator beta_strengthening(const MonotoneOperator& a, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta_strengthening: beta must lie in (0, 1)");
  }
  return {std::make_shared<StrengtheningKernel>(a, beta), a.dim(), a.name() + "^(beta)"};
}

MonotoneOperator scale(const MonotoneOperator& a, double gamma) {
  require_positive(gamma, "scale gamma");
  return {std::make_shared<ScaledKernel>(a, gamma), a.dim(), "gamma*" + a.name()};
}

MonotoneOperator add_quadratic(const MonotoneOperator& a, double mu, const Vector& center) {
  require_positive(mu, "add_quadratic mu");
  require_same_dim(a.dim(), center.dim(), "add_quadratic");
  return {std::make_shared<QuadraticShiftKernel>(a, mu, center), a.dim(), a.name() + "+mu(Id-c)"};
}

MonotoneOperator product_operator(const std::vector<MonotoneOperator>& ops) {
  if (ops.empty()) throw std::invalid_argument("product_operator: need at least one operator");
  const std::size_t d = ops.front().dim();
  for (const auto& op : ops) require_same_dim(d, op.dim(), "product_operator");
  return {std::make_shared<ProductKernel>(ops), ops.size() * d, "product"};
}

MonotoneOperator diagonal_normal_cone(std::size_t r, std::size_t d) {
  if (r == 0 || d == 0) throw std::invalid_argument("diagonal_normal_cone: r and d must be positive");
  return {std::make_shared<DiagonalKernel>(r, d), r * d, "N_D"};
}

Vector reflected_step(const MonotoneOperator& a, double beta, double gamma, const Vector& x) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("reflected_step: beta must lie in (0, 1]");
  }
  Vector out = a.resolvent(gamma, x);
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] = 2.0 * beta * out[i] - x[i];
  return out;
}

}  // namespace aamr
