#include "aamr/parallel.hpp"

#include <stdexcept>

#include "aamr/splitting.hpp"
#include "fixed_point.hpp"
#include "parallel_kernels.hpp"

namespace aamr {

Block::Block(std::size_t r, std::size_t d, double fill) : r_(r), d_(d), data_(r * d, fill) {
  if (r == 0 || d == 0) throw std::invalid_argument("Block: r and d must be positive");
}

Block::Block(const std::vector<Vector>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("Block: need at least one block");
  r_ = blocks.size();
  d_ = blocks.front().dim();
  if (d_ == 0) throw std::invalid_argument("Block: blocks must have positive dimension");
  data_.reserve(r_ * d_);
  for (const Vector& b : blocks) {
    require_same_dim(d_, b.dim(), "Block");
    data_.insert(data_.end(), b.raw().begin(), b.raw().end());
  }
}

Block Block::replicate(const Vector& v, std::size_t r) { return Block(std::vector<Vector>(r, v)); }

Block Block::from_flat(const Vector& flat, std::size_t r) {
  if (r == 0 || flat.dim() % r != 0) throw DimensionMismatch("Block::from_flat: length not divisible by r");
  Block b(r, flat.dim() / r);
  std::copy(flat.raw().begin(), flat.raw().end(), b.data_.begin());
  return b;
}

std::vector<Vector> Block::blocks() const {
  std::vector<Vector> out;
  out.reserve(r_);
  for (std::size_t i = 0; i < r_; ++i) out.push_back(block_vector(i));
  return out;
}

const char* to_string(Variant v) noexcept {
  return v == Variant::Original ? "Original" : "Alternative";
}

Vector diagonal_project(const Block& x) {
  Vector mean(x.dim());
  detail::block_mean(x.flat(), x.count(), mean.coords());
  return mean;
}

Block product_resolvent(const std::vector<MonotoneOperator>& ops, double gamma, const Block& x) {
  if (ops.size() != x.count()) throw DimensionMismatch("product_resolvent: operator count != block count");
  if (!(gamma > 0.0)) throw std::invalid_argument("product_resolvent: gamma must be positive");
  Block out(x.count(), x.dim());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    require_same_dim(ops[i].dim(), x.dim(), "product_resolvent");
    ops[i].resolve_into(gamma, x.block(i), out.block(i));
  }
  return out;
}

namespace {

void check_family(const std::vector<MonotoneOperator>& ops, const Vector& q, const Block& x0) {
  if (ops.empty()) throw std::invalid_argument("block scheme: need at least one operator");
  if (ops.size() != x0.count()) throw DimensionMismatch("block scheme: operator count != block count");
  for (const auto& op : ops) require_same_dim(q.dim(), op.dim(), "block scheme operator");
  require_same_dim(q.dim(), x0.dim(), "block scheme starting point");
}

double mean_factor(Variant variant, double beta) { return variant == Variant::Original ? 2.0 * beta : 2.0; }

// Shadow of a block state: q + p (original) or q + p / beta (alternative).
void block_shadow(Variant variant, double beta, std::span<const double> q, std::span<const double> x,
                  std::size_t r, std::span<double> out) {
  detail::block_mean(x, r, out);
  for (std::size_t k = 0; k < q.size(); ++k) {
    out[k] = variant == Variant::Original ? q[k] + out[k] : q[k] + out[k] / beta;
  }
}

class BlockStepper {
 public:
  BlockStepper(const std::vector<MonotoneOperator>& ops, Variant variant, double beta, double gamma,
               std::span<const double> q, Execution exec)
      : ops_(ops),
        variant_(variant),
        beta_(beta),
        gamma_(gamma),
        q_(q),
        exec_(exec),
        mean_(q.size()),
        scratch_(ops.size() * q.size()),
        norms_(ops.size()) {}

  double operator()(double lambda, std::span<const double> x, std::span<double> next) {
    detail::block_mean(x, ops_.size(), mean_);
    detail::BlockStepArgs args;
    args.ops = &ops_;
    args.beta = beta_;
    args.gamma = gamma_;
    args.lambda = lambda;
    args.mean_factor = mean_factor(variant_, beta_);
    args.q = q_;
    args.x = x;
    args.mean = mean_;
    args.next = next;
    args.scratch = scratch_;
    args.step_norms = norms_;
    return exec_ == Execution::OpenMP ? detail::block_step_omp(args) : detail::block_step_serial(args);
  }

 private:
  const std::vector<MonotoneOperator>& ops_;
  Variant variant_;
  double beta_;
  double gamma_;
  std::span<const double> q_;
  Execution exec_;
  std::vector<double> mean_;
  std::vector<double> scratch_;
  std::vector<double> norms_;
};

ParallelResult solve_blocks(const std::vector<MonotoneOperator>& ops, Variant variant,
                            const IterationParams& params, const Vector& q, const Block& x0, Execution exec) {
  params.validate();
  check_family(ops, q, x0);

  const std::size_t r = ops.size();
  const std::size_t d = q.dim();
  std::vector<double> x(x0.flat().begin(), x0.flat().end());
  std::vector<double> s(d);
  BlockStepper stepper(ops, variant, params.beta, params.gamma, q.coords(), exec);

  auto step = [&](std::size_t, double lambda, std::span<const double> cur, std::span<double> next) {
    return stepper(lambda, cur, next);
  };
  auto shadow = [&](std::span<const double> cur, std::span<double> out) {
    block_shadow(variant, params.beta, q.coords(), cur, r, out);
  };

  RunTrace trace = detail::run_fixed_point(params.options, x, r, s, step, shadow);

  ParallelResult res;
  res.shadow_limit = Vector(std::move(s));
  res.block_limit = Block::from_flat(Vector(std::move(x)), r);
  res.trace = std::move(trace);

  const Vector mean = diagonal_project(res.block_limit);
  const Vector decomposed = variant == Variant::Original ? q + mean : q + mean / params.beta;
  res.sum_identity_gap = distance(decomposed, res.shadow_limit);
  return res;
}

}  // namespace

Block parallel_step(const std::vector<MonotoneOperator>& ops, Variant variant, const IterationParams& params,
                    const Vector& q, const Block& x, std::size_t n, Execution exec) {
  check_family(ops, q, x);
  if (!(params.beta > 0.0 && params.beta <= 1.0)) throw std::invalid_argument("parallel_step: beta must lie in (0, 1]");
  const double lambda = detail::checked_lambda(params.options.lambda, n);
  BlockStepper stepper(ops, variant, params.beta, params.gamma, q.coords(), exec);
  Block next(x.count(), x.dim());
  stepper(lambda, x.flat(), next.flat());
  return next;
}

ParallelResult parallel_aamr_solve(const std::vector<MonotoneOperator>& ops, const IterationParams& params,
                                   const Vector& q, const Block& x0, Execution exec) {
  return solve_blocks(ops, Variant::Original, params, q, x0, exec);
}

ParallelResult parallel_aamr_alt_solve(const std::vector<MonotoneOperator>& ops, const IterationParams& params,
                                       const Vector& q, const Block& x0, Execution exec) {
  return solve_blocks(ops, Variant::Alternative, params, q, x0, exec);
}

double default_gamma(Variant variant, std::size_t r, double beta) {
  const double base = static_cast<double>(r) * (1.0 - beta);
  return variant == Variant::Original ? 2.0 * base : base;
}

ParallelResult parallel_resolvent_of_sum(const std::vector<MonotoneOperator>& ops, const Vector& q,
                                         Variant variant, double beta, const SolveOptions& options,
                                         std::optional<Block> x0, Execution exec) {
  IterationParams params{beta, default_gamma(variant, ops.size(), beta), options};
  const Block start = x0 ? *x0 : Block(ops.size(), q.dim());
  return solve_blocks(ops, variant, params, q, start, exec);
}

DiagonalSumRoutes diagonal_sum_resolvent_routes(const std::vector<MonotoneOperator>& ops, const Vector& q,
                                                const SolveOptions& options, double beta) {
  const std::size_t r = ops.size();
  IterationParams params{beta, 2.0 * (1.0 - beta), options};
  const ParallelResult par = solve_blocks(ops, Variant::Original, params, q, Block(r, q.dim()), Execution::Serial);

  const Vector jq = Block::replicate(q, r).flatten();
  const MonotoneOperator product = add_quadratic(product_operator(ops), 0.5, jq);
  const MonotoneOperator diagonal = add_quadratic(diagonal_normal_cone(r, q.dim()), 0.5, jq);
  const AamrResult dr = dr_solve(diagonal, product, 1.0, options, Vector::zeros(r * q.dim()));

  return {par.shadow_limit, diagonal_project(Block::from_flat(dr.shadow_limit, r))};
}

Vector diagonal_sum_resolvent_check(const std::vector<MonotoneOperator>& ops, const Vector& q,
                                    const SolveOptions& options) {
  return diagonal_sum_resolvent_routes(ops, q, options).parallel_route;
}

Vector zeros_of_strengthened_family_check(const std::vector<MonotoneOperator>& ops, double beta,
                                          const SolveOptions& options) {
  if (ops.empty()) throw std::invalid_argument("zeros_of_strengthened_family_check: no operators");
  IterationParams params{beta, 1.0, options};
  const Vector origin = Vector::zeros(ops.front().dim());
  const ParallelResult res =
      solve_blocks(ops, Variant::Alternative, params, origin, Block(ops.size(), origin.dim()), Execution::Serial);
  return beta * res.shadow_limit;
}

}  // namespace aamr
