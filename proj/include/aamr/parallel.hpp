#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aamr/iteration.hpp"
#include "aamr/operator.hpp"

namespace aamr {

/// A point (x_1, ..., x_r) of the product space (R^d)^r, stored contiguously.
class Block {
 public:
  Block() = default;
  Block(std::size_t r, std::size_t d, double fill = 0.0);
  explicit Block(const std::vector<Vector>& blocks);

  static Block replicate(const Vector& v, std::size_t r);
  static Block from_flat(const Vector& flat, std::size_t r);

  std::size_t count() const noexcept { return r_; }
  std::size_t dim() const noexcept { return d_; }

  std::span<const double> block(std::size_t i) const noexcept { return {data_.data() + i * d_, d_}; }
  std::span<double> block(std::size_t i) noexcept { return {data_.data() + i * d_, d_}; }
  Vector block_vector(std::size_t i) const { return Vector(block(i)); }
  std::vector<Vector> blocks() const;

  std::span<const double> flat() const noexcept { return data_; }
  std::span<double> flat() noexcept { return data_; }
  Vector flatten() const { return Vector(std::span<const double>(data_)); }

  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::size_t r_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

enum class Variant { Original, Alternative };

/// How the r per-block resolvent evaluations of one iteration are dispatched.
/// Both produce bit-identical iterates: the block mean is always reduced
/// serially in ascending block order.
enum class Execution { Serial, OpenMP };

const char* to_string(Variant v) noexcept;

/// Componentwise mean (1/r) sum_i x_i, i.e. the diagonal projection read back in R^d.
Vector diagonal_project(const Block& x);

/// (J_{gamma A_1}(x_1), ..., J_{gamma A_r}(x_r)).
Block product_resolvent(const std::vector<MonotoneOperator>& ops, double gamma, const Block& x);

struct ParallelResult {
  Vector shadow_limit;
  Block block_limit;
  RunTrace trace;
  /// |q + (1/r) sum x_i - shadow| (original) or |q + (1/(beta r)) sum x_i - shadow|
  /// (alternative), evaluated at the final iterate.
  double sum_identity_gap = 0.0;
};

/// One iteration of either block scheme, with p_n the block mean of x:
///   original:    x_i+ = (1 - lambda) x_i + lambda (2 beta J_{gamma (A_i)_{-q}} - Id)(2 beta p_n - x_i)
///   alternative: x_i+ = (1 - lambda) x_i + lambda (2 beta J_{gamma (A_i)_{-q}} - Id)(2 p_n - x_i)
Block parallel_step(const std::vector<MonotoneOperator>& ops, Variant variant, const IterationParams& params,
                    const Vector& q, const Block& x, std::size_t n, Execution exec = Execution::Serial);

/// Parallel AAMR. The shadow q + p_n converges to
/// J_{gamma / (2 r (1 - beta)) sum A_i}(q) when q lies in the range of
/// Id + gamma / (2 r (1 - beta)) sum A_i (caller obligation).
ParallelResult parallel_aamr_solve(const std::vector<MonotoneOperator>& ops, const IterationParams& params,
                                   const Vector& q, const Block& x0, Execution exec = Execution::OpenMP);

/// Alternative parallel scheme. The shadow q + p_n / beta converges to
/// J_{gamma / (r (1 - beta)) sum A_i}(q).
ParallelResult parallel_aamr_alt_solve(const std::vector<MonotoneOperator>& ops, const IterationParams& params,
                                       const Vector& q, const Block& x0, Execution exec = Execution::OpenMP);

/// gamma making the variant's limit J_{sum A_i}(q): 2 r (1 - beta) or r (1 - beta).
double default_gamma(Variant variant, std::size_t r, double beta);

/// J_{sum A_i}(q) with the variant's default gamma. x0 defaults to all-zero blocks.
ParallelResult parallel_resolvent_of_sum(const std::vector<MonotoneOperator>& ops, const Vector& q,
                                         Variant variant, double beta, const SolveOptions& options = {},
                                         std::optional<Block> x0 = std::nullopt,
                                         Execution exec = Execution::OpenMP);

struct DiagonalSumRoutes {
  /// parallel_aamr_solve at gamma = 2 (1 - beta): limit J_{(1/r) sum A_i}(q).
  Vector parallel_route;
  /// Douglas-Rachford on the product-space pair (B + (Id - j(q))/2, N_D + (Id - j(q))/2),
  /// whose unique zero is J_{B + N_D}(j(q)) = j(J_{(1/r) sum A_i}(q)); block mean of the shadow.
  Vector product_dr_route;
};

/// J_{(1/r) sum A_i}(q) computed two independent ways.
DiagonalSumRoutes diagonal_sum_resolvent_routes(const std::vector<MonotoneOperator>& ops, const Vector& q,
                                                const SolveOptions& options, double beta = 0.5);

/// parallel_route of diagonal_sum_resolvent_routes.
Vector diagonal_sum_resolvent_check(const std::vector<MonotoneOperator>& ops, const Vector& q,
                                    const SolveOptions& options);

/// The zero of sum_i A_i^(beta), as beta J_{(1/(r (1 - beta))) sum A_i}(0)
/// via the alternative scheme at gamma = 1, q = 0.
Vector zeros_of_strengthened_family_check(const std::vector<MonotoneOperator>& ops, double beta,
                                          const SolveOptions& options);

}  // namespace aamr
