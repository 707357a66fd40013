#include <gtest/gtest.h>

#include <omp.h>

#include <algorithm>
#include <numeric>

#include "aamr/experiment.hpp"
#include "aamr/parallel.hpp"
#include "aamr/splitting.hpp"
#include "test_support.hpp"

namespace aamr {
namespace {

using testing::Gen;

IterationParams params_with(double beta, double gamma, double lambda) {
  IterationParams p;
  p.beta = beta;
  p.gamma = gamma;
  p.options.lambda = constant_relaxation(lambda);
  return p;
}

Block random_block(Gen& g, std::size_t r, std::size_t d) {
  std::vector<Vector> blocks;
  for (std::size_t i = 0; i < r; ++i) blocks.push_back(g.vec(d));
  return Block(blocks);
}

std::vector<MonotoneOperator> random_family(Gen& g, std::size_t r, std::size_t d) {
  const auto pool = testing::concrete_operators(g, d);
  std::vector<MonotoneOperator> ops;
  for (std::size_t i = 0; i < r; ++i) ops.push_back(pool[g.index(pool.size())]);
  return ops;
}

const MonotoneOperator kUnitCone = make_ball_normal_cone(Vector{0.0, 0.0}, 1.0);
const MonotoneOperator kId = make_quadratic_subdifferential(Vector{0.0, 0.0});

TEST(DiagonalProject, Examples) {
  EXPECT_EQ(diagonal_project(Block({Vector{1.0, 0.0}, Vector{3.0, 0.0}})), (Vector{2.0, 0.0}));
  EXPECT_EQ(diagonal_project(Block::replicate(Vector{0.3, -1.7}, 3)), (Vector{0.3, -1.7}));
  EXPECT_EQ(diagonal_project(Block({Vector{1.0, 1.0}, Vector{-1.0, -1.0}})), (Vector{0.0, 0.0}));
}

TEST(ProductResolvent, Examples) {
  Gen g(1);
  const auto a = make_ball_normal_cone(g.vec(3), 1.0);
  const Vector x = g.vec(3);
  EXPECT_EQ(product_resolvent({a}, 2.0, Block({x})).block_vector(0), a.resolvent(2.0, x));
  EXPECT_EQ(product_resolvent({kId, kId}, 1.0, Block({Vector{2.0, 0.0}, Vector{4.0, 0.0}})),
            Block({Vector{1.0, 0.0}, Vector{2.0, 0.0}}));
  EXPECT_VEC_NEAR(product_resolvent({kUnitCone, make_zero_operator(2)}, 1.0, Block({Vector{3.0, 0.0}, Vector{3.0, 0.0}}))
                      .flatten(),
                  (Vector{1.0, 0.0, 3.0, 0.0}), 1e-15);
}

TEST(ParallelAamr, IdenticalConesGiveBallProjection) {
  const double beta = 0.6;
  const ParallelResult r = parallel_aamr_solve({kUnitCone, kUnitCone}, params_with(beta, 4.0 * (1.0 - beta), 0.9),
                                               Vector{3.0, 0.0}, Block(2, 2));
  EXPECT_TRUE(r.trace.converged);
  EXPECT_VEC_NEAR(r.shadow_limit, (Vector{1.0, 0.0}), 1e-5);
}

TEST(ParallelAamr, SingleOperatorGivesItsResolvent) {
  const auto a = make_quadratic_subdifferential(Vector{1.0, 2.0});
  SolveOptions o;
  o.tol = 1e-12;
  const ParallelResult r = parallel_resolvent_of_sum({a}, Vector{3.0, -1.0}, Variant::Original, 0.4, o);
  EXPECT_VEC_NEAR(r.shadow_limit, a.resolvent(1.0, Vector{3.0, -1.0}), 1e-10);
}

TEST(ParallelAamr, ZeroOperatorsKeepShadowAtQuery) {
  const auto z = make_zero_operator(2);
  const Vector q{1.5, -2.0};
  Gen g(2);
  IterationParams p = params_with(0.5, 2.0, 1.0);
  p.options.max_iter = 5;
  p.options.tol = 1e-300;
  const ParallelResult r = parallel_aamr_solve({z, z, z}, p, q, random_block(g, 3, 2));
  for (const auto& rec : r.trace.iterates) EXPECT_VEC_NEAR(rec.shadow, q, 1e-12);

  // Away from beta = 1/2 the mean contracts geometrically instead.
  const ParallelResult s = parallel_resolvent_of_sum({z, z, z}, q, Variant::Original, 0.8, SolveOptions{},
                                                     random_block(g, 3, 2));
  EXPECT_TRUE(s.trace.converged);
  EXPECT_VEC_NEAR(s.shadow_limit, q, 1e-5);
}

TEST(ParallelAamrAlt, IdenticalConesGiveBallProjection) {
  const double beta = 0.6;
  const ParallelResult r = parallel_aamr_alt_solve({kUnitCone, kUnitCone}, params_with(beta, 2.0 * (1.0 - beta), 0.9),
                                                   Vector{3.0, 0.0}, Block(2, 2));
  EXPECT_TRUE(r.trace.converged);
  EXPECT_VEC_NEAR(r.shadow_limit, (Vector{1.0, 0.0}), 1e-5);
}

TEST(ParallelAamrAlt, IdentityPairGivesThirdOfQuery) {
  SolveOptions o;
  o.tol = 1e-12;
  const ParallelResult r = parallel_resolvent_of_sum({kId, kId}, Vector{3.0, 0.0}, Variant::Alternative, 0.5, o);
  EXPECT_VEC_NEAR(r.shadow_limit, (Vector{1.0, 0.0}), 1e-10);
}

TEST(ParallelAamr, VariantsAgreeOnBallInstances) {
  ExperimentConfig cfg;
  cfg.dim = 4;
  for (std::size_t id = 0; id < 5; ++id) {
    const ProblemInstance inst = generate_instance(cfg, 3, id);
    SolveOptions o;
    o.stop_rule = TrueError{inst.reference.point};
    const ParallelResult a = parallel_resolvent_of_sum(inst.normal_cones(), inst.query, Variant::Original, 0.8, o);
    const ParallelResult b = parallel_resolvent_of_sum(inst.normal_cones(), inst.query, Variant::Alternative, 0.8, o);
    ASSERT_TRUE(a.trace.converged && b.trace.converged);
    EXPECT_LT(distance(a.shadow_limit, b.shadow_limit), 2e-6);
  }
}

TEST(ParallelAamr, Errors) {
  EXPECT_THROW(parallel_aamr_solve({kId, kId}, params_with(0.5, 1.0, 0.9), Vector{0.0, 0.0}, Block(3, 2)),
               DimensionMismatch);
  EXPECT_THROW(parallel_aamr_solve({kId}, params_with(0.5, 1.0, 0.9), Vector{0.0, 0.0, 0.0}, Block(1, 3)),
               DimensionMismatch);
  EXPECT_THROW(parallel_aamr_solve({kId}, params_with(1.0, 1.0, 0.9), Vector{0.0, 0.0}, Block(1, 2)),
               std::invalid_argument);
}

TEST(ParallelProperties, StepIsProductSpaceAamrStep) {
  Gen g(10);
  for (int k = 0; k < 50; ++k) {
    const std::size_t r = 1 + g.index(5);
    const std::size_t d = 1 + g.index(4);
    const auto ops = random_family(g, r, d);
    const IterationParams p = params_with(g.beta(), g.gamma(), g.uniform(0.0, 1.0));
    const Vector q = g.vec(d);
    const Block x = random_block(g, r, d);
    const Block step = parallel_step(ops, Variant::Original, p, q, x, 0);
    const Vector product = aamr_step(diagonal_normal_cone(r, d), product_operator(ops), p,
                                     Block::replicate(q, r).flatten(), x.flatten(), 0);
    EXPECT_LE(max_abs_diff(step.flatten(), product), 1e-12);
  }
}

TEST(ParallelProperties, AlternativeStepUsesUnscaledInnerReflection) {
  Gen g(11);
  for (int k = 0; k < 50; ++k) {
    const std::size_t r = 1 + g.index(5);
    const std::size_t d = 1 + g.index(4);
    const auto ops = random_family(g, r, d);
    const double beta = g.beta();
    const double gamma = g.gamma();
    const double lambda = g.uniform(0.0, 1.0);
    const Vector q = g.vec(d);
    const Block x = random_block(g, r, d);
    const Block step = parallel_step(ops, Variant::Alternative, params_with(beta, gamma, lambda), q, x, 0);
    const Vector p = diagonal_project(x);
    for (std::size_t i = 0; i < r; ++i) {
      const Vector xi = x.block_vector(i);
      const Vector y = 2.0 * p - xi;
      const Vector refl = 2.0 * beta * (ops[i].resolvent(gamma, y + q) - q) - y;
      EXPECT_VEC_NEAR(step.block_vector(i), (1.0 - lambda) * xi + lambda * refl, 1e-12);
    }
  }
}

TEST(ParallelProperties, ShadowIsDiagonal) {
  Gen g(12);
  for (int k = 0; k < 20; ++k) {
    const std::size_t r = 1 + g.index(5);
    const std::size_t d = 1 + g.index(4);
    const Vector q = g.vec(d);
    const Block x = random_block(g, r, d);
    const Vector jq = Block::replicate(q, r).flatten();
    const Vector explicit_shadow = diagonal_normal_cone(r, d).resolvent(g.gamma(), jq + x.flatten());
    EXPECT_VEC_NEAR(explicit_shadow, Block::replicate(q + diagonal_project(x), r).flatten(), 1e-12);
  }
}

TEST(ParallelProperties, SumDecompositionAtLimit) {
  Gen g(13);
  SolveOptions o;
  o.tol = 1e-10;
  for (Variant v : {Variant::Original, Variant::Alternative}) {
    const auto ops = std::vector<MonotoneOperator>{make_quadratic_subdifferential(g.vec(3)),
                                                   make_ball_normal_cone(g.vec(3), 4.0),
                                                   make_l1_subdifferential(3, 0.5)};
    const ParallelResult r = parallel_resolvent_of_sum(ops, g.vec(3), v, 0.7, o, random_block(g, 3, 3));
    ASSERT_TRUE(r.trace.converged);
    EXPECT_LT(r.sum_identity_gap, 1e-6);
  }
}

TEST(ParallelProperties, PermutationEquivariance) {
  Gen g(14);
  for (int k = 0; k < 10; ++k) {
    const std::size_t r = 2 + g.index(3);
    const auto ops = random_family(g, r, 3);
    const Vector q = g.vec(3);
    const Block x0 = random_block(g, r, 3);
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g.engine());
    std::vector<MonotoneOperator> pops;
    std::vector<Vector> px;
    for (std::size_t i : perm) {
      pops.push_back(ops[i]);
      px.push_back(x0.block_vector(i));
    }
    for (Variant v : {Variant::Original, Variant::Alternative}) {
      IterationParams p = params_with(0.7, default_gamma(v, r, 0.7), 0.9);
      p.options.max_iter = 30;
      p.options.tol = 1e-300;
      const auto solve = v == Variant::Original ? parallel_aamr_solve : parallel_aamr_alt_solve;
      const ParallelResult a = solve(ops, p, q, x0, Execution::Serial);
      const ParallelResult b = solve(pops, p, q, Block(px), Execution::Serial);
      ASSERT_EQ(a.trace.iterates.size(), b.trace.iterates.size());
      for (std::size_t n = 0; n < a.trace.iterates.size(); ++n) {
        EXPECT_VEC_NEAR(a.trace.iterates[n].shadow, b.trace.iterates[n].shadow, 1e-12);
        for (std::size_t i = 0; i < r; ++i) {
          EXPECT_VEC_NEAR(a.trace.iterates[n].governing[perm[i]], b.trace.iterates[n].governing[i], 1e-12);
        }
      }
    }
  }
}

TEST(ParallelProperties, ThreadedRunIsBitIdenticalToSerial) {
  omp_set_num_threads(4);
  ExperimentConfig cfg;
  const ProblemInstance inst = generate_instance(cfg, 10, 3);
  for (Variant v : {Variant::Original, Variant::Alternative}) {
    SolveOptions o;
    o.stop_rule = TrueError{inst.reference.point};
    const ParallelResult a = parallel_resolvent_of_sum(inst.normal_cones(), inst.query, v, 0.9, o, inst.x0,
                                                       Execution::Serial);
    const ParallelResult b = parallel_resolvent_of_sum(inst.normal_cones(), inst.query, v, 0.9, o, inst.x0,
                                                       Execution::OpenMP);
    ASSERT_EQ(a.trace.iterates.size(), b.trace.iterates.size());
    EXPECT_EQ(a.block_limit, b.block_limit);
    EXPECT_EQ(a.shadow_limit, b.shadow_limit);
    for (std::size_t n = 0; n < a.trace.iterates.size(); ++n) {
      EXPECT_EQ(a.trace.iterates[n].governing, b.trace.iterates[n].governing);
      EXPECT_EQ(a.trace.iterates[n].step_norm, b.trace.iterates[n].step_norm);
    }
  }
}

TEST(DiagonalSumResolvent, IdentityPair) {
  SolveOptions o;
  o.tol = 1e-12;
  const DiagonalSumRoutes r = diagonal_sum_resolvent_routes({kId, kId}, Vector{3.0, 0.0}, o);
  EXPECT_VEC_NEAR(r.parallel_route, (Vector{1.5, 0.0}), 1e-10);
  EXPECT_VEC_NEAR(r.product_dr_route, (Vector{1.5, 0.0}), 1e-10);
  EXPECT_EQ(diagonal_sum_resolvent_check({kId, kId}, Vector{3.0, 0.0}, o), r.parallel_route);
}

TEST(DiagonalSumResolvent, ZeroOperatorsReturnQuery) {
  const auto z = make_zero_operator(2);
  EXPECT_VEC_NEAR(diagonal_sum_resolvent_check({z, z}, Vector{-1.0, 4.0}, SolveOptions{}), (Vector{-1.0, 4.0}), 1e-6);
}

TEST(DiagonalSumResolvent, ConeAndZeroRoutesAgree) {
  SolveOptions o;
  o.tol = 1e-12;
  const DiagonalSumRoutes r = diagonal_sum_resolvent_routes({kUnitCone, make_zero_operator(2)}, Vector{3.0, 0.0}, o);
  EXPECT_VEC_NEAR(r.parallel_route, (Vector{1.0, 0.0}), 1e-9);
  EXPECT_VEC_NEAR(r.product_dr_route, r.parallel_route, 1e-9);
}

TEST(StrengthenedFamilyZeros, QuadraticsMatchClosedFormAndProductDr) {
  // With A_i = Id - a_i, sum_i A_i^(b)(x) = r (2 - b) x / b - sum a_i.
  Gen g(15);
  SolveOptions o;
  o.tol = 1e-13;
  for (int k = 0; k < 5; ++k) {
    const std::size_t r = 2 + g.index(3);
    const double beta = g.uniform(0.2, 0.9);
    std::vector<MonotoneOperator> ops;
    std::vector<MonotoneOperator> strengthened;
    Vector mean = Vector::zeros(2);
    for (std::size_t i = 0; i < r; ++i) {
      const Vector a = g.vec(2);
      mean += a / static_cast<double>(r);
      ops.push_back(make_quadratic_subdifferential(a));
      strengthened.push_back(beta_strengthening(ops.back(), beta));
    }
    const Vector z = zeros_of_strengthened_family_check(ops, beta, o);
    EXPECT_VEC_NEAR(z, beta * mean / (2.0 - beta), 1e-9);
    const AamrResult dr =
        dr_solve(diagonal_normal_cone(r, 2), product_operator(strengthened), 0.5, o, Vector::zeros(2 * r));
    EXPECT_VEC_NEAR(z, diagonal_project(Block::from_flat(dr.shadow_limit, r)), 1e-8);
  }
}

}  // namespace
}  // namespace aamr
