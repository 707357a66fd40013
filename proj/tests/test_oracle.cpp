#include <gtest/gtest.h>

#include "aamr/oracle.hpp"
#include "test_support.hpp"

namespace aamr {
namespace {

using testing::Gen;

const Ball kLeft(Vector{0.0, 0.0}, 2.0);
const Ball kRight(Vector{2.0, 0.0}, 2.0);

TEST(Dykstra, SingleSetIsItsProjector) {
  Gen g(1);
  const Ball b(g.vec(3), 1.5);
  const Vector q = g.vec(3, -20.0, 20.0);
  const ReferenceSolution s = dykstra_project({b}, q);
  EXPECT_EQ(s.method, ReferenceMethod::Dykstra);
  EXPECT_VEC_NEAR(s.point, b.project(q), 1e-15);
  EXPECT_LE(s.iterations, 2u);
}

TEST(Dykstra, IdenticalBalls) {
  const Ball b(Vector{1.0, 1.0}, 1.0);
  EXPECT_VEC_NEAR(dykstra_project({b, b}, Vector{4.0, 5.0}).point, b.project(Vector{4.0, 5.0}), 1e-12);
}

TEST(Dykstra, LensClosestPoint) {
  // The lens lies in the strip 0 <= x1 <= 2 and contains (2, 0).
  const ReferenceSolution s = dykstra_project({kLeft, kRight}, Vector{5.0, 0.0});
  EXPECT_VEC_NEAR(s.point, (Vector{2.0, 0.0}), 1e-10);
  EXPECT_LT(s.residual, kOracleRejectThreshold);
}

TEST(Dykstra, BallAndLine) {
  // Line x2 = 0.5 cut by the unit ball: closest point to (3, 3) is (sqrt(3)/2, 0.5).
  const AffineSubspace line({Vector{1.0, 0.0}}, Vector{0.0, 0.5});
  const ReferenceSolution s = dykstra_project({Ball(Vector{0.0, 0.0}, 1.0), line}, Vector{3.0, 3.0});
  EXPECT_VEC_NEAR(s.point, (Vector{std::sqrt(3.0) / 2.0, 0.5}), 1e-10);
}

TEST(Dykstra, IterationCapThrows) {
  EXPECT_THROW(dykstra_project({kLeft, kRight}, Vector{1.0, 5.0}, 1e-12, 2), MaxIterExceeded);
}

TEST(Dykstra, LooseToleranceRejected) {
  EXPECT_THROW(dykstra_project({kLeft, kRight}, Vector{1.0, 5.0}, 1e-3), OracleRejected);
}

TEST(ReferenceResolvent, IdentityPair) {
  const auto id = make_quadratic_subdifferential(Vector{0.0, 0.0});
  const ReferenceSolution s = reference_resolvent_of_sum(id, id, Vector{3.0, 0.0});
  EXPECT_EQ(s.method, ReferenceMethod::ReferenceDR);
  EXPECT_VEC_NEAR(s.point, (Vector{1.0, 0.0}), 1e-11);
}

TEST(ReferenceResolvent, ZeroOperatorLeavesOtherResolvent) {
  Gen g(2);
  for (const auto& b : testing::concrete_operators(g, 3)) {
    const Vector q = g.vec(3);
    SCOPED_TRACE(b.name());
    EXPECT_VEC_NEAR(reference_resolvent_of_sum(make_zero_operator(3), b, q).point, b.resolvent(1.0, q), 1e-10);
  }
}

TEST(ReferenceResolvent, QuadraticPairClosedForm) {
  Gen g(3);
  for (int k = 0; k < 20; ++k) {
    const Vector a = g.vec(4);
    const Vector b = g.vec(4);
    const Vector q = g.vec(4);
    const ReferenceSolution s =
        reference_resolvent_of_sum(make_quadratic_subdifferential(a), make_quadratic_subdifferential(b), q);
    EXPECT_VEC_NEAR(s.point, (q + a + b) / 3.0, 1e-10);
  }
}

TEST(ReferenceResolvent, IterationCapThrows) {
  const auto id = make_quadratic_subdifferential(Vector{0.0, 0.0});
  EXPECT_THROW(reference_resolvent_of_sum(id, id, Vector{3.0, 0.0}, 1e-12, 2), MaxIterExceeded);
}

TEST(OracleConsistency, DykstraMatchesReferenceDrOnCones) {
  Gen g(4);
  for (int k = 0; k < 20; ++k) {
    const std::size_t d = 2 + g.index(4);
    const Vector z = g.vec(d);
    const Vector b1 = g.vec(d, -2.0, 2.0);
    const Vector b2 = g.vec(d, -2.0, 2.0);
    const Ball c1(z + b1, norm(b1) + 0.1);
    const Ball c2(z + b2, norm(b2) + 0.1);
    const Vector q = g.vec(d, -10.0, 10.0);
    const ReferenceSolution dy = dykstra_project({c1, c2}, q);
    const ReferenceSolution dr = reference_resolvent_of_sum(make_normal_cone(c1), make_normal_cone(c2), q);
    EXPECT_LT(distance(dy.point, dr.point), 1e-8);
  }
}

}  // namespace
}  // namespace aamr
