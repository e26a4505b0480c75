#include "htdepth/linprog.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace htdepth;

namespace {

HPolytope unit_square() {
  HPolytope p(2);
  p.add(Halfspace{Direction({1.0, 0.0}), 1.0});
  p.add(Halfspace{Direction({-1.0, 0.0}), 1.0});
  p.add(Halfspace{Direction({0.0, 1.0}), 1.0});
  p.add(Halfspace{Direction({0.0, -1.0}), 1.0});
  return p;
}

HPolytope corner_triangle() {
  // conv{(0,0), (1,0), (0,1)} as three halfspaces
  HPolytope p(2);
  p.add(Halfspace{Direction({-1.0, 0.0}), 0.0});
  p.add(Halfspace{Direction({0.0, -1.0}), 0.0});
  p.add(Halfspace{Direction({1.0, 1.0}), 1.0 / std::sqrt(2.0)});
  return p;
}

}  // namespace

TEST(Solve, BoxSupport) {
  const LpProblem p = lp_from_polytope(unit_square(), Vec{1.0, 0.0});
  const LpSolution s = solve(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 1.0, 1e-10);
  EXPECT_NEAR(s.point[0], 1.0, 1e-10);
}

TEST(Solve, InfeasibleContradiction) {
  LpProblem p;
  p.d = 1;  // {x <= -1, -x <= -2} has no solution
  p.m = 2;
  p.objective = {1.0};
  p.constraints_a = {1.0, -1.0};
  p.constraints_b = {-1.0, -2.0};
  EXPECT_EQ(solve(p).status, LpStatus::kInfeasible);
}

TEST(Solve, UnboundedFreeDirection) {
  LpProblem p;
  p.d = 2;  // only x2 <= 0, maximize x1
  p.m = 1;
  p.objective = {1.0, 0.0};
  p.constraints_a = {0.0, 1.0};
  p.constraints_b = {0.0};
  EXPECT_EQ(solve(p).status, LpStatus::kUnbounded);
}

TEST(Solve, RejectsNonFiniteInput) {
  LpProblem p;
  p.d = 1;
  p.m = 1;
  p.objective = {std::numeric_limits<double>::quiet_NaN()};
  p.constraints_a = {1.0};
  p.constraints_b = {1.0};
  EXPECT_THROW(solve(p), std::invalid_argument);
}

TEST(Solve, OptimalSolutionInvariants) {
  // A x* <= b + 1e-8, value = <c, x*> within 1e-8, active constraints tight.
  Rng rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    const HPolytope poly = htdepth::testing::random_bounded_polytope_2d(rng);
    const double ang = 2.0 * M_PI * rng.uniform01();
    const Direction u({std::cos(ang), std::sin(ang)});
    const LpProblem p = lp_from_polytope(poly, u.span());
    const LpSolution s = solve(p);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    for (long long j = 0; j < p.m; ++j) {
      const double row = p.constraints_a[2 * j] * s.point[0] + p.constraints_a[2 * j + 1] * s.point[1];
      EXPECT_LE(row, p.constraints_b[j] + 1e-8);
    }
    EXPECT_NEAR(s.value, u[0] * s.point[0] + u[1] * s.point[1], 1e-8);
    ASSERT_LE(s.active_set.size(), 2u);
    for (std::size_t k = 0; k < s.active_set.size(); ++k) {
      const int j = s.active_set[k];
      const double row = p.constraints_a[2 * j] * s.point[0] + p.constraints_a[2 * j + 1] * s.point[1];
      EXPECT_NEAR(row, p.constraints_b[j], 1e-8);
      EXPECT_GE(s.dual_weights[k], 0.0);
    }
  }
}

TEST(Solve, DeterministicActiveSets) {
  Rng rng(77);
  const HPolytope poly = htdepth::testing::random_bounded_polytope_2d(rng);
  const LpProblem p = lp_from_polytope(poly, Vec{0.6, 0.8});
  const LpSolution a = solve(p);
  const LpSolution b = solve(p);
  EXPECT_EQ(a.active_set, b.active_set);
  EXPECT_EQ(a.point, b.point);
}

TEST(Solve, StatusesAreMutuallyExclusive) {
  // The same input never reports both infeasible and unbounded; spot-check
  // a family that crosses from bounded to unbounded to infeasible.
  for (double offset : {1.0, 0.0, -1.0}) {
    LpProblem p;
    p.d = 1;  // x <= 1, -x <= offset
    p.m = 2;
    p.objective = {-1.0};
    p.constraints_a = {1.0, -1.0};
    p.constraints_b = {1.0, offset};
    const LpSolution s = solve(p);
    if (offset >= -1.0) {
      EXPECT_EQ(s.status, LpStatus::kOptimal);
      EXPECT_NEAR(s.value, offset, 1e-9);
    } else {
      EXPECT_EQ(s.status, LpStatus::kInfeasible);
    }
  }
}

TEST(SupportFunction, UnitSquareAxis) {
  const SupportValue v = support_function(unit_square(), Direction({1.0, 0.0}));
  ASSERT_FALSE(v.unbounded);
  EXPECT_NEAR(v.value, 1.0, 1e-10);
}

TEST(SupportFunction, UnitSquareDiagonal) {
  const SupportValue v = support_function(unit_square(), Direction({1.0, 1.0}));
  ASSERT_FALSE(v.unbounded);
  EXPECT_NEAR(v.value, std::sqrt(2.0), 1e-10);
}

TEST(SupportFunction, TriangleDiagonal) {
  const SupportValue v = support_function(corner_triangle(), Direction({1.0, 1.0}));
  ASSERT_FALSE(v.unbounded);
  EXPECT_NEAR(v.value, 1.0 / std::sqrt(2.0), 1e-10);
}

TEST(SupportFunction, EmptyPolytopeIsAnError) {
  HPolytope p(2);
  p.add(Halfspace{Direction({1.0, 0.0}), -1.0});
  p.add(Halfspace{Direction({-1.0, 0.0}), -2.0});
  EXPECT_THROW(support_function(p, Direction({1.0, 0.0})), EmptyPolytopeError);
}

TEST(SupportFunction, UnboundedIsAStatusNotAnError) {
  HPolytope p(2);
  p.add(Halfspace{Direction({0.0, 1.0}), 0.0});
  const SupportValue v = support_function(p, Direction({1.0, 0.0}));
  EXPECT_TRUE(v.unbounded);
}

TEST(SupportFunction, MatchesVertexOracle) {
  // 100 random bounded polytopes, |LP - vertex max| <= 1e-8.
  Rng rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const HPolytope poly = htdepth::testing::random_bounded_polytope_2d(rng);
    const auto vertices = htdepth::testing::vertex_enum_2d(poly);
    ASSERT_FALSE(vertices.empty());
    for (int k = 0; k < 8; ++k) {
      const double ang = 2.0 * M_PI * (static_cast<double>(k) + rng.uniform01()) / 8.0;
      const Direction u({std::cos(ang), std::sin(ang)});
      const SupportValue v = support_function(poly, u);
      ASSERT_FALSE(v.unbounded);
      EXPECT_NEAR(v.value, htdepth::testing::vertex_support_2d(vertices, u), 1e-8);
    }
  }
}

TEST(SupportFunction, HomogeneousExtensionSubadditive) {
  // H(z) = |z| h_P(z/|z|) satisfies H(u+v) <= H(u) + H(v) + 1e-8.
  Rng rng(1414);
  const HPolytope poly = htdepth::testing::random_bounded_polytope_2d(rng);
  auto homogeneous = [&](const Vec& z) {
    const double len = norm(z);
    if (len == 0.0) return 0.0;
    return len * support_function(poly, Direction(z)).value;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const double a1 = 2.0 * M_PI * rng.uniform01();
    const double a2 = 2.0 * M_PI * rng.uniform01();
    const Vec u = {std::cos(a1), std::sin(a1)};
    const Vec v = {std::cos(a2), std::sin(a2)};
    const Vec w = {u[0] + v[0], u[1] + v[1]};
    EXPECT_LE(homogeneous(w), homogeneous(u) + homogeneous(v) + 1e-8);
  }
}

TEST(ActiveConeCertificate, SquareFacet) {
  const ConeCertificate c = active_cone_certificate(unit_square(), Direction({1.0, 0.0}));
  ASSERT_EQ(c.indices.size(), 1u);
  EXPECT_EQ(c.indices[0], 0);  // the x <= 1 constraint
  EXPECT_NEAR(c.weights[0], 1.0, 1e-9);
  EXPECT_NEAR(c.point[0], 1.0, 1e-9);
}

TEST(ActiveConeCertificate, SquareCorner) {
  const Direction u({1.0, 1.0});
  const ConeCertificate c = active_cone_certificate(unit_square(), u);
  ASSERT_EQ(c.indices.size(), 2u);
  // weights (1/sqrt 2, 1/sqrt 2) on the x <= 1 and y <= 1 facets
  EXPECT_EQ(c.indices[0], 0);
  EXPECT_EQ(c.indices[1], 2);
  EXPECT_NEAR(c.weights[0], 1.0 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(c.weights[1], 1.0 / std::sqrt(2.0), 1e-9);
}

TEST(ActiveConeCertificate, TriangleBottomFacet) {
  const ConeCertificate c = active_cone_certificate(corner_triangle(), Direction({0.0, -1.0}));
  ASSERT_EQ(c.indices.size(), 1u);
  EXPECT_EQ(c.indices[0], 1);  // -y <= 0
  EXPECT_NEAR(c.weights[0], 1.0, 1e-9);
}

TEST(ActiveConeCertificate, ReconstructsDirection) {
  // sum of weights * normals = u within 1e-6; indexed constraints tight.
  Rng rng(909);
  for (int trial = 0; trial < 50; ++trial) {
    const HPolytope poly = htdepth::testing::random_bounded_polytope_2d(rng);
    const double ang = 2.0 * M_PI * rng.uniform01();
    const Direction u({std::cos(ang), std::sin(ang)});
    const ConeCertificate c = active_cone_certificate(poly, u);
    ASSERT_LE(c.indices.size(), 2u);
    Vec recon = {0.0, 0.0};
    for (std::size_t k = 0; k < c.indices.size(); ++k) {
      ASSERT_GE(c.weights[k], -1e-12);
      const auto& h = poly[static_cast<std::size_t>(c.indices[k])];
      recon[0] += c.weights[k] * h.normal[0];
      recon[1] += c.weights[k] * h.normal[1];
      EXPECT_NEAR(dot(h.normal.span(), c.point), h.offset, 1e-8);
    }
    EXPECT_NEAR(recon[0], u[0], 1e-6);
    EXPECT_NEAR(recon[1], u[1], 1e-6);
  }
}

TEST(FeasibilityGap, EmptyVsNonempty) {
  EXPECT_FALSE(polytope_is_empty(unit_square()));
  HPolytope empty(2);
  empty.add(Halfspace{Direction({1.0, 0.0}), -1.0});
  empty.add(Halfspace{Direction({-1.0, 0.0}), -2.0});
  EXPECT_TRUE(polytope_is_empty(empty));
  EXPECT_FALSE(polytope_is_empty(HPolytope(2)));  // no constraints: all of R^2
}

TEST(Solve, DuplicateNormalsDegenerateRank) {
  // All constraint normals equal e1: optimal along e1, unbounded along e2.
  HPolytope p(2);
  p.add(Halfspace{Direction({1.0, 0.0}), 1.0});
  p.add(Halfspace{Direction({1.0, 0.0}), 2.0});
  const LpSolution along = solve(lp_from_polytope(p, Vec{1.0, 0.0}));
  ASSERT_EQ(along.status, LpStatus::kOptimal);
  EXPECT_NEAR(along.value, 1.0, 1e-9);
  const LpSolution across = solve(lp_from_polytope(p, Vec{0.0, 1.0}));
  EXPECT_EQ(across.status, LpStatus::kUnbounded);
}
