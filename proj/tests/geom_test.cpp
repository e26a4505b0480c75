#include "htdepth/geom.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace htdepth;

TEST(Direction, UnitNormWithin1e12) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Vec v(3);
    for (double& c : v) c = 10.0 * (rng.uniform01() - 0.5);
    if (norm(v) < 1e-6) continue;
    Direction u(v);
    EXPECT_NEAR(norm(u.coords()), 1.0, 1e-12);
  }
  EXPECT_THROW(Direction(Vec{1.0}), std::invalid_argument);
  EXPECT_THROW(Direction(Vec{0.0, 0.0}), std::invalid_argument);
}

TEST(UniformDirections, SingleVectorIsUnit) {
  const auto dirs = uniform_directions(2, 1, 42);
  ASSERT_EQ(dirs.size(), 1u);
  EXPECT_NEAR(norm(dirs[0].coords()), 1.0, 1e-12);
}

TEST(UniformDirections, CoordinateMeansVanish) {
  // Law of large numbers at m = 10^4: per-coordinate sd is 1/sqrt(3m).
  const long long m = 10000;
  const auto dirs = uniform_directions(3, m, 123);
  for (int c = 0; c < 3; ++c) {
    double mean = 0.0;
    for (const auto& u : dirs) mean += u[c];
    mean /= static_cast<double>(m);
    EXPECT_LE(std::fabs(mean), 0.05);
  }
}

TEST(UniformDirections, DeterministicGivenSeed) {
  const auto a = uniform_directions(2, 2, 99);
  const auto b = uniform_directions(2, 2, 99);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i][0], b[i][0]);
    EXPECT_EQ(a[i][1], b[i][1]);
  }
}

TEST(UniformDirections, RejectsBadArguments) {
  EXPECT_THROW(uniform_directions(1, 5, 0), std::invalid_argument);
  EXPECT_THROW(uniform_directions(2, 0, 0), std::invalid_argument);
}

TEST(UniformDirections, AngleHistogramChiSquare) {
  // 12 bins over 1e5 samples; 0.999 quantile of chi^2(11) = 31.2641336.
  const long long m = 100000;
  const auto dirs = uniform_directions(2, m, 2024);
  int bins[12] = {0};
  for (const auto& u : dirs) {
    double ang = std::atan2(u[1], u[0]);  // (-pi, pi]
    int b = static_cast<int>((ang + M_PI) / (2.0 * M_PI) * 12.0);
    if (b == 12) b = 11;
    ++bins[b];
  }
  const double expected = static_cast<double>(m) / 12.0;
  double chi2 = 0.0;
  for (int b : bins) {
    const double dev = static_cast<double>(b) - expected;
    chi2 += dev * dev / expected;
  }
  EXPECT_LT(chi2, 31.264133620239985);
}

TEST(DeterministicNet, RejectsOutOfRangeDelta) {
  EXPECT_THROW(deterministic_net(2, 2.0), std::invalid_argument);
  EXPECT_THROW(deterministic_net(2, 0.0), std::invalid_argument);
  EXPECT_THROW(deterministic_net(2, -0.1), std::invalid_argument);
}

TEST(DeterministicNet, CircleCountAndGap) {
  const SphereNet net = deterministic_net(2, 0.1);
  EXPECT_GE(net.directions.size(), 63u);  // ceil(2*pi / (2*asin(0.05)))
  std::vector<double> angles;
  for (const auto& u : net.directions) angles.push_back(std::atan2(u[1], u[0]));
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2.0 * M_PI - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) {
    max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  }
  EXPECT_LE(max_gap, 2.0 * std::asin(0.05) + 1e-12);
}

TEST(DeterministicNet, CoarseCircleNetCoversProbeGrid) {
  // delta = 1: every direction of a 1e4-point grid has a net point within
  // chord distance 1.
  const SphereNet net = deterministic_net(2, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double ang = 2.0 * M_PI * static_cast<double>(k) / 10000.0;
    const Direction u({std::cos(ang), std::sin(ang)});
    double best = 2.0;
    for (const auto& v : net.directions) best = std::min(best, chord_distance(u, v));
    EXPECT_LE(best, 1.0);
  }
}

TEST(DeterministicNet, PassesConservativeNetCheck) {
  for (int d : {2, 3}) {
    for (double delta : {0.05, 0.1, 0.5}) {
      const SphereNet candidate = deterministic_net(d, delta);
      const SphereNet probe = deterministic_net(d, delta / 4.0);
      EXPECT_TRUE(is_delta_net(candidate.directions, delta, probe))
          << "d=" << d << " delta=" << delta;
    }
  }
}

TEST(IsDeltaNet, SinglePointFails) {
  const SphereNet probe = deterministic_net(2, 0.025);
  const std::vector<Direction> candidate = {Direction({1.0, 0.0})};
  EXPECT_FALSE(is_delta_net(candidate, 0.1, probe));
}

TEST(IsDeltaNet, EmptyCandidateIsFalse) {
  const SphereNet probe = deterministic_net(2, 0.025);
  EXPECT_FALSE(is_delta_net({}, 0.1, probe));
}

TEST(IsDeltaNet, RejectsCoarseProbe) {
  const SphereNet probe = deterministic_net(2, 0.5);
  const SphereNet candidate = deterministic_net(2, 0.5);
  EXPECT_THROW(is_delta_net(candidate.directions, 0.5, probe), std::invalid_argument);
}

TEST(PolytopeContains, UnitSquare) {
  HPolytope square(2);
  square.add(Halfspace{Direction({1.0, 0.0}), 1.0});
  square.add(Halfspace{Direction({-1.0, 0.0}), 1.0});
  square.add(Halfspace{Direction({0.0, 1.0}), 1.0});
  square.add(Halfspace{Direction({0.0, -1.0}), 1.0});

  const Vec origin = {0.0, 0.0};
  const Vec outside = {2.0, 0.0};
  EXPECT_TRUE(polytope_contains(square, origin, 1e-9));
  EXPECT_FALSE(polytope_contains(square, outside, 1e-9));

  const double tol = 1e-6;
  const Vec boundaryish = {1.0 + tol / 2.0, 0.0};
  EXPECT_TRUE(polytope_contains(square, boundaryish, tol));

  const Vec wrong_dim = {0.0, 0.0, 0.0};
  EXPECT_THROW(polytope_contains(square, wrong_dim, 1e-9), std::invalid_argument);
}

TEST(PolytopeContains, MonotoneInTolerance) {
  Rng rng(5);
  HPolytope p(2);
  for (int i = 0; i < 6; ++i) {
    const double ang = 2.0 * M_PI * rng.uniform01();
    p.add(Halfspace{Direction({std::cos(ang), std::sin(ang)}), rng.uniform01()});
  }
  for (int trial = 0; trial < 500; ++trial) {
    const Vec x = {4.0 * (rng.uniform01() - 0.5), 4.0 * (rng.uniform01() - 0.5)};
    const double t1 = rng.uniform01() * 0.5;
    const double t2 = t1 + rng.uniform01() * 0.5;
    if (polytope_contains(p, x, t1)) {
      EXPECT_TRUE(polytope_contains(p, x, t2));
    }
  }
}

TEST(PointCloud, ValidatesInput) {
  EXPECT_THROW(PointCloud({}, 0, 2), std::invalid_argument);
  EXPECT_THROW(PointCloud({1.0, 2.0, 3.0}, 1, 2), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(PointCloud({1.0, inf}, 1, 2), std::invalid_argument);
  const PointCloud cloud({1.0, 2.0, 3.0, 4.0}, 2, 2);
  EXPECT_EQ(cloud.point(1)[0], 3.0);
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 50; ++s) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      seen.insert(derive_seed(42, s, i));
    }
  }
  EXPECT_EQ(seen.size(), 2500u);
}
