#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "wsci/mixture.hpp"
#include "wsci/oracle.hpp"

namespace {

using wsci::Model;

Model example_model() { return Model(20, 30, 0.3); }

// P{estimate <= u} (or < u) summed from the brute-force joint masses.
double brute_tail(const Model& m, double u, double vartheta, bool strict) {
  const auto joint = wsci::oracle::brute_joint_masses(m, vartheta, 4000);
  double s = 0.0;
  for (int k1 = 0; k1 <= m.n1(); ++k1) {
    for (int k2 = 0; k2 <= m.n2(); ++k2) {
      const double v = m.estimate(k1, k2);
      const bool hit = strict ? v < u - 1e-9 : v <= u + 1e-9;
      if (hit) s += joint[k1 * (m.n2() + 1) + k2];
    }
  }
  return s;
}

TEST(SupportGrid, ExampleModelNeighbours) {
  const Model m = example_model();
  EXPECT_EQ(m.grid().size(), 497u);
  const auto nb = wsci::neighbors(m.grid(), 0.03);
  EXPECT_NEAR(nb.minus, 0.7 / 30.0, 1e-12);
  EXPECT_NEAR(nb.plus, 0.0383333333333, 1e-12);
}

TEST(SupportGrid, SmallDesigns) {
  const Model tiny(1, 1, 0.5);
  EXPECT_EQ(tiny.grid().values, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(tiny.grid().preimages[1].size(), 2u);
  // 0.4*k1/2 + 0.6*k2/3 = 0.2*(k1 + k2): twelve outcomes, six values.
  EXPECT_EQ(Model(2, 3, 0.4).grid().size(), 6u);
  EXPECT_EQ(Model(2, 3, 0.35).grid().size(), 12u);
}

TEST(SupportGrid, EndsAreExactAndSentinelsApply) {
  const Model m = example_model();
  EXPECT_EQ(m.grid().values.front(), 0.0);
  EXPECT_EQ(m.grid().values.back(), 1.0);
  EXPECT_EQ(wsci::neighbors(m.grid(), 0.0).minus, wsci::kBelowSupport);
  EXPECT_EQ(wsci::neighbors(m.grid(), 1.0).plus, wsci::kAboveSupport);
}

TEST(SupportGrid, OffGridThrows) {
  EXPECT_THROW(wsci::neighbors(example_model().grid(), 0.031), wsci::NotASupportPoint);
  EXPECT_FALSE(example_model().grid().find(0.031).has_value());
}

TEST(SupportGrid, EveryOutcomeMapsToItsValue) {
  const Model m(7, 4, 0.35);
  for (int k1 = 0; k1 <= 7; ++k1) {
    for (int k2 = 0; k2 <= 4; ++k2) {
      EXPECT_NEAR(m.grid().values[m.atom_of(k1, k2)], m.estimate(k1, k2), 1e-12);
    }
  }
}

TEST(Model, SwapsToLighterFirstStratum) {
  const Model m(30, 20, 0.7);
  EXPECT_TRUE(m.swapped());
  EXPECT_EQ(m.n1(), 20);
  EXPECT_NEAR(m.w1(), 0.3, 1e-15);
  EXPECT_EQ(m.to_internal(2, 0), (std::pair{0, 2}));
  EXPECT_EQ(m.grid().size(), example_model().grid().size());
}

TEST(ThetaRange, Bounds) {
  const Model m = example_model();
  const auto r = wsci::theta1_range(m, 0.03);
  EXPECT_DOUBLE_EQ(r.a, 0.0);
  EXPECT_DOUBLE_EQ(r.b, 0.1);
  const auto hi = wsci::theta1_range(m, 0.9);
  EXPECT_NEAR(hi.a, (0.9 - 0.7) / 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(hi.b, 1.0);
  EXPECT_THROW(wsci::theta1_range(m, 0.0), wsci::DegenerateRange);
  EXPECT_THROW(wsci::theta1_range(m, 1.0), wsci::DegenerateRange);
}

TEST(Cdf, MatchesBruteForceOnSmallDesign) {
  const Model m(4, 6, 0.45);
  for (double vartheta : {0.05, 0.3, 0.55, 0.93}) {
    for (double u : m.grid().values) {
      EXPECT_NEAR(wsci::cdf(m, u, vartheta), brute_tail(m, u, vartheta, false), 1e-10);
      EXPECT_NEAR(wsci::cdf_strict(m, u, vartheta), brute_tail(m, u, vartheta, true), 1e-10);
    }
  }
}

TEST(Cdf, MatchesMonteCarlo) {
  const Model m = example_model();
  const wsci::oracle::McConfig mc{200000, 11};
  for (auto [u, vartheta] : {std::pair{0.03, 0.05}, {0.03, 0.1117}, {0.2, 0.25}}) {
    const auto est = wsci::oracle::mc_cdf(m, u, vartheta, mc);
    EXPECT_NEAR(wsci::cdf(m, u, vartheta), est.estimate, 3 * est.std_err + 1e-6)
        << u << ' ' << vartheta;
  }
}

TEST(Pmf, IsWeakMinusStrict) {
  const Model m = example_model();
  for (double u : {0.0, 0.03, 0.2633333333333333, 1.0}) {
    const double vartheta = 0.2;
    EXPECT_NEAR(wsci::pmf(m, u, vartheta),
                wsci::cdf(m, u, vartheta) - wsci::cdf_strict(m, u, vartheta), 1e-12);
  }
  EXPECT_EQ(wsci::pmf(m, 0.031, 0.2), 0.0);
}

TEST(Pmf, AtomsSumToOne) {
  const Model m = example_model();
  for (double vartheta : {0.01, 0.3, 0.77}) {
    const auto masses = wsci::atom_masses(m, vartheta);
    EXPECT_NEAR(std::accumulate(masses.begin(), masses.end(), 0.0), 1.0, 1e-9);
    for (std::size_t i : {std::size_t{0}, std::size_t{5}, std::size_t{100}}) {
      EXPECT_NEAR(masses[i], wsci::pmf(m, m.grid().values[i], vartheta), 1e-10);
    }
  }
}

TEST(Cdf, MonotoneInVartheta) {
  // Stochastic ordering: more mass moves above u as vartheta grows.
  const Model m = example_model();
  double prev = 1.0;
  for (int i = 1; i < 40; ++i) {
    const double v = wsci::cdf(m, 0.1, i / 40.0);
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
  }
}

TEST(Cdf, PointMassLimits) {
  const Model m = example_model();
  EXPECT_EQ(wsci::cdf(m, 0.0, 0.0), 1.0);
  EXPECT_EQ(wsci::cdf_strict(m, 0.0, 0.0), 0.0);
  EXPECT_EQ(wsci::cdf(m, 0.5, 1.0), 0.0);
  EXPECT_EQ(wsci::cdf(m, 1.0, 1.0), 1.0);
}

TEST(Cdf, IndependentOfQuadratureTolerance) {
  const Model m = example_model();
  wsci::QuadratureConfig tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-12;
  tight.max_subdivisions = 2000;
  for (double vartheta : {0.004, 0.11, 0.6}) {
    EXPECT_NEAR(wsci::cdf(m, 0.03, vartheta), wsci::cdf(m, 0.03, vartheta, tight), 1e-9);
  }
}

TEST(RandomizedCdf, Blends) {
  const Model m = example_model();
  const double vartheta = 0.05;
  const auto nb = wsci::neighbors(m.grid(), 0.03);
  const double direct = wsci::cdf(m, 0.03, vartheta) + 0.2 * wsci::pmf(m, nb.plus, vartheta);
  EXPECT_NEAR(wsci::randomized_cdf(m, 0.03, nb.plus, 0.2, vartheta), direct, 1e-11);
  // The sentinel below the grid contributes no tail.
  EXPECT_NEAR(wsci::randomized_cdf(m, wsci::kBelowSupport, 0.0, 0.6, vartheta),
              0.6 * wsci::pmf(m, 0.0, vartheta), 1e-12);
  EXPECT_NEAR(wsci::randomized_cdf(m, 1.0, wsci::kAboveSupport, 0.6, vartheta), 1.0, 1e-12);
}

TEST(RandomizedCdf, WorkedExampleEndpointIdentities) {
  // Endpoints of the randomized interval with the equal tail split at y = 0.2.
  const Model m = example_model();
  const auto nb = wsci::neighbors(m.grid(), 0.03);
  EXPECT_NEAR(wsci::randomized_cdf(m, 0.03, nb.plus, 0.2, 0.111730732), 0.025, 1e-7);
  EXPECT_NEAR(wsci::randomized_cdf(m, nb.minus, 0.03, 0.2, 0.004672159), 0.975, 1e-7);
}

TEST(Cdf, StandardEndpointIdentities) {
  const Model m = example_model();
  EXPECT_NEAR(wsci::cdf(m, 0.03, 0.109540855595), 0.025, 1e-9);
  EXPECT_NEAR(wsci::cdf_strict(m, 0.03, 0.004448417529), 0.975, 1e-9);
}

TEST(SmoothedCdf, AgreesWithStepFunctionsOnGrid) {
  const Model m = example_model();
  const double vartheta = 0.07;
  for (double u : {0.0, 0.03, 0.1, 0.5}) {
    EXPECT_NEAR(wsci::smoothed_cdf_up(m, u, vartheta), wsci::cdf_strict(m, u, vartheta), 1e-11);
    EXPECT_NEAR(wsci::smoothed_cdf_down(m, u, vartheta), wsci::cdf(m, u, vartheta), 1e-11);
  }
}

TEST(SmoothedCdf, ContinuousAndMonotoneInT) {
  const Model m(3, 4, 0.4);
  const double vartheta = 0.45;
  double prev_up = 0.0, prev_down = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = i / 400.0;
    const double up = wsci::smoothed_cdf_up(m, t, vartheta);
    const double down = wsci::smoothed_cdf_down(m, t, vartheta);
    EXPECT_GE(up, prev_up - 1e-12);
    EXPECT_GE(down, prev_down - 1e-12);
    // Jumps are bounded by the step size times the largest atom density.
    if (i > 0) {
      EXPECT_LT(up - prev_up, 0.2);
      EXPECT_LT(down - prev_down, 0.2);
    }
    prev_up = up;
    prev_down = down;
  }
  EXPECT_NEAR(prev_down, 1.0, 1e-12);
}

}  // namespace
