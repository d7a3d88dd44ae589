#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mmc/balancing.hpp"
#include "mmc/baselines.hpp"
#include "mmc/errors.hpp"
#include "mmc/generators.hpp"
#include "mmc/graph_algorithms.hpp"
#include "support/oracles.hpp"

namespace mmc {
namespace {

using testing::Rng;

std::vector<double> as_vector(const AuxVector<double>& x) { return {x.begin(), x.end()}; }

double spread(std::span<const double> x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

TEST(BalanceProblem, ConditioningBoundDominates) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 2, 12, -3, 2);
    const BalanceProblem prob(g, 0.5 + trial % 7, 0.01);
    EXPECT_LE(prob.log_kappa(), prob.log_kappa_bound() + 1e-12);
  }
  const WeightedDigraph g(2, {{0, 1, 1}, {1, 0, 1}});
  EXPECT_THROW(BalanceProblem(g, 0.0, 0.1), PreconditionViolation);
  EXPECT_THROW(BalanceProblem(g, 1.0, 0.0), PreconditionViolation);
}

TEST(RandomOsborne, TwoVertexClosedForm) {
  const double a = 0.7, b = -0.2, eta = 3.0;
  const WeightedDigraph g(2, {{0, 1, a}, {1, 0, b}});
  const BalanceProblem prob(g, eta, 1e-12);
  const BalanceResult r = random_osborne(prob, 1);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0] - r.x[1], eta * (a - b) / 2, 1e-12);
  const double expected = -eta * (a + b) / 2;
  EXPECT_NEAR(log_scaled_entry(r.x, prob, 0), expected, 1e-12);
  EXPECT_NEAR(log_scaled_entry(r.x, prob, 1), expected, 1e-12);
  const BalancedFlow p = build_balanced_flow(r.x, prob);
  EXPECT_NEAR(p.p[0], 0.5, 1e-12);
  EXPECT_NEAR(p.p[1], 0.5, 1e-12);
}

TEST(RandomOsborne, SymmetricWeightsAcceptedAtZero) {
  std::vector<Edge> edges;
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) {
      const double w = 0.1 * (u + 2 * v);
      edges.push_back({u, v, w});
      edges.push_back({v, u, w});
    }
  const WeightedDigraph g(5, edges);
  const BalanceProblem prob(g, 4.0, 1e-9);
  const BalanceResult r = random_osborne(prob, 7);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.steps, 0);
  for (double v : r.x) EXPECT_EQ(v, 0.0);
}

TEST(RandomOsborne, ThreeCycleMatchesGradientDescent) {
  const WeightedDigraph g(3, {{0, 1, 0.3}, {1, 2, -0.5}, {2, 0, 0.9}});
  const double eta = 2.0;
  const BalanceProblem prob(g, eta, 1e-10);
  const BalanceResult r = random_osborne(prob, 3);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(relative_imbalance(r.x, prob), 1e-10);
  const std::vector<double> ref = testing::balance_by_gradient_descent(g, eta, 20000);
  for (int v = 1; v < 3; ++v) EXPECT_NEAR(r.x[v] - r.x[0], ref[v] - ref[0], 1e-6);
  // All three entries are equal at the balanced point.
  EXPECT_NEAR(log_scaled_entry(r.x, prob, 0), log_scaled_entry(r.x, prob, 1), 1e-9);
  EXPECT_NEAR(log_scaled_entry(r.x, prob, 1), log_scaled_entry(r.x, prob, 2), 1e-9);
}

TEST(RandomOsborne, DenseInstancesAgreeWithGradientDescent) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 3, 6);
    const BalanceProblem prob(g, 1.5, 1e-10);
    const BalanceResult r = random_osborne(prob, trial);
    ASSERT_TRUE(r.converged);
    const std::vector<double> ref = testing::balance_by_gradient_descent(g, 1.5, 200000);
    for (int v = 1; v < g.num_vertices(); ++v)
      EXPECT_NEAR(r.x[v] - r.x[0], ref[v] - ref[0], 1e-4);
  }
}

TEST(RandomOsborne, Errors) {
  const WeightedDigraph path(3, {{0, 1, 1}, {1, 2, 1}, {1, 0, 1}});
  const BalanceProblem path_prob(path, 1.0, 0.1);
  EXPECT_THROW(random_osborne(path_prob, 1), NotStronglyConnected);

  const WeightedDigraph g = complete_digraph(8, -1, 1, 4);
  OsborneOptions opts;
  opts.work_cap = 10.0;
  const BalanceResult capped = random_osborne(BalanceProblem(g, 20.0, 1e-9), 1, opts);
  EXPECT_FALSE(capped.converged);
  EXPECT_FALSE(capped.diagnostic.empty());
  EXPECT_GT(capped.imbalance, 1e-9);
}

TEST(RandomOsborne, DegenerateDeltaReturnsZero) {
  const WeightedDigraph g = complete_digraph(6, -1, 1, 9);
  const BalanceResult r = random_osborne(BalanceProblem(g, 5.0, 2.0), 1);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.steps, 0);
  for (double v : r.x) EXPECT_EQ(v, 0.0);
}

TEST(RandomOsborne, SeedReproducible) {
  const WeightedDigraph g = complete_digraph(10, -1, 1, 2);
  const BalanceProblem prob(g, 8.0, 1e-4);
  const BalanceResult a = random_osborne(prob, 42);
  const BalanceResult b = random_osborne(prob, 42);
  EXPECT_EQ(as_vector(a.x), as_vector(b.x));
  EXPECT_EQ(a.steps, b.steps);
}

TEST(RandomOsborne, AcceptedRunsAreBalancedAndConditioned) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 2, 14, -2, 2);
    const double eta = 0.5 * static_cast<double>(1 + rng() % 40);
    const double delta = std::pow(10.0, -1.0 - static_cast<double>(rng() % 5));
    const BalanceProblem prob(g, eta, delta);
    const BalanceResult r = random_osborne(prob, rng());
    ASSERT_TRUE(r.converged) << r.diagnostic;
    ASSERT_LE(relative_imbalance(r.x, prob), delta * (1 + 1e-9));
    // Sum of A never exceeds sum of K.
    const std::vector<double> zero(g.num_vertices(), 0.0);
    ASSERT_LE(r.log_total, log_total_mass(zero, prob) + 1e-12);
    const int d = testing::diameter_by_floyd(g);
    ASSERT_LE(spread(r.x), d * prob.log_kappa_bound() + 1e-9);
  }
}

TEST(OsborneStep, EqualizesRowAndColumnAndOnlyMovesOneCoordinate) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 2, 10);
    const BalanceProblem prob(g, 3.0, 0.1);
    std::vector<double> x(g.num_vertices());
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (double& v : x) v = gauss(rng);
    const Vertex i = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(g.num_vertices()));
    const std::vector<double> before = x;
    const double before_total = log_total_mass(x, prob);
    osborne_step(x, i, prob);
    EXPECT_NEAR(log_row_sum(x, prob, i), log_col_sum(x, prob, i), 1e-12);
    for (int v = 0; v < g.num_vertices(); ++v)
      if (v != i) {
        ASSERT_EQ(x[v], before[v]);
      }
    // Sum of A never increases.
    ASSERT_LE(log_total_mass(x, prob), before_total + 1e-12);
    // Already balanced at i: no change.
    const double again = osborne_step(x, i, prob);
    EXPECT_NEAR(again, 0.0, 1e-12);
  }
}

TEST(OsborneStep, TwoVertexOneStepBalances) {
  const WeightedDigraph g(2, {{0, 1, 0.4}, {1, 0, 0.1}});
  const BalanceProblem prob(g, 2.0, 1e-12);
  std::vector<double> x{0.0, 0.0};
  osborne_step(x, 0, prob);
  EXPECT_NEAR(relative_imbalance(x, prob), 0.0, 1e-15);
  const WeightedDigraph loose(2, {{0, 1, 0.4}, {0, 0, 1.0}});
  std::vector<double> y{0.0, 0.0};
  const BalanceProblem loose_prob(loose, 1.0, 0.1);
  EXPECT_THROW(osborne_step(y, 0, loose_prob), NotStronglyConnected);
}

TEST(BuildBalancedFlow, Examples) {
  const WeightedDigraph g = complete_digraph(5, 0.5, 0.5, 1);
  const BalanceProblem prob(g, 3.0, 0.1);
  const std::vector<double> zero(5, 0.0);
  const BalancedFlow p = build_balanced_flow(zero, prob);
  for (EdgeId e = 0; e < g.num_edges(); ++e) EXPECT_NEAR(p.p[e], 1.0 / g.num_edges(), 1e-15);
  EXPECT_TRUE(p.p.in_simplex());
  EXPECT_NEAR(p.imbalance, 0.0, 1e-15);
}

TEST(BuildBalancedFlow, DropsTinyEntriesAndRenormalizes) {
  const WeightedDigraph g(3, {{0, 1, 0.0}, {1, 0, 0.0}, {1, 2, 10.0}, {2, 1, 0.0}});
  const BalanceProblem prob(g, 5.0, 0.1);
  const std::vector<double> x(3, 0.0);
  const BalancedFlow p = build_balanced_flow(x, prob, std::log(1e-6));
  EXPECT_EQ(p.dropped, 1u);
  EXPECT_EQ(p.p[2], 0.0);
  EXPECT_TRUE(p.p.in_simplex());
  EXPECT_NEAR(p.p[0], 1.0 / 3.0, 1e-15);
  ImplicitBalancedFlow implicit(x, prob, std::log(1e-6));
  for (EdgeId e = 0; e < 4; ++e) EXPECT_EQ(implicit(e), p.p[e]);
}

TEST(BuildBalancedFlow, TranslationInvariance) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 2, 12);
    const BalanceProblem prob(g, 4.0, 0.01);
    const BalanceResult bal = random_osborne(prob, trial);
    // Dyadic grid: every sum below is exact, so the result must be bit-identical.
    std::vector<double> x(bal.x.begin(), bal.x.end());
    for (double& v : x) v = std::ldexp(std::round(std::ldexp(v, 30)), -30);
    const double c = std::ldexp(static_cast<double>(static_cast<int>(rng() % 2001) - 1000), -6);
    std::vector<double> shifted = x;
    for (double& v : shifted) v += c;
    const BalancedFlow a = build_balanced_flow(x, prob, std::log(1e-7));
    const BalancedFlow b = build_balanced_flow(shifted, prob, std::log(1e-7));
    for (EdgeId e = 0; e < g.num_edges(); ++e) ASSERT_EQ(a.p[e], b.p[e]);
    ASSERT_EQ(a.dropped, b.dropped);

    // Arbitrary shifts: equal up to rounding of x + c.
    const double r = std::uniform_real_distribution<double>(-100, 100)(rng);
    std::vector<double> rough(bal.x.begin(), bal.x.end());
    for (double& v : rough) v += r;
    const BalancedFlow d = build_balanced_flow(rough, prob);
    const BalancedFlow base = build_balanced_flow(bal.x, prob);
    for (EdgeId e = 0; e < g.num_edges(); ++e) ASSERT_NEAR(d.p[e], base.p[e], 1e-12);
  }
}

// <P,W> - H(P)/eta - (-log sum A / eta) = x^T (P1 - P^T 1) / eta.
double gap_identity_residual(const WeightedDigraph& g, std::span<const double> x, double eta) {
  const BalanceProblem prob(g, eta, 0.1);
  const BalancedFlow p = build_balanced_flow(x, prob);
  const double primal = lp_cost(g, p.p) - entropy(p.p.values()) / eta;
  const double dual = -log_total_mass(x, prob) / eta;
  const NetflowVector nf = netflow(g, p.p);  // in - out = -(P1 - P^T 1)
  double linear = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) linear -= x[v] * nf[v];
  return std::abs(primal - dual - linear / eta);
}

TEST(DualityGap, IdentityAndLowerBound) {
  Rng rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 2, 9);
    const double eta = 0.25 * static_cast<double>(1 + rng() % 80);
    std::vector<double> x(g.num_vertices());
    if (trial % 2 == 0) {
      for (double& v : x) v = 3.0 * gauss(rng);
    } else {
      const BalanceResult r = random_osborne(BalanceProblem(g, eta, 1e-3), trial);
      x.assign(r.x.begin(), r.x.end());
    }
    ASSERT_LE(gap_identity_residual(g, x, eta), 1e-8);
    const double mu = testing::brute_force_mu(g);
    const double lb = -log_total_mass(x, BalanceProblem(g, eta, 0.1)) / eta;
    ASSERT_LE(lb, mu + 1e-9);
  }
}

TEST(DualFeasibility, PotentialReweightingBracketsMu) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const WeightedDigraph g = testing::random_instance(rng, 2, 9);
    const double eta = 0.5 * static_cast<double>(1 + rng() % 40);
    const BalanceProblem prob(g, eta, 1e-3);
    const BalanceResult r = random_osborne(prob, trial);
    // p = -x / eta; reduced weights w + p_tail - p_head.
    double min_reduced = std::numeric_limits<double>::infinity();
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      min_reduced = std::min(min_reduced, g.weight(e) + (r.x[g.head(e)] - r.x[g.tail(e)]) / eta);
    const double mu = testing::brute_force_mu(g);
    ASSERT_LE(min_reduced, mu + 1e-9);
    ASSERT_GE(min_reduced, -r.log_total / eta - 1e-9);
  }
}

}  // namespace
}  // namespace mmc
