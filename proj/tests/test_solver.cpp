#include "vgic/cli.hpp"
#include "vgic/solver.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace vgic;
using vgic::testing::random_channel;
using vgic::testing::random_contraction;
using vgic::testing::random_cov;

namespace {

bool has_tag(const std::vector<RateConstraint>& cs, const std::string& tag) {
  return std::any_of(cs.begin(), cs.end(), [&](const RateConstraint& c) { return c.tag == tag; });
}

}  // namespace

TEST(Solver, ZeroInterferenceIsTwoSingleUsers) {
  std::mt19937_64 rng(11);
  ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
  ch.f1.setZero();
  ch.f2.setZero();
  const OptResult res = solve(OptProblem::inner_sum(ch));
  ASSERT_TRUE(res.converged);
  EXPECT_NEAR(res.objective, max_r1(ch) + max_r2(ch), 1e-6);
  EXPECT_NEAR(max_r1(ch), g1(ch, waterfill(ch.h1, ch.p1)), 1e-12);
}

TEST(Solver, BeatsRandomCovariances) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 5; ++k) {
    const ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
    const OptProblem p = OptProblem::inner_sum(ch);
    const OptResult res = solve(p);
    ASSERT_TRUE(res.converged);
    EXPECT_TRUE(is_feasible(ch, res.pair));
    EXPECT_NEAR(objective_at(p, res.pair), res.objective, 1e-6);
    double best = -1.0;
    for (int j = 0; j < 5000; ++j)
      best = std::max(best, objective_at(p, {random_cov(rng, 2, ch.p1), random_cov(rng, 2, ch.p2)}));
    EXPECT_GE(res.objective, best - 1e-7);
  }
}

TEST(Solver, KktResidualsSmall) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 5; ++k) {
    const ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
    const OptProblem p = OptProblem::inner_sum(ch);
    const OptResult res = solve(p);
    const KktCertificate c = recover_kkt(p, res);
    EXPECT_LT(c.residuals.stationarity, 1e-3);
    EXPECT_LT(c.residuals.complementarity, 1e-3);
    EXPECT_GT(c.residuals.min_eig_w, -1e-6);
    EXPECT_LT(c.residuals.simplex, 1e-9);
    for (const auto& [tag, m] : c.multipliers) EXPECT_GE(m, 0.0) << tag;
  }
}

TEST(Solver, PublishedMimoSumRate) {
  const ChannelMimo ch = cli::example_channel(1);
  const OptProblem p = OptProblem::inner_sum(ch);
  const OptResult res = solve(p);
  ASSERT_TRUE(res.converged);
  EXPECT_NEAR(res.objective, 3.2998, 5e-5);
  const Mat s1 = mat_from_rows({{8.2319, 0.3636}, {0.3636, 1.7681}});
  const Mat s2 = mat_from_rows({{7.7370, 4.1843}, {4.1843, 2.2630}});
  EXPECT_LT((res.pair.s1.mat() - s1).cwiseAbs().maxCoeff(), 2e-3);
  EXPECT_LT((res.pair.s2.mat() - s2).cwiseAbs().maxCoeff(), 2e-3);

  const KktCertificate c = recover_kkt(p, res);
  EXPECT_NEAR(c.lambdas_or_betas[0], 1.0, 1e-4);
  EXPECT_NEAR(c.lambdas_or_betas[1], 0.0, 1e-4);
  EXPECT_NEAR(c.etas_or_nus[0], 0.0545, 1e-4);
  EXPECT_NEAR(c.etas_or_nus[1], 0.0394, 1e-4);
  EXPECT_LT(c.w_or_k[0].mat().norm(), 1e-6);
  const Mat w2 = mat_from_rows({{0.3794, -0.7015}, {-0.7015, 1.2972}}) * 1e-2;
  EXPECT_LT((c.w_or_k[1].mat() - w2).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Solver, BoundaryMonotoneAndEndpoints) {
  std::mt19937_64 rng(14);
  const ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
  const BoundarySweep sw = boundary_sweep(ch, 9, false);
  ASSERT_EQ(sw.polyline.points.size(), 9u);
  EXPECT_TRUE(sw.monotone);
  EXPECT_NEAR(sw.r_max, max_r2(ch), 1e-12);
  EXPECT_NEAR(sw.polyline.points.front().r2, 0.0, 1e-12);
  EXPECT_NEAR(sw.polyline.points.back().r2, sw.r_max, 1e-12);
  for (std::size_t k = 1; k < sw.polyline.points.size(); ++k)
    EXPECT_LE(sw.polyline.points[k].r1, sw.polyline.points[k - 1].r1 + 1e-7);
  for (const auto& pt : sw.polyline.points) EXPECT_LE(pt.r1, max_r1(ch) + 1e-9);
  EXPECT_TRUE(sw.results.back().endpoint);
}

TEST(Solver, OuterBoundDominatesInner) {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 5; ++k) {
    const ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
    GenieParam g;
    g.a1 = random_contraction(rng, 2, 2, 0.9);
    g.a2 = random_contraction(rng, 2, 2, 0.9);
    const double inner = solve(OptProblem::inner_sum(ch)).objective;
    const double outer = solve(OptProblem::outer_sum(ch, g)).objective;
    EXPECT_GE(outer, inner - 1e-7);
    const double r = 0.5 * max_r2(ch);
    EXPECT_GE(solve(OptProblem::outer_boundary(ch, r, g)).objective,
              solve(OptProblem::inner_boundary(ch, r)).objective - 1e-7);
  }
}

TEST(Solver, ConstraintPruning) {
  std::mt19937_64 rng(16);
  ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
  auto cs = build_constraints(OptProblem::inner_sum(ch));
  EXPECT_TRUE(has_tag(cs, kTagRx1));
  EXPECT_TRUE(has_tag(cs, kTagRx2));
  EXPECT_TRUE(has_tag(cs, kTagSumSingle));
  ch.f2.setZero();
  cs = build_constraints(OptProblem::inner_sum(ch));
  EXPECT_FALSE(has_tag(cs, kTagRx1));
  EXPECT_TRUE(has_tag(cs, kTagRx2));

  GenieParam g;
  g.a1 = random_contraction(rng, 2, 2, 0.5);
  const ChannelMimo full = random_channel(rng, 2, 2, 2, 2);
  cs = build_constraints(OptProblem::outer_sum(full, g));
  EXPECT_FALSE(has_tag(cs, kTagRx1));
  EXPECT_TRUE(has_tag(cs, kTagRx2));

  cs = build_constraints(OptProblem::inner_boundary(full, 0.3));
  EXPECT_TRUE(has_tag(cs, kTagR1));
  EXPECT_TRUE(has_tag(cs, kTagR2));
}
