#include "vgic/cli.hpp"
#include "vgic/gsi.hpp"
#include "vgic/miso.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace vgic;
using vgic::testing::gauss;
using vgic::testing::random_channel;
using vgic::testing::random_cov;
using vgic::testing::uni;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelMimo scalar_channel(double a, double p) {
  ChannelMimo ch;
  ch.h1 = ch.h2 = Mat::Ones(1, 1);
  ch.f1 = ch.f2 = Mat::Constant(1, 1, std::sqrt(a));
  ch.p1 = ch.p2 = p;
  return ch;
}

const ConditionCheck* find(const GsiVerdict& v, const std::string& name) {
  for (const auto& d : v.details)
    if (d.name == name) return &d;
  return nullptr;
}

}  // namespace

TEST(SolveA, IdentityWhenHEqualsF) {
  std::mt19937_64 rng(21);
  const Mat f = gauss(rng, 2, 2);
  const AMatrixSolution s = solve_a_exact(f, f);
  EXPECT_LT((s.a - Mat::Identity(2, 2)).norm(), 1e-10);
  EXPECT_LT(s.residual, 1e-10);
  EXPECT_TRUE(s.admissible());
}

TEST(SolveA, MarkovEquationHolds) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 20; ++k) {
    const Mat h = gauss(rng, 2, 3), f = gauss(rng, 2, 3);
    const SymMatrix s = random_cov(rng, 3, 1.0);
    const AMatrixSolution sol = solve_a(s, h, f);
    ASSERT_EQ(sol.a.rows(), 2);
    ASSERT_EQ(sol.a.cols(), 2);
    const double res = (s.mat() * h.transpose() - s.mat() * f.transpose() * sol.a.transpose()).norm();
    EXPECT_NEAR(res, sol.residual, 1e-8);
  }
}

// Every solution of A V = W is W V^+ + Z (I - V V^+), so no solution has a
// smaller spectral norm than the minimum-norm one.
TEST(SolveA, SearchNeverBeatsMinimumNorm) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 20; ++k) {
    const Mat v = gauss(rng, 3, 1);  // rank-one covariance along v
    const SymMatrix s(Mat(v * v.transpose()));
    const Mat h = gauss(rng, 3, 3), f = gauss(rng, 3, 3);
    const AMatrixSolution sol = solve_a(s, h, f);
    const Mat w = h * v, u = f * v;
    const double lower = w.norm() / u.norm();
    EXPECT_GT(sol.freedom_dim, 0);
    EXPECT_LT(sol.residual, 1e-8);
    EXPECT_GE(sol.spectral_norm, lower - 1e-9);
    if (lower > 1.0 + 1e-6) EXPECT_FALSE(sol.admissible());
    if (lower < 1.0 - 1e-6) EXPECT_TRUE(sol.admissible());
  }
}

TEST(SolveA, MisoBeamMatchesScalarGenie) {
  for (double theta : {0.1 * kPi, 0.3 * kPi, 0.7 * kPi}) {
    for (double phi : {0.1, 0.6, 1.2}) {
      const MisoEquiv m = zic_miso(1.7, theta, 1.0, 2.0);
      const ChannelMimo ch = to_channel(m);
      const SymMatrix s = miso::beam(phi, m.tau2, m.p2);
      const AMatrixSolution sol = solve_a(s, ch.h2, ch.f2);
      EXPECT_NEAR(sol.a(0, 0), miso::genie_scalar(m.a2, m.theta2, m.tau2, phi), 1e-9);
    }
  }
}

TEST(Certify, PublishedMimoExample) {
  const ChannelMimo ch = cli::example_channel(1);
  const SumRateAnalysis an = analyze_sum_rate(ch);
  ASSERT_TRUE(an.verdict.certified());
  EXPECT_FALSE(an.verdict.genie.a1.has_value());
  ASSERT_TRUE(an.verdict.genie.a2.has_value());
  const Mat a2 = mat_from_rows({{0.2802, 0.5985}, {0.1146, 0.0789}});
  EXPECT_LT((*an.verdict.genie.a2 - a2).cwiseAbs().maxCoeff(), 1e-4);
  EXPECT_LT(genie_o(ch, *an.verdict.genie.a2, 2).mat().norm(), 1e-8);
  // the certified value equals the outer bound built from the returned genie
  const OptResult outer = solve(OptProblem::outer_sum(ch, an.verdict.genie));
  EXPECT_NEAR(outer.objective, an.result.objective, 1e-6);
  // full-rank S1 forces A1 = F1^-1 H1, which is not a contraction
  EXPECT_FALSE(solve_a(an.result.pair.s1, ch.h1, ch.f1).admissible());
  EXPECT_FALSE(classify_regime(ch, 3).strong_classical);
}

TEST(Certify, NoInterferenceCertified) {
  std::mt19937_64 rng(24);
  ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
  ch.f1.setZero();
  ch.f2.setZero();
  const SumRateAnalysis an = analyze_sum_rate(ch);
  EXPECT_TRUE(an.verdict.certified());
  ASSERT_NE(find(an.verdict, "solver_converged"), nullptr);
}

TEST(Certify, InconclusiveWithoutConvergence) {
  const ChannelMimo ch = cli::example_channel(1);
  SumRateAnalysis an = analyze_sum_rate(ch);
  an.result.converged = false;
  const GsiVerdict v = certify_sum_rate(ch, an.result, an.kkt);
  EXPECT_EQ(v.status, VerdictStatus::Inconclusive);
  EXPECT_FALSE(find(v, "solver_converged")->passed);
}

TEST(Certify, LooserToleranceNeverRevokes) {
  std::mt19937_64 rng(25);
  for (int k = 0; k < 8; ++k) {
    const ChannelMimo ch = random_channel(rng, 2, 2, 2, 2);
    const SumRateAnalysis an = analyze_sum_rate(ch);
    const bool tight = certify_sum_rate(ch, an.result, an.kkt, 1e-12).certified();
    const bool loose = certify_sum_rate(ch, an.result, an.kkt, 1e-4).certified();
    if (tight) EXPECT_TRUE(loose);
  }
}

TEST(Certify, DetailNamesForActiveMultiplier) {
  const ChannelMimo ch = cli::example_channel(1);
  const SumRateAnalysis an = analyze_sum_rate(ch);
  EXPECT_NE(find(an.verdict, "A2_exists"), nullptr);
  EXPECT_NE(find(an.verdict, "A2A2^T<=I"), nullptr);
  EXPECT_NE(find(an.verdict, "W2>=lambda1*O2"), nullptr);
  EXPECT_TRUE(find(an.verdict, "lambda2_zero")->passed);
}

TEST(Certify, BoundaryPointsUpperBoundedByOuter) {
  std::mt19937_64 rng(26);
  const ChannelMimo ch = cli::example_channel(1);
  const BoundaryAnalysis ba = certified_boundary(ch, 5);
  for (std::size_t k = 0; k < ba.verdicts.size(); ++k) {
    if (!ba.verdicts[k].certified()) continue;
    const double r = ba.sweep.problems[k].r;
    const OptResult outer = solve(OptProblem::outer_boundary(ch, r, ba.verdicts[k].genie));
    EXPECT_NEAR(outer.objective, ba.sweep.results[k].objective, 1e-6);
  }
}

TEST(Classify, ScalarStrong) {
  const RegimeReport rep = classify_regime(scalar_channel(1.5, 1.0), 3);
  EXPECT_EQ(rep.kind, ChannelKind::Scalar);
  EXPECT_TRUE(rep.strong_classical);
  EXPECT_FALSE(rep.very_strong);
  EXPECT_TRUE(rep.gsi_sum_rate);
  EXPECT_TRUE(classify_regime(scalar_channel(3.0, 1.0), 3).very_strong);
  EXPECT_FALSE(classify_regime(scalar_channel(0.5, 1.0), 3).strong_classical);
}

TEST(Classify, SimoConditions) {
  ChannelMimo ch;
  ch.h1 = mat_from_rows({{1.0}, {0.5}});
  ch.f1 = mat_from_rows({{2.0}, {1.0}});
  ch.h2 = mat_from_rows({{1.0}, {-0.3}});
  ch.f2 = mat_from_rows({{2.5}, {0.4}});
  ch.p1 = ch.p2 = 1.0;
  const RegimeReport rep = classify_regime(ch, 5);
  EXPECT_EQ(rep.kind, ChannelKind::Simo);
  ASSERT_TRUE(rep.simo.has_value());
  const auto direct = miso::simo_conditions(ch.h1.col(0), ch.f1.col(0), ch.h2.col(0), ch.f2.col(0), 1.0, 1.0);
  EXPECT_EQ(rep.simo->gsi_full_region, direct.gsi_full_region);
  EXPECT_EQ(rep.simo->very_strong, direct.very_strong);
  if (direct.gsi_full_region) EXPECT_TRUE(rep.gsi_full_region);
}

TEST(Classify, MisoZicVeryStrong) {
  const RegimeReport rep = classify_regime(to_channel(zic_miso(6.0, 0.1 * kPi, 1.0, 1.0)), 3);
  EXPECT_EQ(rep.kind, ChannelKind::MisoZic);
  ASSERT_TRUE(rep.zic_case.has_value());
  EXPECT_EQ(*rep.zic_case, "TypeI_VeryStrong");
  EXPECT_TRUE(rep.very_strong);
}

TEST(VeryStrong, ScalarThreshold) {
  EXPECT_TRUE(very_strong_general(scalar_channel(4.0, 3.0)));
  EXPECT_FALSE(very_strong_general(scalar_channel(3.9, 3.0)));
}
