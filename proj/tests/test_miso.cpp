#include "vgic/errors.hpp"
#include "vgic/gsi.hpp"
#include "vgic/miso.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace vgic;
using namespace vgic::miso;

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

const ZicCorner* corner(const ZicBoundary& b, const std::string& name) {
  for (const auto& c : b.corners)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(Zic, PhiEzEqualizesBounds) {
  for (double a : {0.5, 2.0, 7.0})
    for (double th : {0.05 * kPi, 0.2 * kPi, 0.45 * kPi})
      for (double p1 : {0.3, 2.0, 9.0}) {
        const double phi = phi_ez(a, th, p1);
        // (1 + P1) sin^2(theta + phi) = a sin^2(phi)
        EXPECT_NEAR((1 + p1) * sq(std::sin(th + phi)), a * sq(std::sin(phi)), 1e-10);
        EXPECT_GE(phi, 0.0);
        EXPECT_LE(phi, kPi);
      }
}

TEST(Zic, BranchesContinuous) {
  const double th = 0.2 * kPi, p1 = 2.0, p2 = 0.7;
  const double c2 = sq(std::cos(th));
  // branch 2 / branch 3 switch at a = (1 + P1) cos^2
  const double a23 = (1 + p1) * c2;
  const ZicSumRateCase lo = zic_sum_rate(zic_miso(a23 * (1 - 1e-9), th, p1, p2));
  const ZicSumRateCase hi = zic_sum_rate(zic_miso(a23 * (1 + 1e-9), th, p1, p2));
  EXPECT_NE(lo.branch, hi.branch);
  EXPECT_NEAR(lo.sum_rate, hi.sum_rate, 1e-7);
  // branch 1 / branch 2 switch at a = (1 + P1) / cos^2
  const double a12 = (1 + p1) / c2;
  const ZicSumRateCase v = zic_sum_rate(zic_miso(a12 * (1 + 1e-9), th, p1, p2));
  const ZicSumRateCase w = zic_sum_rate(zic_miso(a12 * (1 - 1e-9), th, p1, p2));
  EXPECT_EQ(v.branch, 1);
  EXPECT_EQ(w.branch, 3);  // branch 2 would need cos^4 >= 1 here
  EXPECT_NEAR(v.sum_rate, w.sum_rate, 1e-7);
}

TEST(Zic, SumRateMatchesBeamScanAndSolver) {
  for (double a : {0.4, 1.2, 2.0, 6.0})
    for (double th : {0.1 * kPi, 0.2 * kPi, 0.35 * kPi}) {
      const MisoEquiv m = zic_miso(a, th, 1.5, 0.8);
      const double closed = zic_sum_rate(m).sum_rate;
      EXPECT_NEAR(closed, sum_rate_phi_scan(m).sum_rate, 1e-8) << a << " " << th;
      EXPECT_NEAR(closed, solve(OptProblem::inner_sum(to_channel(m))).objective, 1e-6) << a << " " << th;
    }
}

TEST(Zic, BranchThreeRateIsSingleUserSumAtPhiEz) {
  const MisoEquiv m = zic_miso(2.0, 0.2 * kPi, 2.0, 0.4);
  const ZicSumRateCase c = zic_sum_rate(m);
  ASSERT_EQ(c.branch, 3);
  const double single = 0.5 * std::log1p(m.p1) + 0.5 * std::log1p(m.p2 * sq(std::sin(m.theta2 + c.phi_ez)));
  EXPECT_NEAR(c.sum_rate, single, 1e-12);
}

TEST(Zic, TypeTwoNeedsPositiveDenominator) {
  // branch 2 with P2 sin^2(theta) >= 1
  const MisoEquiv m = zic_miso(1.0, 0.2 * kPi, 1.0, 4.0);
  const ZicSumRateCase c = zic_sum_rate(m);
  EXPECT_EQ(c.branch, 2);
  EXPECT_EQ(c.case_tag, ZicTag::None);
  EXPECT_FALSE(c.certified);
}

TEST(Zic, TrivialCases) {
  for (const MisoEquiv& m : {zic_miso(2.0, kPi / 2, 1.0, 1.0), zic_miso(0.0, 0.3, 1.0, 1.0)}) {
    const ZicSumRateCase c = zic_sum_rate(m);
    EXPECT_EQ(c.case_tag, ZicTag::Trivial);
    EXPECT_NEAR(c.sum_rate, 0.5 * std::log(2.0) * 2, 1e-12);
  }
}

TEST(Zic, MirroredAngleSameRegime) {
  for (double th : {0.1 * kPi, 0.3 * kPi}) {
    const ZicSumRateCase c = zic_sum_rate(zic_miso(1.2, th, 0.5, 0.5));
    const ZicSumRateCase d = zic_sum_rate(zic_miso(1.2, kPi - th, 0.5, 0.5));
    EXPECT_EQ(c.case_tag, d.case_tag);
    EXPECT_NEAR(c.sum_rate, d.sum_rate, 1e-12);
  }
}

TEST(Zic, SmallAngleThreshold) {
  // theta -> 0: very strong exactly when a >= 1 + P1
  EXPECT_EQ(zic_sum_rate(zic_miso(3.1, 1e-6, 2.0, 1.0)).branch, 1);
  EXPECT_NE(zic_sum_rate(zic_miso(2.9, 1e-6, 2.0, 1.0)).branch, 1);
}

TEST(Zic, PublishedTypeTwo) {
  const MisoEquiv m = zic_miso(1.2, 0.1 * kPi, 0.5, 0.5);
  const ZicSumRateCase c = zic_sum_rate(m);
  EXPECT_EQ(c.case_tag, ZicTag::TypeII);
  EXPECT_NEAR(c.sum_rate, 0.3710, 1e-4);
  const ZicBoundary b = zic_boundary(m, 33);
  for (const auto& pt : b.polyline.points) EXPECT_TRUE(pt.certified);
  ASSERT_NE(corner(b, "C1"), nullptr);
  EXPECT_NEAR(corner(b, "C1")->r1, 0.1544, 1e-4);
  EXPECT_NEAR(corner(b, "C1")->r2, 0.2027, 1e-4);
  EXPECT_NEAR(corner(b, "B")->r1, 0.1844, 1e-4);
  EXPECT_NEAR(corner(b, "B")->r2, 0.1866, 1e-4);
  EXPECT_NEAR(corner(b, "C2")->r1, 0.2027, 1e-4);
  EXPECT_NEAR(corner(b, "C2")->r2, 0.1682, 1e-4);
}

TEST(Zic, PublishedTypeThree) {
  const MisoEquiv m = zic_miso(2.0, 0.2 * kPi, 2.0, 0.4);
  const ZicSumRateCase c = zic_sum_rate(m);
  EXPECT_EQ(c.case_tag, ZicTag::TypeIII);
  EXPECT_NEAR(c.phi_ez / kPi, 0.4959, 1e-4);
  EXPECT_NEAR(c.sum_rate, 0.6675, 1e-4);
  const ZicBoundary b = zic_boundary(m, 33);
  for (const auto& pt : b.polyline.points) EXPECT_TRUE(pt.certified);
  EXPECT_NEAR(corner(b, "C1")->r1, 0.4615, 1e-4);
  EXPECT_NEAR(corner(b, "C1")->r2, 0.1682, 1e-4);
  EXPECT_NEAR(corner(b, "C2")->r1, 0.5493, 1e-4);
  EXPECT_NEAR(corner(b, "C2")->r2, 0.1182, 1e-4);
}

TEST(Zic, PublishedPartialBoundary) {
  const MisoEquiv m = zic_miso(6.0, 0.2 * kPi, 9.0, 3.0);
  const ZicBoundary b = zic_boundary(m, 33);
  ASSERT_EQ(b.q_roots.size(), 1u);
  EXPECT_NEAR(b.q_roots[0] / kPi, 0.3748, 1e-4);
  EXPECT_NEAR(zic_q(m, b.q_roots[0]), 0.0, 1e-9);
  const auto [r1c, r2c] = zic_boundary_rates(m, kPi / 2 - 0.2 * kPi);
  EXPECT_NEAR(r1c, 0.8474, 1e-4);
  EXPECT_NEAR(r2c, 0.6931, 1e-4);
  const auto [r1b, r2b] = zic_boundary_rates(m, b.q_roots[0]);
  EXPECT_NEAR(r1b, 0.9442, 1e-4);
  EXPECT_NEAR(r2b, 0.6724, 1e-4);

  // genies tight at C and at B
  const double ac = genie_scalar(m.a2, m.theta2, m.tau2, kPi / 2 - 0.2 * kPi);
  const double ab = genie_scalar(m.a2, m.theta2, m.tau2, b.q_roots[0]);
  EXPECT_NEAR(std::abs(ac), 0.5046, 1e-4);
  EXPECT_NEAR(std::abs(ab), 0.4298, 1e-4);
  EXPECT_NEAR(zic_outer_r1(m, ac, r2c), r1c, 1e-6);
  EXPECT_NEAR(zic_outer_r1(m, ab, r2b), r1b, 1e-6);
  // every inner point lies under both outer bounds
  for (const auto& pt : b.polyline.points) {
    EXPECT_LE(pt.r1, zic_outer_r1(m, ac, pt.r2) + 1e-7);
    EXPECT_LE(pt.r1, zic_outer_r1(m, ab, pt.r2) + 1e-7);
  }
}

// A nonnegative Q at a beam angle means the general MIMO certificate also
// accepts the matching boundary point. The r = max g2 end is skipped: S2 is
// pinned there and the multipliers need not exist.
TEST(Zic, QAgreesWithGeneralCertificate) {
  const MisoEquiv m = zic_miso(6.0, 0.2 * kPi, 9.0, 3.0);
  const ChannelMimo ch = to_channel(m);
  const ZicBoundary b = zic_boundary(m, 9);
  SolverOptions o;
  for (const auto& pt : b.polyline.points) {
    if (!(pt.q >= 1e-6)) continue;
    const OptProblem p = OptProblem::inner_boundary(ch, pt.r2);
    const OptResult res = solve(p, o);
    if (res.endpoint) continue;
    EXPECT_NEAR(res.objective, pt.r1, 1e-5);
    const GsiVerdict v = certify_boundary_point(ch, res, pt.r2, recover_kkt(p, res, o));
    EXPECT_TRUE(v.certified()) << pt.phi / kPi;
  }
}

TEST(Sym, PublishedCaseThree) {
  const SymMisoCase c = sym_sum_rate(symmetric_miso(2.0, 0.2 * kPi, 1.0));
  EXPECT_EQ(c.case_tag, SymTag::III);
  EXPECT_TRUE(c.certified);
  EXPECT_NEAR(c.phi_star / kPi, 0.3902, 1e-4);
  EXPECT_NEAR(c.sum_rate, 0.6532, 1e-4);
  EXPECT_NEAR(c.gamma, 0.2627, 1e-4);
  EXPECT_NEAR(c.lambda, 0.3686, 1e-4);
  EXPECT_NEAR(c.eta, 0.1974, 1e-4);
  EXPECT_NEAR(c.k, 0.1768, 1e-4);
  EXPECT_NEAR(c.lambda_o_scale, 0.1499, 1e-4);
}

TEST(Sym, PublishedCaseTwo) {
  const SymMisoCase c = sym_sum_rate(symmetric_miso(2.0, 0.1 * kPi, 4.0));
  EXPECT_EQ(c.case_tag, SymTag::II);
  EXPECT_TRUE(c.certified);
  EXPECT_NEAR(c.phi_star / kPi, 0.4672, 1e-4);
  EXPECT_NEAR(c.sum_rate, 1.2724, 1e-4);
  EXPECT_NEAR(c.gamma, 0.0, 1e-9);
  EXPECT_NEAR(c.lambda, 0.5, 1e-9);
  EXPECT_NEAR(c.eta, 0.0576, 1e-4);
  EXPECT_NEAR(c.k, 0.0563, 1e-4);
  EXPECT_NEAR(c.lambda_o_scale, 0.0467, 1e-4);
}

TEST(Sym, SumRateMatchesSolver) {
  for (double a : {0.5, 2.0, 5.0})
    for (double th : {0.1 * kPi, 0.3 * kPi}) {
      const MisoEquiv m = symmetric_miso(a, th, 1.0);
      EXPECT_NEAR(sym_sum_rate(m).sum_rate, solve(OptProblem::inner_sum(to_channel(m))).objective, 1e-6)
          << a << " " << th;
    }
}

TEST(Sym, RejectsAsymmetric) {
  MisoEquiv m = symmetric_miso(2.0, 0.2 * kPi, 1.0);
  m.p2 = 2.0;
  EXPECT_THROW(sym_sum_rate(m), ValidationError);
}

TEST(Regime, GridShapeAndTags) {
  const auto a = linspace(0.1, 10.0, 6), th = linspace(0.01 * kPi, 0.49 * kPi, 5);
  const auto cells = regime_map_zic(1.0, 1.0, a, th);
  ASSERT_EQ(cells.size(), a.size() * th.size());
  for (const auto& c : cells) {
    const ZicSumRateCase z = zic_sum_rate(zic_miso(c.a, c.theta, 1.0, 1.0));
    EXPECT_EQ(c.tag, to_string(z.case_tag));
    EXPECT_EQ(c.certified, z.certified);
  }
  EXPECT_EQ(linspace(0.0, 1.0, 3), (std::vector<double>{0.0, 0.5, 1.0}));
}
