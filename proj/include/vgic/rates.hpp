#pragma once

#include "vgic/channel.hpp"
#include "vgic/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace vgic {

struct CovariancePair {
  SymMatrix s1, s2;

  const SymMatrix& s(int user) const { return user == 1 ? s1 : s2; }
  SymMatrix& s(int user) { return user == 1 ? s1 : s2; }
};

/// Genie correlation matrices. a1 is r1 x r2, a2 is r2 x r1; an absent entry means
/// the matching outer constraint is dropped.
struct GenieParam {
  std::optional<Mat> a1, a2;

  const std::optional<Mat>& a(int user) const { return user == 1 ? a1 : a2; }
};

/// True when both covariances are PSD and within their power budgets.
bool is_feasible(const ChannelMimo& ch, const CovariancePair& pair, double tol = kPsdTol);

double g1(const ChannelMimo& ch, const SymMatrix& s1);
double g2(const ChannelMimo& ch, const SymMatrix& s2);
double gs1(const ChannelMimo& ch, const CovariancePair& pair);
double gs2(const ChannelMimo& ch, const CovariancePair& pair);

/// O_i = 1/2 (H_i - A_i F_i)^T (I - A_i A_i^T)^{-1} (H_i - A_i F_i).
/// When H_i = A_i F_i exactly the result is 0 even if I - A_i A_i^T is singular.
SymMatrix genie_o(const ChannelMimo& ch, const Mat& a, int user);

double gbar_s1(const ChannelMimo& ch, const CovariancePair& pair, const Mat& a2);
double gbar_s2(const ChannelMimo& ch, const CovariancePair& pair, const Mat& a1);

/// Single-user optimal covariance for 1/2 logdet(I + H S H^T), tr S <= p.
SymMatrix waterfill(const Mat& h, double p);

// ---------------------------------------------------------------------------
// Rates as sums of  coef * logdet(C + L1 S1 L1^T + L2 S2 L2^T).
// Used by the optimizer and by multiplier recovery (gradients are the
// stationarity terms).

struct LogDetTerm {
  double coef = 0.5;
  SymMatrix c;          // constant PD part
  std::optional<Mat> l1, l2;

  const std::optional<Mat>& l(int user) const { return user == 1 ? l1 : l2; }
};

struct RateExpr {
  std::vector<LogDetTerm> terms;

  RateExpr& operator+=(const RateExpr& o);
};

RateExpr expr_g1(const ChannelMimo& ch);
RateExpr expr_g2(const ChannelMimo& ch);
RateExpr expr_gs1(const ChannelMimo& ch);
RateExpr expr_gs2(const ChannelMimo& ch);
RateExpr expr_gbar_s1(const ChannelMimo& ch, const Mat& a2);
RateExpr expr_gbar_s2(const ChannelMimo& ch, const Mat& a1);

double evaluate(const RateExpr& e, const CovariancePair& pair);

/// Gradient with respect to (S1, S2).
std::pair<SymMatrix, SymMatrix> gradient(const RateExpr& e, const CovariancePair& pair);

}  // namespace vgic
