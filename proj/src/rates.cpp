#include "vgic/rates.hpp"

#include "vgic/errors.hpp"

#include <cmath>

namespace vgic {

namespace {

SymMatrix eye(std::size_t n) { return SymMatrix::identity(n); }

double half_logdet_ipl(const Mat& l, const SymMatrix& s) {
  return 0.5 * logdet(eye(l.rows()) + congruence(l, s));
}

}  // namespace

bool is_feasible(const ChannelMimo& ch, const CovariancePair& pair, double tol) {
  return pair.s1.dim() == ch.t1() && pair.s2.dim() == ch.t2() && is_psd(pair.s1, tol) &&
         is_psd(pair.s2, tol) && pair.s1.trace() <= ch.p1 + tol && pair.s2.trace() <= ch.p2 + tol;
}

double g1(const ChannelMimo& ch, const SymMatrix& s1) { return half_logdet_ipl(ch.h1, s1); }
double g2(const ChannelMimo& ch, const SymMatrix& s2) { return half_logdet_ipl(ch.h2, s2); }

double gs1(const ChannelMimo& ch, const CovariancePair& pair) {
  return 0.5 * logdet(eye(ch.r1()) + congruence(ch.h1, pair.s1) + congruence(ch.f2, pair.s2));
}

double gs2(const ChannelMimo& ch, const CovariancePair& pair) {
  return 0.5 * logdet(eye(ch.r2()) + congruence(ch.h2, pair.s2) + congruence(ch.f1, pair.s1));
}

SymMatrix genie_o(const ChannelMimo& ch, const Mat& a, int user) {
  const Mat& h = ch.h(user);
  const Mat& f = ch.f(user);
  if (a.rows() != h.rows() || a.cols() != f.rows())
    throw ValidationError("genie matrix has the wrong shape");
  const Mat d = h - a * f;
  const std::size_t t = static_cast<std::size_t>(h.cols());
  if (d.norm() <= 1e-10 * std::max(1.0, h.norm())) return SymMatrix::zero(t);
  const SymMatrix b(Mat(Mat::Identity(a.rows(), a.rows()) - a * a.transpose()));
  if (!(min_eigenvalue(b) > 1e-10)) throw GenieDegenerate("I - A A^T is not positive definite");
  return SymMatrix(Mat(0.5 * d.transpose() * b.mat().ldlt().solve(d)));
}

namespace {

// 1/2 logdet(I + S M), M = F^T F + 2 O, written as 1/2 logdet(I + M^{1/2} S M^{1/2}).
SymMatrix genie_mac_root(const ChannelMimo& ch, const Mat& a, int user) {
  const Mat& f = ch.f(user);
  return sqrtm_psd(SymMatrix(Mat(f.transpose() * f)) + 2.0 * genie_o(ch, a, user));
}

}  // namespace

double gbar_s1(const ChannelMimo& ch, const CovariancePair& pair, const Mat& a2) {
  const SymMatrix inter = eye(ch.r1()) + congruence(ch.f2, pair.s2);
  const double first = 0.5 * (logdet(inter + congruence(ch.h1, pair.s1)) - logdet(inter));
  return first + half_logdet_ipl(genie_mac_root(ch, a2, 2).mat(), pair.s2);
}

double gbar_s2(const ChannelMimo& ch, const CovariancePair& pair, const Mat& a1) {
  const SymMatrix inter = eye(ch.r2()) + congruence(ch.f1, pair.s1);
  const double first = 0.5 * (logdet(inter + congruence(ch.h2, pair.s2)) - logdet(inter));
  return first + half_logdet_ipl(genie_mac_root(ch, a1, 1).mat(), pair.s1);
}

SymMatrix waterfill(const Mat& h, double p) {
  const auto ed = sym_eigen(SymMatrix(Mat(h.transpose() * h)));
  const std::size_t n = ed.values.size();
  std::vector<double> inv;
  for (double mu : ed.values)
    if (mu > 1e-14) inv.push_back(1.0 / mu);
  // inv is ascending because values are descending
  std::size_t k = inv.size();
  double level = 0.0;
  while (k > 0) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += inv[j];
    level = (p + s) / static_cast<double>(k);
    if (level > inv[k - 1]) break;
    --k;
  }
  Vec d = Vec::Zero(n);
  for (std::size_t j = 0; j < k; ++j) d(j) = level - inv[j];
  return SymMatrix(Mat(ed.vectors * d.asDiagonal() * ed.vectors.transpose()));
}

// ---------------------------------------------------------------------------

RateExpr& RateExpr::operator+=(const RateExpr& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  return *this;
}

RateExpr expr_g1(const ChannelMimo& ch) { return {{LogDetTerm{0.5, eye(ch.r1()), ch.h1, {}}}}; }
RateExpr expr_g2(const ChannelMimo& ch) { return {{LogDetTerm{0.5, eye(ch.r2()), {}, ch.h2}}}; }

RateExpr expr_gs1(const ChannelMimo& ch) {
  return {{LogDetTerm{0.5, eye(ch.r1()), ch.h1, ch.f2}}};
}

RateExpr expr_gs2(const ChannelMimo& ch) {
  return {{LogDetTerm{0.5, eye(ch.r2()), ch.f1, ch.h2}}};
}

RateExpr expr_gbar_s1(const ChannelMimo& ch, const Mat& a2) {
  RateExpr e = expr_gs1(ch);
  e.terms.push_back(LogDetTerm{-0.5, eye(ch.r1()), {}, ch.f2});
  e.terms.push_back(LogDetTerm{0.5, eye(ch.t2()), {}, genie_mac_root(ch, a2, 2).mat()});
  return e;
}

RateExpr expr_gbar_s2(const ChannelMimo& ch, const Mat& a1) {
  RateExpr e = expr_gs2(ch);
  e.terms.push_back(LogDetTerm{-0.5, eye(ch.r2()), ch.f1, {}});
  e.terms.push_back(LogDetTerm{0.5, eye(ch.t1()), genie_mac_root(ch, a1, 1).mat(), {}});
  return e;
}

namespace {

Mat term_matrix(const LogDetTerm& t, const CovariancePair& pair) {
  Mat m = t.c.mat();
  if (t.l1) m += *t.l1 * pair.s1.mat() * t.l1->transpose();
  if (t.l2) m += *t.l2 * pair.s2.mat() * t.l2->transpose();
  return 0.5 * (m + m.transpose());
}

}  // namespace

double evaluate(const RateExpr& e, const CovariancePair& pair) {
  double v = 0.0;
  for (const auto& t : e.terms) {
    Eigen::LLT<Mat> llt(term_matrix(t, pair));
    if (llt.info() != Eigen::Success) throw DomainError("rate argument is not positive definite");
    v += t.coef * 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }
  return v;
}

std::pair<SymMatrix, SymMatrix> gradient(const RateExpr& e, const CovariancePair& pair) {
  Mat g1m = Mat::Zero(pair.s1.dim(), pair.s1.dim());
  Mat g2m = Mat::Zero(pair.s2.dim(), pair.s2.dim());
  for (const auto& t : e.terms) {
    Eigen::LLT<Mat> llt(term_matrix(t, pair));
    if (llt.info() != Eigen::Success) throw DomainError("rate argument is not positive definite");
    if (t.l1) g1m += t.coef * t.l1->transpose() * llt.solve(*t.l1);
    if (t.l2) g2m += t.coef * t.l2->transpose() * llt.solve(*t.l2);
  }
  return {SymMatrix(g1m), SymMatrix(g2m)};
}

}  // namespace vgic
