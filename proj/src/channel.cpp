#include "vgic/channel.hpp"

#include "vgic/errors.hpp"

#include <cmath>

namespace vgic {

std::string to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::GeneralMimo: return "GeneralMimo";
    case ChannelKind::Simo: return "Simo";
    case ChannelKind::Miso: return "Miso";
    case ChannelKind::MisoZic: return "MisoZic";
    case ChannelKind::Scalar: return "Scalar";
  }
  return "?";
}

bool is_zero_link(const Mat& m) { return m.size() == 0 || m.norm() <= kZeroLinkTol; }

bool operator==(const ChannelMimo& a, const ChannelMimo& b) {
  auto same = [](const Mat& x, const Mat& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && (x.array() == y.array()).all();
  };
  return same(a.h1, b.h1) && same(a.f1, b.f1) && same(a.h2, b.h2) && same(a.f2, b.f2) && a.p1 == b.p1 &&
         a.p2 == b.p2;
}

ChannelKind validate(const ChannelMimo& ch) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(what);
  };
  require(ch.h1.size() > 0 && ch.h2.size() > 0, "direct links must be non-empty");
  require(ch.f1.rows() == ch.h2.rows() && ch.f1.cols() == ch.h1.cols(),
          "f1 must be rows(h2) x cols(h1)");
  require(ch.f2.rows() == ch.h1.rows() && ch.f2.cols() == ch.h2.cols(),
          "f2 must be rows(h1) x cols(h2)");
  require(all_finite(ch.h1) && all_finite(ch.h2) && all_finite(ch.f1) && all_finite(ch.f2),
          "channel entries must be finite");
  require(!is_zero_link(ch.h1) && !is_zero_link(ch.h2), "direct links H1, H2 must be nonzero");
  require(std::isfinite(ch.p1) && std::isfinite(ch.p2) && ch.p1 > 0.0 && ch.p2 > 0.0,
          "powers must be positive");

  const bool single_tx = ch.t1() == 1 && ch.t2() == 1;
  const bool single_rx = ch.r1() == 1 && ch.r2() == 1;
  if (single_tx && single_rx) return ChannelKind::Scalar;
  if (single_tx) return ChannelKind::Simo;
  if (single_rx) return is_zero_link(ch.f1) ? ChannelKind::MisoZic : ChannelKind::Miso;
  return ChannelKind::GeneralMimo;
}

MisoUserReduction reduce_miso_user(const Vec& hhat, const Vec& fhat, double phat) {
  if (hhat.size() == 0 || hhat.norm() <= kZeroLinkTol) throw ValidationError("zero direct link");
  if (fhat.size() != hhat.size()) throw ValidationError("h and f must have the same length");
  const Eigen::Index t = hhat.size();
  MisoUserReduction r;
  r.h_norm = hhat.norm();
  r.p = phat * r.h_norm * r.h_norm;
  r.basis = Mat::Zero(t, 2);
  Vec e1;
  if (fhat.norm() <= kZeroLinkTol) {
    r.theta = 0.0;
    r.a = 0.0;
    e1 = hhat / r.h_norm;
  } else {
    const double fn = fhat.norm();
    e1 = fhat / fn;
    const double par = hhat.dot(e1);
    const Vec perp = hhat - par * e1;
    r.theta = std::atan2(perp.norm(), par);
    r.a = (fn * fn) / (r.h_norm * r.h_norm);
    if (perp.norm() > 1e-14 * r.h_norm) r.basis.col(1) = perp / perp.norm();
  }
  r.basis.col(0) = e1;
  if (r.basis.col(1).norm() == 0.0 && t > 1) {
    // any unit vector orthogonal to e1
    Eigen::Index k = 0;
    e1.cwiseAbs().minCoeff(&k);
    Vec g = Vec::Zero(t);
    g(k) = 1.0;
    g -= g.dot(e1) * e1;
    r.basis.col(1) = g / g.norm();
  }
  r.tau = std::cos(r.theta) >= 0.0 ? 1 : -1;
  return r;
}

MisoEquiv reduce_miso(const Vec& hhat1, const Vec& fhat1, const Vec& hhat2, const Vec& fhat2,
                      double phat1, double phat2) {
  const auto u1 = reduce_miso_user(hhat1, fhat1, phat1);
  const auto u2 = reduce_miso_user(hhat2, fhat2, phat2);
  return MisoEquiv{u1.theta, u2.theta, u1.a, u2.a, u1.p, u2.p, u1.tau, u2.tau};
}

MisoEquiv reduce_miso(const ChannelMimo& ch) {
  if (ch.r1() != 1 || ch.r2() != 1) throw ValidationError("MISO reduction needs single-antenna receivers");
  return reduce_miso(ch.h1.row(0).transpose(), ch.f1.row(0).transpose(), ch.h2.row(0).transpose(),
                     ch.f2.row(0).transpose(), ch.p1, ch.p2);
}

SymMatrix lift_covariance(const SymMatrix& s_equiv, const MisoUserReduction& red) {
  if (s_equiv.dim() != 2) throw ValidationError("equivalent covariance must be 2x2");
  const Mat s = red.basis * s_equiv.mat() * red.basis.transpose() / (red.h_norm * red.h_norm);
  return SymMatrix(s);
}

ChannelMimo to_channel(const MisoEquiv& m) {
  ChannelMimo ch;
  ch.h1 = mat_from_rows({{std::cos(m.theta1), std::sin(m.theta1)}});
  ch.f1 = mat_from_rows({{std::sqrt(m.a1), 0.0}});
  ch.h2 = mat_from_rows({{std::cos(m.theta2), std::sin(m.theta2)}});
  ch.f2 = mat_from_rows({{std::sqrt(m.a2), 0.0}});
  ch.p1 = m.p1;
  ch.p2 = m.p2;
  return ch;
}

MisoEquiv symmetric_miso(double a, double theta, double p) {
  const int tau = std::cos(theta) >= 0.0 ? 1 : -1;
  return MisoEquiv{theta, theta, a, a, p, p, tau, tau};
}

MisoEquiv zic_miso(double a, double theta, double p1, double p2) {
  const int tau = std::cos(theta) >= 0.0 ? 1 : -1;
  return MisoEquiv{0.0, theta, 0.0, a, p1, p2, 1, tau};
}

}  // namespace vgic
