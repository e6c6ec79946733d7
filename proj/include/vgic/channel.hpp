#pragma once

#include "vgic/linalg.hpp"

#include <string>

namespace vgic {

/// Links with Frobenius norm at or below this are treated as absent.
inline constexpr double kZeroLinkTol = 1e-12;

/// Two-user Gaussian interference channel
///   y1 = H1 x1 + F2 x2 + z1,  y2 = H2 x2 + F1 x1 + z2.
/// Shapes: h1 r1 x t1, f1 r2 x t1, h2 r2 x t2, f2 r1 x t2.
struct ChannelMimo {
  Mat h1, f1, h2, f2;
  double p1 = 1.0, p2 = 1.0;

  std::size_t t1() const { return static_cast<std::size_t>(h1.cols()); }
  std::size_t t2() const { return static_cast<std::size_t>(h2.cols()); }
  std::size_t r1() const { return static_cast<std::size_t>(h1.rows()); }
  std::size_t r2() const { return static_cast<std::size_t>(h2.rows()); }

  const Mat& h(int user) const { return user == 1 ? h1 : h2; }
  const Mat& f(int user) const { return user == 1 ? f1 : f2; }
  double p(int user) const { return user == 1 ? p1 : p2; }
  std::size_t t(int user) const { return user == 1 ? t1() : t2(); }
};

/// Exact equality of shapes, entries and powers.
bool operator==(const ChannelMimo& a, const ChannelMimo& b);

enum class ChannelKind { GeneralMimo, Simo, Miso, MisoZic, Scalar };

std::string to_string(ChannelKind k);

bool is_zero_link(const Mat& m);

/// Checks shapes, powers and nonzero direct links; returns the shape class.
ChannelKind validate(const ChannelMimo& ch);

/// Reduced two-antenna MISO channel. Per user: h = (cos th, sin th), f = (sqrt(a), 0).
struct MisoEquiv {
  double theta1 = 0.0, theta2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double p1 = 1.0, p2 = 1.0;
  int tau1 = 1, tau2 = 1;
};

/// One user's share of the reduction together with the plane it lives in.
struct MisoUserReduction {
  double theta = 0.0;
  double a = 0.0;
  double p = 1.0;
  int tau = 1;
  Mat basis;           // t x 2, orthonormal columns (second may be zero when t == 1)
  double h_norm = 1.0;
};

MisoUserReduction reduce_miso_user(const Vec& hhat, const Vec& fhat, double phat);

MisoEquiv reduce_miso(const Vec& hhat1, const Vec& fhat1, const Vec& hhat2, const Vec& fhat2,
                      double phat1, double phat2);

/// Reduction of a channel whose receivers each have one antenna.
MisoEquiv reduce_miso(const ChannelMimo& ch);

/// Maps a 2x2 covariance of the reduced channel back to the original antennas.
SymMatrix lift_covariance(const SymMatrix& s_equiv, const MisoUserReduction& red);

/// The reduced channel written out as an ordinary 1x2 MISO channel.
ChannelMimo to_channel(const MisoEquiv& m);

/// Symmetric reduced channel with theta, a, P shared by both users.
MisoEquiv symmetric_miso(double a, double theta, double p);

/// Reduced Z channel: user 1 causes no interference.
MisoEquiv zic_miso(double a, double theta, double p1, double p2);

}  // namespace vgic
