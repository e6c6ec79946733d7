#pragma once

// Closed forms for reduced two-antenna MISO channels and for SIMO channels.
// Angles are radians unless a name ends in _over_pi.

#include "vgic/channel.hpp"
#include "vgic/linalg.hpp"
#include "vgic/solver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vgic::miso {

/// argmax of f on [lo, hi] by golden section down to `tol` bracket width.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

/// Coarse scan with n samples, then golden section around the best sample.
double scan_max(const std::function<double(double)>& f, double lo, double hi, int n = 512,
                double tol = 1e-10);

/// Beam covariance p u u^T with u = (sin phi, tau cos phi).
SymMatrix beam(double phi, int tau, double p);

/// The four bounds of the beamforming region at (phi1, phi2).
struct RegionBounds {
  double r1 = 0.0, r2 = 0.0, sum_rx1 = 0.0, sum_rx2 = 0.0;
  double max_sum() const;  // min(r1 + r2, sum_rx1, sum_rx2)
};
RegionBounds miso_region_point(const MisoEquiv& ch, double phi1, double phi2);

struct PhiScanResult {
  double sum_rate = 0.0;
  double phi1 = 0.0, phi2 = 0.0;
};

/// Largest sum rate of the beamforming region by nested one-dimensional
/// searches over (phi1, phi2). A ZIC (a1 == 0) drops the receiver-2 sum bound.
PhiScanResult sum_rate_phi_scan(const MisoEquiv& ch);

/// Scalar genie A making S h = S f A hold for the beam at phi.
double genie_scalar(double a, double theta, int tau, double phi);

// --- Z channel (user 1 causes no interference; uses a2, theta2) --------------

enum class ZicTag { TypeI_VeryStrong, TypeII, TypeIII, None, Trivial };
std::string to_string(ZicTag t);

/// phi_ez: beam angle where the single-user bound of user 1 meets the sum bound.
double phi_ez(double a, double theta, double p1);

struct ZicSumRateCase {
  ZicTag case_tag = ZicTag::None;
  int branch = 0;          // which of the three sum-rate formulas applies (1, 2, 3)
  double phi_opt = 0.0;
  double sum_rate = 0.0;
  double phi_ez = 0.0;     // defined for every branch
  bool certified = false;
};

ZicSumRateCase zic_sum_rate(const MisoEquiv& ch);

/// Boundary certificate function Q(phi).
double zic_q(const MisoEquiv& ch, double phi);

struct ZicCorner {
  std::string name;
  double r1 = 0.0, r2 = 0.0;
};

struct ZicBoundary {
  RegionPolyline polyline;        // phi ascending over the interval
  double phi_lo = 0.0, phi_hi = 0.0;
  std::vector<double> q_roots;    // sign changes of Q inside the interval
  std::vector<ZicCorner> corners;
  bool very_strong = false;
};

ZicBoundary zic_boundary(const MisoEquiv& ch, int n_points);

/// Boundary rates of the inner region at beam angle phi.
std::pair<double, double> zic_boundary_rates(const MisoEquiv& ch, double phi);

/// Outer bound for a fixed scalar genie |A| < 1, swept uniformly in R2.
RegionPolyline zic_outer_bound(const MisoEquiv& ch, double a_scalar, int n_points,
                               const SolverOptions& opts = {});

/// Outer-bound R1 at a given R2 for a fixed scalar genie.
double zic_outer_r1(const MisoEquiv& ch, double a_scalar, double r2, const SolverOptions& opts = {});

// --- symmetric channel -----------------------------------------------------------

enum class SymTag { I, II, III };
std::string to_string(SymTag t);

double q_u(double a, double theta, double p, double phi);
double q_s(double a, double theta, double p, double phi);
double phi_s(double a, double theta);

struct SymMisoCase {
  SymTag case_tag = SymTag::I;
  double phi_star = 0.0;
  double sum_rate = 0.0;
  double lambda = 0.0, gamma = 0.0, d = 0.0;
  double k = 0.0;               // scale of W
  double lambda_o_scale = 0.0;  // scale of lambda O on the same direction
  double eta = 0.0;
  double genie = 0.0;           // scalar A at the optimum
  bool certified = false;
};

SymMisoCase sym_sum_rate(const MisoEquiv& ch);

// --- SIMO ------------------------------------------------------------------------

struct SimoReport {
  bool gsi_full_region = false;
  bool very_strong = false;
};

SimoReport simo_conditions(const Vec& h1, const Vec& f1, const Vec& h2, const Vec& f2, double p1,
                           double p2);

// --- regime maps -----------------------------------------------------------------

struct RegimeCell {
  double a = 0.0, theta = 0.0;
  std::string tag;
  bool certified = false;
  double sum_rate = 0.0;
};

std::vector<RegimeCell> regime_map_zic(double p1, double p2, const std::vector<double>& a_grid,
                                       const std::vector<double>& theta_grid);
std::vector<RegimeCell> regime_map_sym(double p, const std::vector<double>& a_grid,
                                       const std::vector<double>& theta_grid);

/// n values evenly spaced on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace vgic::miso
