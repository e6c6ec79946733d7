#include "vgic/miso.hpp"

#include "vgic/errors.hpp"
#include "vgic/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vgic::miso {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

double sq(double x) { return x * x; }

// Bisection for a sign change of f on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> sign_changes(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<double> roots;
  double prev_x = lo, prev = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = f(x);
    if ((v < 0.0) != (prev < 0.0)) roots.push_back(bisect(f, prev_x, x));
    prev_x = x;
    prev = v;
  }
  return roots;
}

// Reduced ZIC in the tau = +1 frame.
struct ZicFrame {
  double a, theta, p1, p2;
  int tau;  // of the original angle
};

ZicFrame frame(const MisoEquiv& ch) {
  if (ch.a1 != 0.0) throw ValidationError("Z-channel formulas need a1 == 0");
  const double th = ch.theta2 > kHalfPi ? kPi - ch.theta2 : ch.theta2;
  return {ch.a2, th, ch.p1, ch.p2, ch.theta2 > kHalfPi ? -1 : 1};
}

}  // namespace

double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  // endpoints may beat the interior
  const double mid = 0.5 * (lo + hi);
  return mid;
}

double scan_max(const std::function<double(double)>& f, double lo, double hi, int n, double tol) {
  int best = 0;
  double bv = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double v = f(lo + (hi - lo) * i / n);
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  const double a = lo + (hi - lo) * std::max(0, best - 1) / n;
  const double b = lo + (hi - lo) * std::min(n, best + 1) / n;
  const double x = golden_max(f, a, b, tol);
  const double grid_x = lo + (hi - lo) * best / n;
  return f(x) >= bv ? x : grid_x;
}

SymMatrix beam(double phi, int tau, double p) {
  const double u0 = std::sin(phi), u1 = tau * std::cos(phi);
  return SymMatrix{{p * u0 * u0, p * u0 * u1}, {p * u0 * u1, p * u1 * u1}};
}

double RegionBounds::max_sum() const { return std::min({r1 + r2, sum_rx1, sum_rx2}); }

RegionBounds miso_region_point(const MisoEquiv& ch, double phi1, double phi2) {
  const double s1 = sq(std::sin(ch.theta1 + ch.tau1 * phi1));
  const double s2 = sq(std::sin(ch.theta2 + ch.tau2 * phi2));
  RegionBounds b;
  b.r1 = 0.5 * std::log1p(ch.p1 * s1);
  b.r2 = 0.5 * std::log1p(ch.p2 * s2);
  b.sum_rx1 = 0.5 * std::log1p(ch.p1 * s1 + ch.a2 * ch.p2 * sq(std::sin(phi2)));
  b.sum_rx2 = 0.5 * std::log1p(ch.p2 * s2 + ch.a1 * ch.p1 * sq(std::sin(phi1)));
  // an absent cross link removes the sum bound at that receiver
  if (ch.a2 == 0.0) b.sum_rx1 = std::numeric_limits<double>::infinity();
  if (ch.a1 == 0.0) b.sum_rx2 = std::numeric_limits<double>::infinity();
  return b;
}

PhiScanResult sum_rate_phi_scan(const MisoEquiv& ch) {
  auto inner = [&](double phi1, double* arg) {
    auto g = [&](double phi2) { return miso_region_point(ch, phi1, phi2).max_sum(); };
    const double x = scan_max(g, 0.0, kHalfPi, 32);
    if (arg) *arg = x;
    return g(x);
  };
  const double phi1 = scan_max([&](double p) { return inner(p, nullptr); }, 0.0, kHalfPi, 512);
  PhiScanResult r;
  r.phi1 = phi1;
  r.sum_rate = inner(phi1, &r.phi2);
  return r;
}

double genie_scalar(double a, double theta, int tau, double phi) {
  return tau * std::sin(theta + tau * phi) / (std::sqrt(a) * std::sin(phi));
}

// --- Z channel ---------------------------------------------------------------------

std::string to_string(ZicTag t) {
  switch (t) {
    case ZicTag::TypeI_VeryStrong: return "TypeI_VeryStrong";
    case ZicTag::TypeII: return "TypeII";
    case ZicTag::TypeIII: return "TypeIII";
    case ZicTag::None: return "None";
    case ZicTag::Trivial: return "Trivial";
  }
  return "?";
}

double phi_ez(double a, double theta, double p1) {
  const int tau = std::cos(theta) >= 0.0 ? 1 : -1;
  return std::atan2(std::sin(theta), std::sqrt(a / (1.0 + p1)) - tau * std::cos(theta));
}

ZicSumRateCase zic_sum_rate(const MisoEquiv& ch) {
  const ZicFrame z = frame(ch);
  ZicSumRateCase out;
  const double single = 0.5 * std::log1p(z.p1) + 0.5 * std::log1p(z.p2);
  if (z.a == 0.0 || std::abs(std::cos(z.theta)) < 1e-15) {
    // no usable interference path or an orthogonal one
    out.case_tag = ZicTag::Trivial;
    out.phi_opt = kHalfPi - z.theta;
    out.sum_rate = single;
    out.phi_ez = phi_ez(std::max(z.a, 0.0), z.theta, z.p1);
    out.certified = true;
    return out;
  }
  const double c2 = sq(std::cos(z.theta));
  const double s2 = sq(std::sin(z.theta));
  out.phi_ez = phi_ez(z.a, z.theta, z.p1);
  if (c2 >= (1.0 + z.p1) / z.a) {
    out.branch = 1;
    out.case_tag = ZicTag::TypeI_VeryStrong;
    out.phi_opt = kHalfPi - z.theta;
    out.sum_rate = single;
    out.certified = true;
  } else if (c2 >= z.a / (1.0 + z.p1)) {
    out.branch = 2;
    out.phi_opt = kHalfPi;
    out.sum_rate = 0.5 * std::log1p(z.p1 + z.a * z.p2);
    const double den = 1.0 - z.p2 * s2;
    const bool ok = den > 0.0 && (1.0 + z.p1 * s2) / den <= z.a && z.a <= (1.0 + z.p1) * c2;
    out.case_tag = ok ? ZicTag::TypeII : ZicTag::None;
    out.certified = ok;
  } else {
    out.branch = 3;
    out.phi_opt = out.phi_ez;
    out.sum_rate = 0.5 * std::log1p(z.p1 + z.a * z.p2 * sq(std::sin(out.phi_ez)));
    const double rho = std::sqrt(z.a / (1.0 + z.p1));
    const double c = std::cos(z.theta);
    const double lhs = z.p1 * rho * c;
    const double rhs = (1.0 - rho * c) * (1.0 + z.p1 + z.a * z.p2 * s2 / (rho * rho + 1.0 - 2.0 * rho * c));
    const bool ok = lhs >= rhs;
    out.case_tag = ok ? ZicTag::TypeIII : ZicTag::None;
    out.certified = ok;
  }
  return out;
}

double zic_q(const MisoEquiv& ch, double phi) {
  const ZicFrame z = frame(ch);
  const double tp = z.theta + phi;
  return z.a * sq(std::sin(phi)) - sq(std::sin(tp)) +
         std::sin(2.0 * tp) * 0.5 * std::tan(z.theta) * (1.0 + z.p1 + z.a * z.p2 * sq(std::sin(phi)));
}

std::pair<double, double> zic_boundary_rates(const MisoEquiv& ch, double phi) {
  const ZicFrame z = frame(ch);
  const double r2 = 0.5 * std::log1p(z.p2 * sq(std::sin(z.theta + phi)));
  const double r1 = 0.5 * std::log1p(z.p1 + z.a * z.p2 * sq(std::sin(phi))) - r2;
  return {r1, r2};
}

ZicBoundary zic_boundary(const MisoEquiv& ch, int n_points) {
  if (n_points < 2) throw ValidationError("zic_boundary needs at least two points");
  const ZicFrame z = frame(ch);
  ZicBoundary out;
  const double cap1 = 0.5 * std::log1p(z.p1);
  const double cap2 = 0.5 * std::log1p(z.p2);
  const SymMatrix s1 = beam(kHalfPi, 1, z.p1);

  const ZicSumRateCase sr = zic_sum_rate(ch);
  if (sr.branch == 1 || sr.case_tag == ZicTag::Trivial) {
    out.very_strong = true;
    out.phi_lo = out.phi_hi = kHalfPi - z.theta;
    RegionPoint pt;
    pt.r1 = cap1;
    pt.r2 = cap2;
    pt.phi = out.phi_lo;
    pt.certified = true;
    pt.cov = CovariancePair{s1, beam(pt.phi, z.tau, z.p2)};
    out.polyline.points.push_back(pt);
    out.corners = {{"R2_axis", 0.0, cap2}, {"C", cap1, cap2}, {"R1_axis", cap1, 0.0}};
    return out;
  }

  out.phi_lo = kHalfPi - z.theta;
  out.phi_hi = sr.branch == 2 ? kHalfPi : sr.phi_ez;
  auto q = [&](double phi) { return zic_q(ch, phi); };
  out.q_roots = sign_changes(q, out.phi_lo, out.phi_hi, 512);

  std::vector<double> phis;
  for (int i = 0; i < n_points; ++i)
    phis.push_back(out.phi_lo + (out.phi_hi - out.phi_lo) * i / (n_points - 1));
  for (double r : out.q_roots) phis.push_back(r);
  std::sort(phis.begin(), phis.end());
  phis.erase(std::unique(phis.begin(), phis.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }),
             phis.end());

  for (double phi : phis) {
    RegionPoint pt;
    std::tie(pt.r1, pt.r2) = zic_boundary_rates(ch, phi);
    pt.phi = phi;
    pt.q = q(phi);
    pt.certified = pt.q >= -1e-9;
    pt.cov = CovariancePair{s1, beam(phi, z.tau, z.p2)};
    out.polyline.points.push_back(pt);
  }

  const auto& first = out.polyline.points.front();
  const auto& last = out.polyline.points.back();
  out.corners.push_back({"R2_axis", 0.0, cap2});
  out.corners.push_back({"C1", first.r1, first.r2});
  if (sr.branch == 2) {
    out.corners.push_back({"B", last.r1, last.r2});
    out.corners.push_back({"C2", cap1, 0.5 * std::log1p(z.a * z.p2 / (1.0 + z.p1))});
  } else {
    out.corners.push_back({"C2", last.r1, last.r2});
  }
  out.corners.push_back({"R1_axis", cap1, 0.0});
  for (double r : out.q_roots) {
    const auto [r1, r2] = zic_boundary_rates(ch, r);
    out.corners.push_back({"Q_root", r1, r2});
  }
  return out;
}

double zic_outer_r1(const MisoEquiv& ch, double a_scalar, double r2, const SolverOptions& opts) {
  if (!(std::abs(a_scalar) < 1.0)) throw DomainError("scalar genie needs |A| < 1");
  GenieParam g;
  g.a2 = mat_from_rows({{a_scalar}});
  return solve(OptProblem::outer_boundary(to_channel(ch), r2, g), opts).objective;
}

RegionPolyline zic_outer_bound(const MisoEquiv& ch, double a_scalar, int n_points, const SolverOptions& opts) {
  if (!(std::abs(a_scalar) < 1.0)) throw DomainError("scalar genie needs |A| < 1");
  GenieParam g;
  g.a2 = mat_from_rows({{a_scalar}});
  return boundary_sweep(to_channel(ch), n_points, true, g, opts).polyline;
}

// --- symmetric channel --------------------------------------------------------------

std::string to_string(SymTag t) {
  switch (t) {
    case SymTag::I: return "I";
    case SymTag::II: return "II";
    case SymTag::III: return "III";
  }
  return "?";
}

double q_u(double, double theta, double p, double phi) { return std::log1p(p * sq(std::sin(theta + phi))); }

double q_s(double a, double theta, double p, double phi) {
  return 0.5 * std::log1p(p * sq(std::sin(theta + phi)) + a * p * sq(std::sin(phi)));
}

double phi_s(double a, double theta) {
  const double den = a + std::cos(2.0 * theta);
  if (den > 0.0) return kHalfPi - 0.5 * std::atan(std::sin(2.0 * theta) / den);
  if (den == 0.0) return kPi / 4.0;
  return -0.5 * std::atan(std::sin(2.0 * theta) / den);
}

SymMisoCase sym_sum_rate(const MisoEquiv& ch) {
  const double a = ch.a1, th = ch.theta1, p = ch.p1;
  if (!(th > 0.0 && th < kHalfPi) || a <= 0.0 || ch.a2 != a || ch.theta2 != th || ch.p2 != p)
    throw ValidationError("symmetric MISO needs theta in (0, pi/2), a > 0 and equal users");
  SymMisoCase out;
  const double phu = kHalfPi - th;
  const double phs = phi_s(a, th);
  auto lam_o = [&](double lam, double phi) {
    const double den = a * sq(std::sin(phi)) - sq(std::sin(th + phi));
    return den > 0.0 ? 0.5 * lam * a * sq(std::sin(th)) / den : std::numeric_limits<double>::infinity();
  };
  auto cond1 = [&](double phi) { return sq(std::sin(th + phi)) < a * sq(std::sin(phi)); };

  if (q_s(a, th, p, phu) >= q_u(a, th, p, phu)) {
    out.case_tag = SymTag::I;
    out.phi_star = phu;
    out.sum_rate = std::log1p(p);
    out.gamma = 1.0;
    out.certified = true;
  } else if (q_s(a, th, p, phs) <= q_u(a, th, p, phs)) {
    out.case_tag = SymTag::II;
    out.phi_star = phs;
    out.sum_rate = q_s(a, th, p, phs);
    out.lambda = 0.5;
    out.k = std::sin(th) * std::cos(th) /
            (4.0 * std::sin(phs) * std::cos(phs) *
             (1.0 + p * sq(std::sin(th + phs)) + a * p * sq(std::sin(phs))));
    out.lambda_o_scale = lam_o(out.lambda, phs);
    out.certified = cond1(phs) && out.k >= out.lambda_o_scale;
  } else {
    out.case_tag = SymTag::III;
    auto diff = [&](double phi) { return q_u(a, th, p, phi) - q_s(a, th, p, phi); };
    const auto roots = sign_changes(diff, 0.0, kHalfPi, 512);
    double phe = roots.empty() ? phs : roots.front();
    for (double r : roots)
      if (q_u(a, th, p, r) > q_u(a, th, p, phe)) phe = r;
    out.phi_star = phe;
    out.sum_rate = q_s(a, th, p, phe);
    const double s2tp = std::sin(2.0 * (th + phe));
    const double u = 1.0 + p * sq(std::sin(th + phe));
    out.d = -(s2tp + a * std::sin(2.0 * phe)) / (u * s2tp);
    out.lambda = 1.0 / (out.d + 2.0);
    out.gamma = 1.0 - 2.0 * out.lambda;
    out.k = (out.d * u + 1.0) * std::sin(th) * std::cos(th) /
            (2.0 * (out.d + 2.0) * (u + a * p * sq(std::sin(phe))) * std::sin(phe) * std::cos(phe));
    out.lambda_o_scale = lam_o(out.lambda, phe);
    out.certified = cond1(phe) && out.k >= out.lambda_o_scale;
  }
  out.genie = genie_scalar(a, th, 1, out.phi_star);

  // eta = largest eigenvalue of the weighted rate gradients at the optimum
  const ChannelMimo mc = to_channel(ch);
  const CovariancePair pair{beam(out.phi_star, 1, p), beam(out.phi_star, 1, p)};
  RateExpr single = expr_g1(mc);
  single += expr_g2(mc);
  const SymMatrix g = gradient(single, pair).first * out.gamma +
                      (gradient(expr_gs1(mc), pair).first + gradient(expr_gs2(mc), pair).first) * out.lambda;
  out.eta = max_eigenvalue(g);
  return out;
}

// --- SIMO ----------------------------------------------------------------------------

SimoReport simo_conditions(const Vec& h1, const Vec& f1, const Vec& h2, const Vec& f2, double p1, double p2) {
  if (h1.norm() <= kZeroLinkTol || h2.norm() <= kZeroLinkTol) throw ValidationError("zero direct link");
  SimoReport r;
  auto strong = [](const Vec& h, const Vec& f) { return f.norm() > kZeroLinkTol && h.norm() <= f.norm(); };
  r.gsi_full_region = strong(h1, f1) && strong(h2, f2);
  // f_i and h_j live at receiver j
  auto vs = [](const Vec& hi, const Vec& fi, const Vec& hj, double pj) {
    if (fi.norm() <= kZeroLinkTol) return false;
    const double c = fi.dot(hj) / (fi.norm() * hj.norm());
    const double sin2 = std::max(0.0, 1.0 - c * c);
    const double g = pj * hj.squaredNorm();
    return fi.squaredNorm() / hi.squaredNorm() >= (1.0 + g) / (1.0 + g * sin2);
  };
  r.very_strong = vs(h1, f1, h2, p2) && vs(h2, f2, h1, p1);
  return r;
}

// --- regime maps ---------------------------------------------------------------------

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

std::vector<RegimeCell> regime_map_zic(double p1, double p2, const std::vector<double>& a_grid,
                                       const std::vector<double>& theta_grid) {
  std::vector<RegimeCell> cells;
  for (double a : a_grid)
    for (double th : theta_grid) {
      const auto c = zic_sum_rate(zic_miso(a, th, p1, p2));
      cells.push_back({a, th, to_string(c.case_tag), c.certified, c.sum_rate});
    }
  return cells;
}

std::vector<RegimeCell> regime_map_sym(double p, const std::vector<double>& a_grid,
                                       const std::vector<double>& theta_grid) {
  std::vector<RegimeCell> cells;
  for (double a : a_grid)
    for (double th : theta_grid) {
      const auto c = sym_sum_rate(symmetric_miso(a, th, p));
      cells.push_back({a, th, to_string(c.case_tag), c.certified, c.sum_rate});
    }
  return cells;
}

}  // namespace vgic::miso
