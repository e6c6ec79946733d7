#include "vgic/gsi.hpp"

#include "vgic/errors.hpp"

#include <algorithm>
#include <cmath>

namespace vgic {

namespace {

// Coordinate descent over nullspace coefficients, golden section per coordinate.
// Stops at the first A with ||A||_2 <= 1.
Mat search_nullspace(const Mat& x0, const Mat& null, std::size_t rows, std::size_t cols, int max_iter,
                     int* iterations) {
  const Eigen::Index k = null.cols();
  Vec c = Vec::Zero(k);
  auto norm_at = [&](const Vec& cc) { return spectral_norm(unvec(x0 + null * cc, rows, cols)); };
  double best = norm_at(c);
  double radius = std::max(1.0, 2.0 * x0.norm());
  int it = 0;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  while (it < max_iter && best > 1.0) {
    const double before = best;
    for (Eigen::Index j = 0; j < k && it < max_iter; ++j, ++it) {
      auto f = [&](double v) {
        Vec t = c;
        t(j) = v;
        return norm_at(t);
      };
      double lo = c(j) - radius, hi = c(j) + radius;
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      double f1 = f(x1), f2 = f(x2);
      while (hi - lo > 1e-12 * std::max(1.0, radius)) {
        if (f1 > f2) {
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
      const double v = 0.5 * (lo + hi);
      if (f(v) < best) {
        c(j) = v;
        best = f(v);
      }
      if (best <= 1.0) break;
    }
    if (before - best < 1e-12) radius *= 0.5;
    if (radius < 1e-10) break;
  }
  *iterations = it;
  return unvec(x0 + null * c, rows, cols);
}

struct Candidate {
  std::string route;
  AMatrixSolution sol;
  std::optional<SymMatrix> o;
  double psd_margin = -std::numeric_limits<double>::infinity();
  std::string note;
  bool passed = false;
};

Candidate try_candidate(const ChannelMimo& ch, int user, const std::string& route, AMatrixSolution sol,
                        const SymMatrix& w, double lambda, double psd_tol) {
  Candidate c{route, std::move(sol), std::nullopt, -std::numeric_limits<double>::infinity(), "", false};
  if (!c.sol.consistent()) {
    c.note = "no consistent A";
    return c;
  }
  if (!c.sol.admissible()) {
    c.note = c.sol.freedom_dim > 0 ? "search found no A with norm <= 1; admissibility not disproven"
                                   : "unique A has norm > 1";
    return c;
  }
  try {
    c.o = genie_o(ch, c.sol.a, user);
  } catch (const GenieDegenerate& e) {
    c.note = e.what();
    return c;
  }
  c.psd_margin = min_eigenvalue(w - *c.o * lambda);
  c.passed = c.psd_margin >= -psd_tol;
  if (!c.passed) c.note = "W - lambda O not PSD";
  return c;
}

GsiVerdict certify(const ChannelMimo& ch, const OptResult& result, const KktCertificate& cert, double psd_tol,
                   bool boundary) {
  GsiVerdict v;
  if (!result.converged) {
    v.status = VerdictStatus::Inconclusive;
    v.details.push_back({"solver_converged", false, 0.0, "optimizer did not converge"});
    return v;
  }
  v.details.push_back({"solver_converged", true, 0.0, ""});
  const char* mult = boundary ? "beta" : "lambda";
  const char* wname = boundary ? "K" : "W";
  bool ok = true;
  std::array<SymMatrix, 2> os{SymMatrix::zero(ch.t1()), SymMatrix::zero(ch.t2())};
  bool any_o = false;
  for (int j = 1; j <= 2; ++j) {
    const double lam = cert.lambdas_or_betas[j - 1];
    const std::string lj = std::string(mult) + std::to_string(j);
    if (lam <= kMultiplierTol) {
      v.details.push_back({lj + "_zero", true, lam, "genie for user " + std::to_string(3 - j) + " not needed"});
      continue;
    }
    const int i = 3 - j;
    const std::string ai = "A" + std::to_string(i);
    const SymMatrix& w = cert.w_or_k[i - 1];
    std::vector<Candidate> cands;
    cands.push_back(try_candidate(ch, i, "exact", solve_a_exact(ch.h(i), ch.f(i)), w, lam, psd_tol));
    if (!cands.back().passed)
      cands.push_back(try_candidate(ch, i, "markov", solve_a(result.pair.s(i), ch.h(i), ch.f(i)), w, lam, psd_tol));
    // report the passing candidate, else the one that got furthest
    auto score = [](const Candidate& c) {
      return (c.passed ? 8 : 0) + (c.o ? 4 : 0) + (c.sol.admissible() ? 2 : 0) + (c.sol.consistent() ? 1 : 0);
    };
    const Candidate& c = *std::max_element(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
      return score(x) < score(y);
    });
    v.details.push_back({ai + "_exists", c.sol.consistent(), c.sol.residual, c.route});
    v.details.push_back({ai + ai + "^T<=I", c.sol.admissible(), c.sol.spectral_norm - 1.0,
                         c.sol.admissible() ? "" : c.note});
    if (c.o)
      v.details.push_back({std::string(wname) + std::to_string(i) + ">=" + lj + "*O" + std::to_string(i), c.passed,
                           c.psd_margin, c.note});
    if (!c.passed) {
      ok = false;
      continue;
    }
    (i == 1 ? v.genie.a1 : v.genie.a2) = c.sol.a;
    os[i - 1] = *c.o;
    any_o = true;
  }
  if (any_o) v.o = os;
  v.status = ok ? VerdictStatus::Certified : VerdictStatus::NotCertified;
  return v;
}

}  // namespace

AMatrixSolution solve_a(const SymMatrix& s_star, const Mat& h, const Mat& f, int max_search) {
  if (!all_finite(s_star.mat()) || !all_finite(h) || !all_finite(f)) throw ValidationError("non-finite input");
  if (h.cols() != f.cols() || static_cast<Eigen::Index>(s_star.dim()) != h.cols())
    throw ValidationError("solve_a: shape mismatch");
  const auto ri = static_cast<std::size_t>(h.rows());
  const auto rj = static_cast<std::size_t>(f.rows());
  // S H^T = (S F^T) X with X = A^T
  const Mat m = s_star.mat() * f.transpose();
  const Mat rhs = s_star.mat() * h.transpose();
  const Mat sys = kron(Mat::Identity(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(ri)), m);
  const LsqResult ls = lsq_solve(sys, vec(rhs));
  AMatrixSolution out;
  out.freedom_dim = static_cast<int>(ls.nullspace_basis.cols());
  Mat x = unvec(ls.solution, rj, ri);
  if (out.freedom_dim > 0 && spectral_norm(x) > 1.0)
    x = search_nullspace(ls.solution, ls.nullspace_basis, rj, ri, max_search, &out.search_iterations);
  out.a = x.transpose();
  out.residual = (rhs - m * x).norm();
  out.spectral_norm = spectral_norm(out.a);
  return out;
}

AMatrixSolution solve_a_exact(const Mat& h, const Mat& f, int max_search) {
  return solve_a(SymMatrix::identity(static_cast<std::size_t>(h.cols())), h, f, max_search);
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Certified: return "Certified";
    case VerdictStatus::NotCertified: return "NotCertified";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

GsiVerdict certify_sum_rate(const ChannelMimo& ch, const OptResult& result, const KktCertificate& cert,
                            double psd_tol) {
  GsiVerdict v = certify(ch, result, cert, psd_tol, false);
  if (result.converged) {
    // corner of the dominant face: user 1 at its own rate, user 2 takes the rest
    v.r1 = std::min(g1(ch, result.pair.s1), result.objective);
    v.r2 = result.objective - v.r1;
  }
  return v;
}

GsiVerdict certify_boundary_point(const ChannelMimo& ch, const OptResult& result, double r,
                                  const KktCertificate& cert, double psd_tol) {
  GsiVerdict v = certify(ch, result, cert, psd_tol, true);
  v.r1 = result.objective;
  v.r2 = r;
  return v;
}

SumRateAnalysis analyze_sum_rate(const ChannelMimo& ch, const SolverOptions& opts) {
  SumRateAnalysis a;
  a.problem = OptProblem::inner_sum(ch);
  a.result = solve(a.problem, opts);
  a.kkt = recover_kkt(a.problem, a.result, opts);
  a.verdict = certify_sum_rate(ch, a.result, a.kkt);
  return a;
}

BoundaryAnalysis certified_boundary(const ChannelMimo& ch, int n_points, const SolverOptions& opts) {
  BoundaryAnalysis b;
  b.sweep = boundary_sweep(ch, n_points, false, {}, opts);
  for (std::size_t k = 0; k < b.sweep.results.size(); ++k) {
    const OptProblem& p = b.sweep.problems[k];
    b.kkt.push_back(recover_kkt(p, b.sweep.results[k], opts));
    b.verdicts.push_back(certify_boundary_point(ch, b.sweep.results[k], p.r, b.kkt.back()));
    b.sweep.polyline.points[k].certified = b.verdicts.back().certified();
  }
  return b;
}

BoundarySweep outer_boundary_per_point(const ChannelMimo& ch, int n_points, const SolverOptions& opts) {
  if (n_points < 2) throw ValidationError("a boundary sweep needs at least two points");
  BoundarySweep sw;
  sw.r_max = max_r2(ch);
  for (int k = 0; k < n_points; ++k) {
    const double r = sw.r_max * k / (n_points - 1);
    const OptResult inner = solve(OptProblem::inner_boundary(ch, r), opts);
    GenieParam g;
    for (int i = 1; i <= 2; ++i) {
      Mat a = Mat::Zero(ch.h(i).rows(), ch.f(i).rows());
      for (const auto& cand : {solve_a_exact(ch.h(i), ch.f(i)), solve_a(inner.pair.s(i), ch.h(i), ch.f(i))}) {
        if (!cand.admissible()) continue;
        try {
          genie_o(ch, cand.a, i);
          a = cand.a;
          break;
        } catch (const GenieDegenerate&) {
        }
      }
      (i == 1 ? g.a1 : g.a2) = a;
    }
    const OptProblem p = OptProblem::outer_boundary(ch, r, g);
    OptResult res = solve(p, opts);
    RegionPoint pt;
    pt.r1 = res.objective;
    pt.r2 = r;
    pt.cov = res.pair;
    if (!sw.polyline.points.empty() && pt.r1 > sw.polyline.points.back().r1 + 1e-7) sw.monotone = false;
    sw.polyline.points.push_back(pt);
    sw.problems.push_back(p);
    sw.results.push_back(std::move(res));
  }
  return sw;
}

bool very_strong_general(const ChannelMimo& ch) {
  const SymMatrix s1 = waterfill(ch.h1, ch.p1);
  const SymMatrix s2 = waterfill(ch.h2, ch.p2);
  auto check = [&](int i) {
    const int j = 3 - i;
    const SymMatrix& si = i == 1 ? s1 : s2;
    const SymMatrix& sj = i == 1 ? s2 : s1;
    const std::size_t rj = j == 1 ? ch.r1() : ch.r2();
    const std::size_t ri = i == 1 ? ch.r1() : ch.r2();
    const SymMatrix base = SymMatrix::identity(rj) + congruence(ch.h(j), sj);
    const double lhs = logdet(SymMatrix::identity(ri) + congruence(ch.h(i), si));
    const double rhs = logdet(base + congruence(ch.f(i), si)) - logdet(base);
    return lhs <= rhs + 1e-12;
  };
  return check(1) && check(2);
}

RegimeReport classify_regime(const ChannelMimo& ch, int n_points, const SolverOptions& opts) {
  RegimeReport rep;
  rep.kind = validate(ch);
  rep.very_strong = very_strong_general(ch);
  rep.strong_classical = solve_a_exact(ch.h1, ch.f1).admissible() && solve_a_exact(ch.h2, ch.f2).admissible();

  const SumRateAnalysis sr = analyze_sum_rate(ch, opts);
  rep.sum_rate = sr.result.objective;
  rep.sum_rate_status = sr.verdict.status;
  rep.gsi_sum_rate = sr.verdict.certified();

  const BoundaryAnalysis ba = certified_boundary(ch, n_points, opts);
  const auto n_cert = std::count_if(ba.verdicts.begin(), ba.verdicts.end(), [](const GsiVerdict& v) {
    return v.certified();
  });
  rep.fraction_of_boundary_certified = static_cast<double>(n_cert) / static_cast<double>(ba.verdicts.size());
  rep.gsi_full_region = n_cert == static_cast<long>(ba.verdicts.size());

  if (rep.kind == ChannelKind::Simo || rep.kind == ChannelKind::Scalar) {
    rep.simo = miso::simo_conditions(ch.h1.col(0), ch.f1.col(0), ch.h2.col(0), ch.f2.col(0), ch.p1, ch.p2);
    // the closed-form SIMO result covers the whole region, not just the sampled points
    rep.gsi_full_region = rep.gsi_full_region || rep.simo->gsi_full_region;
  }
  if (rep.kind == ChannelKind::MisoZic) {
    const miso::ZicSumRateCase zc = miso::zic_sum_rate(reduce_miso(ch));
    rep.zic_case = miso::to_string(zc.case_tag);
    if (zc.branch == 1) rep.very_strong = true;
  }
  return rep;
}

}  // namespace vgic
