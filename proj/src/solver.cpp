#include "vgic/solver.hpp"

#include "vgic/errors.hpp"

#include <algorithm>
#include <cmath>

namespace vgic {

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::InnerSum: return "InnerSum";
    case ProblemKind::InnerBoundary: return "InnerBoundary";
    case ProblemKind::OuterSum: return "OuterSum";
    case ProblemKind::OuterBoundary: return "OuterBoundary";
  }
  return "?";
}

OptProblem OptProblem::inner_sum(const ChannelMimo& ch) {
  return {ProblemKind::InnerSum, ch, 0.0, {}};
}
OptProblem OptProblem::inner_boundary(const ChannelMimo& ch, double r) {
  return {ProblemKind::InnerBoundary, ch, r, {}};
}
OptProblem OptProblem::outer_sum(const ChannelMimo& ch, const GenieParam& g) {
  return {ProblemKind::OuterSum, ch, 0.0, g};
}
OptProblem OptProblem::outer_boundary(const ChannelMimo& ch, double r, const GenieParam& g) {
  return {ProblemKind::OuterBoundary, ch, r, g};
}

std::vector<RateConstraint> build_constraints(const OptProblem& p) {
  const ChannelMimo& ch = p.channel;
  const bool outer = p.kind == ProblemKind::OuterSum || p.kind == ProblemKind::OuterBoundary;
  std::vector<RateConstraint> out;
  const double shift = p.is_boundary() ? p.r : 0.0;

  if (p.is_boundary()) {
    out.push_back({kTagR1, expr_g1(ch), 0.0, false});
  } else {
    RateExpr e = expr_g1(ch);
    e += expr_g2(ch);
    out.push_back({kTagSumSingle, e, 0.0, false});
  }
  if (outer) {
    if (p.genie.a2) out.push_back({kTagRx1, expr_gbar_s1(ch, *p.genie.a2), shift, false});
    if (p.genie.a1) out.push_back({kTagRx2, expr_gbar_s2(ch, *p.genie.a1), shift, false});
  } else {
    if (!is_zero_link(ch.f2)) out.push_back({kTagRx1, expr_gs1(ch), shift, false});
    if (!is_zero_link(ch.f1)) out.push_back({kTagRx2, expr_gs2(ch), shift, false});
  }
  if (p.is_boundary() && p.r > 0.0) out.push_back({kTagR2, expr_g2(ch), p.r, true});
  return out;
}

double max_r1(const ChannelMimo& ch) { return g1(ch, waterfill(ch.h1, ch.p1)); }
double max_r2(const ChannelMimo& ch) { return g2(ch, waterfill(ch.h2, ch.p2)); }

double objective_at(const OptProblem& problem, const CovariancePair& pair) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& c : build_constraints(problem))
    if (!c.hard) v = std::min(v, evaluate(c.expr, pair) - c.shift);
  return v;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coordinate k of a symmetric direction: w * (e_a e_b^T + e_b e_a^T) in the
// stacked (t1 + t2) space, w = 1/2 on the diagonal.
struct BasisElem {
  int user;
  int a, b;  // stacked indices
  double w;
};

// tr(G E_k G E_l) for symmetric G.
double quad_trace(const Mat& g, const BasisElem& k, const BasisElem& l) {
  return k.w * l.w * 2.0 * (g(k.b, l.a) * g(k.a, l.b) + g(k.b, l.b) * g(k.a, l.a));
}

class BarrierSolver {
 public:
  BarrierSolver(const OptProblem& p, std::vector<RateConstraint> cons, std::array<bool, 2> free,
                const SolverOptions& opts)
      : p_(p), ch_(p.channel), cons_(std::move(cons)), free_(free), opts_(opts) {
    int off = 0;
    for (int u = 1; u <= 2; ++u) {
      off_[u - 1] = off;
      if (!free_[u - 1]) continue;
      const int t = static_cast<int>(ch_.t(u));
      for (int a = 0; a < t; ++a)
        for (int b = a; b < t; ++b) basis_.push_back({u, off + a, off + b, a == b ? 0.5 : 1.0});
      off += t;
    }
    ns_ = off;
    nx_ = static_cast<int>(basis_.size()) + 1;
    m_barrier_ = static_cast<double>(cons_.size());
    for (int u = 1; u <= 2; ++u)
      if (free_[u - 1]) m_barrier_ += 1.0 + static_cast<double>(ch_.t(u));
  }

  struct Outcome {
    CovariancePair pair;
    int iterations = 0;
    bool converged = false;
  };

  Outcome run(CovariancePair start, int iter_budget) {
    Outcome out;
    pair_ = std::move(start);
    double fmin = kInf;
    for (const auto& c : cons_)
      if (!c.hard) fmin = std::min(fmin, evaluate(c.expr, pair_) - c.shift);
    t_ = fmin - 1.0;

    const double gap_target = std::max(1e-12, 1e-2 * opts_.tol);
    double tau = 1.0;
    int iters = 0;
    bool ok = true;
    while (true) {
      bool stalled = false;
      for (int inner = 0; inner < 100; ++inner) {
        if (iters >= iter_budget) {
          ok = false;
          break;
        }
        ++iters;
        const Step st = newton_step(tau);
        if (!st.valid) {
          stalled = true;
          break;
        }
        if (st.decrement * 0.5 <= 1e-10) break;
        if (!line_search(tau, st)) {
          stalled = true;
          break;
        }
      }
      if (!ok) break;
      const double gap = m_barrier_ / tau;
      if (gap <= gap_target) break;
      if (stalled) {
        // precision floor reached; good enough when already within tolerance
        ok = gap <= opts_.tol;
        break;
      }
      tau *= 10.0;
    }
    out.pair = pair_;
    out.iterations = iters;
    out.converged = ok;
    return out;
  }

 private:
  struct Step {
    bool valid = false;
    Vec dx;
    double decrement = 0.0;
    std::array<Mat, 2> root;  // S_u^{1/2}
  };

  const SymMatrix& s(int u) const { return pair_.s(u); }

  Step newton_step(double tau) {
    Step st;
    const int nb = nx_ - 1;
    Vec grad = Vec::Zero(nx_);
    Mat hess = Mat::Zero(nx_, nx_);

    for (int u = 1; u <= 2; ++u) {
      if (!free_[u - 1]) continue;
      st.root[u - 1] = sqrtm_psd(s(u)).mat();
    }

    for (const auto& c : cons_) {
      Vec gk = Vec::Zero(nx_);
      Mat hk = Mat::Zero(nx_, nx_);
      double f = 0.0;
      for (const auto& term : c.expr.terms) {
        Mat m = term.c.mat();
        Mat q = Mat::Zero(term.c.dim(), ns_);
        for (int u = 1; u <= 2; ++u) {
          const auto& l = term.l(u);
          if (!l) continue;
          m += *l * s(u).mat() * l->transpose();
          if (free_[u - 1]) q.middleCols(off_[u - 1], ch_.t(u)) = *l * st.root[u - 1];
        }
        m = 0.5 * (m + m.transpose());
        Eigen::LLT<Mat> llt(m);
        if (llt.info() != Eigen::Success) return st;
        f += term.coef * 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        const Mat g = q.transpose() * llt.solve(q);
        for (int k = 0; k < nb; ++k) {
          const auto& bk = basis_[k];
          gk(k) += term.coef * bk.w * 2.0 * g(bk.a, bk.b);
          for (int l = k; l < nb; ++l) {
            const double v = -term.coef * quad_trace(g, bk, basis_[l]);
            hk(k, l) += v;
            if (l != k) hk(l, k) += v;
          }
        }
      }
      double slack = f - c.shift;
      if (!c.hard) {
        slack -= t_;
        gk(nb) = -1.0;
      }
      if (!(slack > 0.0)) return st;
      grad += gk / slack;
      hess += hk / slack - gk * gk.transpose() / (slack * slack);
    }

    for (int u = 1; u <= 2; ++u) {
      if (!free_[u - 1]) continue;
      const double slack = ch_.p(u) - s(u).trace();
      if (!(slack > 0.0)) return st;
      Vec a = Vec::Zero(nx_);
      const Mat& sm = s(u).mat();
      const int o = off_[u - 1];
      for (int k = 0; k < nb; ++k) {
        const auto& bk = basis_[k];
        if (bk.user != u) continue;
        a(k) = bk.w * 2.0 * sm(bk.a - o, bk.b - o);
        if (bk.a == bk.b) grad(k) += 1.0;  // logdet barrier at X = I
        for (int l = k; l < nb; ++l) {
          const auto& bl = basis_[l];
          if (bl.user != u) continue;
          const double v = bk.w * bl.w * 2.0 *
                           (static_cast<double>(bk.b == bl.a && bk.a == bl.b) +
                            static_cast<double>(bk.b == bl.b && bk.a == bl.a));
          hess(k, l) -= v;
          if (l != k) hess(l, k) -= v;
        }
      }
      grad -= a / slack;
      hess -= a * a.transpose() / (slack * slack);
    }
    grad(nb) += tau;

    Mat neg = -hess;
    neg = 0.5 * (neg + neg.transpose());
    double reg = 0.0;
    const double scale = std::max(1.0, neg.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::LDLT<Mat> ldlt(neg + reg * Mat::Identity(nx_, nx_));
      if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
          (ldlt.vectorD().array() > 0.0).all()) {
        st.dx = ldlt.solve(grad);
        if (st.dx.allFinite()) {
          st.decrement = grad.dot(st.dx);
          st.valid = st.decrement >= 0.0;
          return st;
        }
      }
      reg = reg == 0.0 ? 1e-14 * scale : reg * 100.0;
    }
    return st;
  }

  Mat direction(const Step& st, int u) const {
    const int t = static_cast<int>(ch_.t(u));
    Mat dxm = Mat::Zero(t, t);
    const int o = off_[u - 1];
    for (int k = 0; k < nx_ - 1; ++k) {
      const auto& bk = basis_[k];
      if (bk.user != u) continue;
      const double v = st.dx(k) * bk.w;
      dxm(bk.a - o, bk.b - o) += v;
      dxm(bk.b - o, bk.a - o) += v;
    }
    return dxm;
  }

  double phi(double tau, double t_ref, const CovariancePair& pr, double t) const {
    double val = tau * (t - t_ref);
    for (const auto& c : cons_) {
      double f = 0.0;
      try {
        f = evaluate(c.expr, pr);
      } catch (const DomainError&) {
        return -kInf;
      }
      const double slack = c.hard ? f - c.shift : f - c.shift - t;
      if (!(slack > 0.0)) return -kInf;
      val += std::log(slack);
    }
    for (int u = 1; u <= 2; ++u) {
      if (!free_[u - 1]) continue;
      const SymMatrix& su = pr.s(u);
      const double slack = ch_.p(u) - su.trace();
      if (!(slack > 0.0)) return -kInf;
      Eigen::LLT<Mat> llt(su.mat());
      if (llt.info() != Eigen::Success) return -kInf;
      const auto d = llt.matrixLLT().diagonal();
      if (!(d.minCoeff() > 0.0)) return -kInf;
      val += std::log(slack) + 2.0 * d.array().log().sum();
    }
    return val;
  }

  bool line_search(double tau, const Step& st) {
    std::array<Mat, 2> ds;
    double alpha = 1.0;
    for (int u = 1; u <= 2; ++u) {
      if (!free_[u - 1]) continue;
      const Mat dxm = direction(st, u);
      const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(dxm, Eigen::EigenvaluesOnly).eigenvalues()(0);
      if (lmin < 0.0) alpha = std::min(alpha, 0.99 / -lmin);
      ds[u - 1] = st.root[u - 1] * dxm * st.root[u - 1];
    }
    const double dt = st.dx(nx_ - 1);
    const double t_ref = t_;
    const double base = phi(tau, t_ref, pair_, t_);
    for (int k = 0; k < 60; ++k, alpha *= 0.5) {
      CovariancePair trial = pair_;
      for (int u = 1; u <= 2; ++u)
        if (free_[u - 1]) trial.s(u) = SymMatrix(Mat(pair_.s(u).mat() + alpha * ds[u - 1]));
      const double tt = t_ + alpha * dt;
      const double v = phi(tau, t_ref, trial, tt);
      if (v >= base + 0.01 * alpha * st.decrement) {
        pair_ = std::move(trial);
        t_ = tt;
        return true;
      }
    }
    return false;
  }

  const OptProblem& p_;
  const ChannelMimo& ch_;
  std::vector<RateConstraint> cons_;
  std::array<bool, 2> free_;
  SolverOptions opts_;
  std::vector<BasisElem> basis_;
  std::array<int, 2> off_{0, 0};
  int ns_ = 0;
  int nx_ = 1;
  double m_barrier_ = 0.0;
  CovariancePair pair_;
  double t_ = 0.0;
};

SymMatrix isotropic(std::size_t t, double p) { return SymMatrix::identity(t) * (p / static_cast<double>(t)); }

SymMatrix rank1_start(const Mat& h, double p) {
  const std::size_t t = static_cast<std::size_t>(h.cols());
  const Mat v = svd(h).v.col(0);
  return SymMatrix(Mat(0.9 * p * (0.9 * v * v.transpose() + 0.1 * Mat::Identity(t, t) / double(t))));
}

// Interior S2 with g2(S2) > r, blending the single-user optimum with an isotropic matrix.
std::optional<SymMatrix> s2_above(const ChannelMimo& ch, double r, const SymMatrix& wf) {
  const SymMatrix iso = isotropic(ch.t2(), ch.p2);
  for (double s : {0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12}) {
    const SymMatrix cand = (wf * (1.0 - s) + iso * s) * (1.0 - s);
    if (g2(ch, cand) > r) return cand;
  }
  return std::nullopt;
}

CovariancePair cleanup(const OptProblem& p, const CovariancePair& raw) {
  CovariancePair cleaned = raw;
  for (int u = 1; u <= 2; ++u)
    cleaned.s(u) = clip_eigenvalues(raw.s(u), 1e-7 * std::max(1.0, p.channel.p(u)));
  const double before = objective_at(p, raw);
  const double after = objective_at(p, cleaned);
  return after >= before - 1e-9 ? cleaned : raw;
}

}  // namespace

OptResult solve(const OptProblem& problem, const SolverOptions& opts) {
  const ChannelMimo& ch = problem.channel;
  validate(ch);
  OptResult best;
  std::vector<RateConstraint> cons = build_constraints(problem);
  std::array<bool, 2> free{true, true};

  std::optional<SymMatrix> fixed_s2;
  SymMatrix wf2;
  if (problem.is_boundary()) {
    wf2 = waterfill(ch.h2, ch.p2);
    const double rmax = g2(ch, wf2);
    if (problem.r < -1e-12 || problem.r > rmax + 1e-9)
      throw ValidationError("boundary target r outside [0, max g2]");
    if (problem.r >= rmax - 1e-9 || !s2_above(ch, problem.r, wf2)) {
      fixed_s2 = wf2;
      free[1] = false;
      cons.erase(std::remove_if(cons.begin(), cons.end(), [](const RateConstraint& c) { return c.hard; }),
                 cons.end());
    }
  }

  std::vector<CovariancePair> starts;
  starts.push_back({isotropic(ch.t1(), 0.9 * ch.p1), isotropic(ch.t2(), 0.9 * ch.p2)});
  if (opts.starts > 1) starts.push_back({rank1_start(ch.h1, ch.p1), rank1_start(ch.h2, ch.p2)});

  int budget = opts.max_iter;
  int total = 0;
  for (auto& st : starts) {
    if (fixed_s2) {
      st.s2 = *fixed_s2;
    } else if (problem.is_boundary() && problem.r > 0.0 && !(g2(ch, st.s2) > problem.r)) {
      st.s2 = *s2_above(ch, problem.r, wf2);
    }
    BarrierSolver bs(problem, cons, free, opts);
    auto out = bs.run(st, std::max(1, budget));
    budget -= out.iterations;
    total += out.iterations;
    const CovariancePair pair = cleanup(problem, out.pair);
    const double obj = objective_at(problem, pair);
    const bool better = !best.converged && out.converged ? true
                        : best.converged && !out.converged ? false
                                                           : !(obj <= best.objective);
    if (std::isnan(best.objective) || better) {
      best.pair = pair;
      best.objective = obj;
      best.converged = out.converged;
    }
    if (budget <= 0) break;
  }
  best.iterations = total;
  best.endpoint = fixed_s2.has_value();

  // active set
  for (const auto& c : build_constraints(problem)) {
    const double f = evaluate(c.expr, best.pair);
    const double slack = c.hard ? f - c.shift : f - c.shift - best.objective;
    if (slack <= opts.active_tol) best.active_set.push_back(c.tag);
  }
  if (ch.p1 - best.pair.s1.trace() <= opts.active_tol) best.active_set.push_back(kTagPower1);
  if (ch.p2 - best.pair.s2.trace() <= opts.active_tol) best.active_set.push_back(kTagPower2);
  return best;
}

// ---------------------------------------------------------------------------

KktCertificate recover_kkt(const OptProblem& problem, const OptResult& result,
                           const SolverOptions& opts) {
  const ChannelMimo& ch = problem.channel;
  const CovariancePair& pair = result.pair;
  const auto cons = build_constraints(problem);

  struct Var {
    std::string tag;
    bool simplex;
    std::array<SymMatrix, 2> grad;  // eta variables carry -I
    int eta_user = 0;
  };
  std::vector<Var> vars;
  for (const auto& c : cons) {
    const double f = evaluate(c.expr, pair);
    const double slack = c.hard ? f - c.shift : f - c.shift - result.objective;
    if (slack > opts.active_tol) continue;
    auto [ga, gb] = gradient(c.expr, pair);
    vars.push_back({c.tag, !c.hard, {ga, gb}, 0});
  }
  std::array<bool, 2> power_active{};
  for (int u = 1; u <= 2; ++u) {
    power_active[u - 1] = ch.p(u) - pair.s(u).trace() <= opts.active_tol;
    if (power_active[u - 1]) {
      const std::size_t t = ch.t(u);
      std::array<SymMatrix, 2> g{SymMatrix::zero(ch.t1()), SymMatrix::zero(ch.t2())};
      g[u - 1] = SymMatrix::identity(t) * -1.0;
      vars.push_back({u == 1 ? "eta1" : "eta2", false, g, u});
    }
  }

  // Equation columns: vec(G_k S_u) for each user with S_u != 0, scaled by 1/||S_u||.
  std::vector<int> users;
  Eigen::Index rows = 0;
  for (int u = 1; u <= 2; ++u)
    if (pair.s(u).mat().norm() > 1e-12) {
      users.push_back(u);
      rows += static_cast<Eigen::Index>(ch.t(u) * ch.t(u));
    }
  const int nv = static_cast<int>(vars.size());
  Mat cols = Mat::Zero(rows, nv);
  for (int k = 0; k < nv; ++k) {
    Eigen::Index r0 = 0;
    for (int u : users) {
      const Mat& su = pair.s(u).mat();
      const Mat prod = vars[k].grad[u - 1].mat() * su / su.norm();
      cols.block(r0, k, prod.size(), 1) = vec(prod);
      r0 += prod.size();
    }
  }

  std::vector<double> z(nv, 0.0);
  double best_res = kInf;
  bool best_has_null = false;
  std::vector<std::vector<double>> near;  // solutions tied with the best
  for (unsigned mask = 1; mask < (1u << nv); ++mask) {
    int pivot = -1;
    std::vector<int> others;
    for (int k = 0; k < nv; ++k) {
      if (!(mask & (1u << k))) continue;
      if (pivot < 0 && vars[k].simplex) pivot = k;
      else others.push_back(k);
    }
    if (pivot < 0) continue;
    Mat a(rows, static_cast<Eigen::Index>(others.size()));
    for (std::size_t j = 0; j < others.size(); ++j) {
      a.col(j) = cols.col(others[j]);
      if (vars[others[j]].simplex) a.col(j) -= cols.col(pivot);
    }
    const Mat b = -cols.col(pivot);
    std::vector<double> cand(nv, 0.0);
    bool has_null = false;
    if (!others.empty()) {
      const LsqResult ls = lsq_solve(a, b);
      has_null = ls.nullspace_basis.cols() > 0;
      double ssum = 0.0;
      for (std::size_t j = 0; j < others.size(); ++j) {
        cand[others[j]] = ls.solution(j, 0);
        if (vars[others[j]].simplex) ssum += ls.solution(j, 0);
      }
      cand[pivot] = 1.0 - ssum;
    } else {
      cand[pivot] = 1.0;
    }
    if (*std::min_element(cand.begin(), cand.end()) < -1e-9) continue;
    Vec zc(nv);
    for (int k = 0; k < nv; ++k) zc(k) = cand[k];
    const double res = rows > 0 ? (cols * zc).norm() : 0.0;
    if (res < best_res - 1e-10) {
      near.clear();
      best_res = res;
      z = cand;
      best_has_null = has_null;
      near.push_back(cand);
    } else if (res <= best_res + 1e-10) {
      near.push_back(cand);
      if (std::count_if(cand.begin(), cand.end(), [](double v) { return v > 1e-12; }) >
          std::count_if(z.begin(), z.end(), [](double v) { return v > 1e-12; })) {
        z = cand;
        best_has_null = has_null;
      }
    }
  }

  KktCertificate cert;
  cert.non_unique = best_has_null;
  for (const auto& s : near) {
    double d = 0.0;
    for (int k = 0; k < nv; ++k) d = std::max(d, std::abs(s[k] - z[k]));
    if (d > 1e-6) cert.non_unique = true;
  }
  for (double& v : z) v = std::max(0.0, v);

  std::array<Mat, 2> sum_g{Mat::Zero(ch.t1(), ch.t1()), Mat::Zero(ch.t2(), ch.t2())};
  double simplex = 0.0;
  for (int k = 0; k < nv; ++k) {
    if (vars[k].eta_user) continue;
    cert.multipliers[vars[k].tag] = z[k];
    if (vars[k].simplex) simplex += z[k];
    for (int u = 0; u < 2; ++u) sum_g[u] += z[k] * vars[k].grad[u].mat();
  }
  for (const auto& c : cons)
    if (!cert.multipliers.count(c.tag)) cert.multipliers[c.tag] = 0.0;

  for (int u = 1; u <= 2; ++u) {
    const SymMatrix sg(sum_g[u - 1]);
    double eta = power_active[u - 1] ? std::max(0.0, max_eigenvalue(sg)) : 0.0;
    cert.etas_or_nus[u - 1] = eta;
    cert.multipliers[u == 1 ? "eta1" : "eta2"] = eta;
    cert.w_or_k[u - 1] = SymMatrix::identity(ch.t(u)) * eta - sg;
  }

  auto m = [&](const char* tag) {
    auto it = cert.multipliers.find(tag);
    return it == cert.multipliers.end() ? 0.0 : it->second;
  };
  if (problem.is_boundary()) {
    cert.gamma_or_alpha = {m(kTagR1), m(kTagR2)};
  } else {
    cert.gamma_or_alpha = {m(kTagSumSingle)};
  }
  cert.lambdas_or_betas = {m(kTagRx1), m(kTagRx2)};

  KktResiduals& res = cert.residuals;
  res.simplex = std::abs(simplex - 1.0);
  res.min_eig_w = kInf;
  for (int u = 1; u <= 2; ++u) {
    const Mat ws = cert.w_or_k[u - 1].mat() * pair.s(u).mat();
    res.stationarity = std::max(res.stationarity, ws.cwiseAbs().maxCoeff());
    res.complementarity = std::max(res.complementarity, std::abs(ws.trace()));
    res.min_eig_w = std::min(res.min_eig_w, min_eigenvalue(cert.w_or_k[u - 1]));
  }
  return cert;
}

// ---------------------------------------------------------------------------

BoundarySweep boundary_sweep(const ChannelMimo& ch, int n_points, bool outer, const GenieParam& genie,
                             const SolverOptions& opts) {
  if (n_points < 2) throw ValidationError("a boundary sweep needs at least two points");
  BoundarySweep sw;
  sw.r_max = max_r2(ch);
  for (int j = 0; j < n_points; ++j) {
    const double r = sw.r_max * static_cast<double>(j) / static_cast<double>(n_points - 1);
    const OptProblem p = outer ? OptProblem::outer_boundary(ch, r, genie) : OptProblem::inner_boundary(ch, r);
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

}  // namespace vgic
