#pragma once

#include "vgic/channel.hpp"
#include "vgic/rates.hpp"

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vgic {

enum class ProblemKind { InnerSum, InnerBoundary, OuterSum, OuterBoundary };

std::string to_string(ProblemKind k);

struct OptProblem {
  ProblemKind kind = ProblemKind::InnerSum;
  ChannelMimo channel;
  double r = 0.0;       // boundary kinds: target R2
  GenieParam genie;     // outer kinds

  static OptProblem inner_sum(const ChannelMimo& ch);
  static OptProblem inner_boundary(const ChannelMimo& ch, double r);
  static OptProblem outer_sum(const ChannelMimo& ch, const GenieParam& g);
  static OptProblem outer_boundary(const ChannelMimo& ch, double r, const GenieParam& g);

  bool is_boundary() const {
    return kind == ProblemKind::InnerBoundary || kind == ProblemKind::OuterBoundary;
  }
};

struct SolverOptions {
  double tol = 1e-7;          // objective accuracy, nats
  int max_iter = 50000;       // Newton steps, all starts together
  int starts = 2;
  double active_tol = 1e-6;   // slack below which a constraint counts as active
};

// Constraint tags.
inline constexpr const char* kTagSumSingle = "sum_single";  // R1+R2 <= g1+g2
inline constexpr const char* kTagRx1 = "sum_rx1";           // sum bound at receiver 1
inline constexpr const char* kTagRx2 = "sum_rx2";           // sum bound at receiver 2
inline constexpr const char* kTagR1 = "r1_single";          // R1 <= g1
inline constexpr const char* kTagR2 = "r2_target";          // g2 >= r
inline constexpr const char* kTagPower1 = "power1";
inline constexpr const char* kTagPower2 = "power2";

/// One rate constraint of an epigraph problem. Objective constraints read
/// t <= f - shift; hard constraints read f >= shift.
struct RateConstraint {
  std::string tag;
  RateExpr expr;
  double shift = 0.0;
  bool hard = false;
};

/// Constraints for a problem. A sum bound at receiver i is left out when the
/// cross link into receiver i is absent; an outer sum bound is left out when
/// its genie is absent.
std::vector<RateConstraint> build_constraints(const OptProblem& p);

/// max over S2 of g2.
double max_r2(const ChannelMimo& ch);
double max_r1(const ChannelMimo& ch);

struct OptResult {
  CovariancePair pair;
  double objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> active_set;
  int iterations = 0;
  bool converged = false;
  bool endpoint = false;  // boundary problem solved with S2 fixed at its single-user optimum
};

OptResult solve(const OptProblem& problem, const SolverOptions& opts = {});

/// Objective re-evaluated from the rates at a given pair.
double objective_at(const OptProblem& problem, const CovariancePair& pair);

struct KktResiduals {
  double stationarity = 0.0;     // max_i ||W_i S_i||_max
  double complementarity = 0.0;  // max_i |tr(W_i S_i)|
  double min_eig_w = 0.0;        // min_i lambda_min(W_i)
  double simplex = 0.0;          // |sum of objective multipliers - 1|
};

/// Multipliers of the sum-rate problem (gamma, lambda, eta, W) or of the
/// boundary problem (alpha, beta, nu, K); the boundary layout keeps alpha1 in
/// gamma_or_alpha[0] and alpha2 in gamma_or_alpha[1].
struct KktCertificate {
  std::vector<double> gamma_or_alpha;
  std::array<double, 2> lambdas_or_betas{0.0, 0.0};
  std::array<double, 2> etas_or_nus{0.0, 0.0};
  std::array<SymMatrix, 2> w_or_k;
  std::map<std::string, double> multipliers;  // by constraint tag
  KktResiduals residuals;
  bool non_unique = false;
};

KktCertificate recover_kkt(const OptProblem& problem, const OptResult& result,
                           const SolverOptions& opts = {});

// ---------------------------------------------------------------------------

struct RegionPoint {
  double r1 = 0.0, r2 = 0.0;
  double phi = std::numeric_limits<double>::quiet_NaN();
  double q = std::numeric_limits<double>::quiet_NaN();
  bool certified = false;
  std::optional<CovariancePair> cov;
};

struct RegionPolyline {
  std::vector<RegionPoint> points;
};

struct BoundarySweep {
  RegionPolyline polyline;
  std::vector<OptProblem> problems;
  std::vector<OptResult> results;
  double r_max = 0.0;
  bool monotone = true;
};

/// Uniform grid in r over [0, max g2]. Outer sweeps use the given genie at every point.
BoundarySweep boundary_sweep(const ChannelMimo& ch, int n_points, bool outer,
                             const GenieParam& genie = {}, const SolverOptions& opts = {});

}  // namespace vgic
