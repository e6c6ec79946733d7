#pragma once

#include "vgic/channel.hpp"
#include "vgic/miso.hpp"
#include "vgic/rates.hpp"
#include "vgic/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vgic {

/// Certificate tolerances.
inline constexpr double kMarkovResidualTol = 1e-8;
inline constexpr double kGenieNormTol = 1e-9;    // ||A||_2 <= 1 + this
inline constexpr double kCertPsdTol = 1e-8;      // W - lambda O >= -this
inline constexpr double kMultiplierTol = 1e-6;   // lambda_j above this counts as positive

struct AMatrixSolution {
  Mat a;
  double residual = 0.0;
  double spectral_norm = 0.0;
  int freedom_dim = 0;
  int search_iterations = 0;

  bool consistent() const { return residual <= kMarkovResidualTol; }
  bool admissible() const { return consistent() && spectral_norm <= 1.0 + kGenieNormTol; }
};

/// Solves S H^T = S F^T A^T for A (r_i x r_j): minimum-norm solution, then a
/// coordinate search over the solution set to bring ||A||_2 below 1.
AMatrixSolution solve_a(const SymMatrix& s_star, const Mat& h, const Mat& f, int max_search = 500);

/// Solves H = A F (the classical strong-interference genie).
AMatrixSolution solve_a_exact(const Mat& h, const Mat& f, int max_search = 500);

enum class VerdictStatus { Certified, NotCertified, Inconclusive };

std::string to_string(VerdictStatus s);

struct ConditionCheck {
  std::string name;
  bool passed = false;
  double margin = 0.0;  // residual, norm excess or min eigenvalue depending on the check
  std::string note;
};

struct GsiVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::vector<ConditionCheck> details;
  double r1 = 0.0, r2 = 0.0;
  GenieParam genie;  // genie matrices that passed; absent for users not needed
  std::optional<std::array<SymMatrix, 2>> o;  // O_i for the genie users

  bool certified() const { return status == VerdictStatus::Certified; }
};

GsiVerdict certify_sum_rate(const ChannelMimo& ch, const OptResult& result, const KktCertificate& cert,
                            double psd_tol = kCertPsdTol);

GsiVerdict certify_boundary_point(const ChannelMimo& ch, const OptResult& result, double r,
                                  const KktCertificate& cert, double psd_tol = kCertPsdTol);

/// Solve, recover multipliers and certify in one call.
struct SumRateAnalysis {
  OptProblem problem;
  OptResult result;
  KktCertificate kkt;
  GsiVerdict verdict;
};
SumRateAnalysis analyze_sum_rate(const ChannelMimo& ch, const SolverOptions& opts = {});

struct BoundaryAnalysis {
  BoundarySweep sweep;
  std::vector<KktCertificate> kkt;
  std::vector<GsiVerdict> verdicts;
};

/// Inner sweep with a verdict per point (certified flag set on the polyline).
BoundaryAnalysis certified_boundary(const ChannelMimo& ch, int n_points, const SolverOptions& opts = {});

/// Outer sweep choosing the genie per point: an admissible Markov / exact A
/// when one exists, otherwise A = 0.
BoundarySweep outer_boundary_per_point(const ChannelMimo& ch, int n_points, const SolverOptions& opts = {});

/// Single-user optimal inputs satisfy the generalized very-strong inequality for both users.
bool very_strong_general(const ChannelMimo& ch);

using miso::SimoReport;

struct RegimeReport {
  ChannelKind kind = ChannelKind::GeneralMimo;
  bool very_strong = false;
  bool strong_classical = false;
  bool gsi_sum_rate = false;
  bool gsi_full_region = false;
  double fraction_of_boundary_certified = 0.0;
  std::optional<SimoReport> simo;
  std::optional<std::string> zic_case;
  VerdictStatus sum_rate_status = VerdictStatus::Inconclusive;
  double sum_rate = 0.0;
};

RegimeReport classify_regime(const ChannelMimo& ch, int n_points = 9, const SolverOptions& opts = {});

}  // namespace vgic
