#pragma once

// Small dense linear algebra on top of Eigen.

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace vgic {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Absolute eigenvalue tolerance used by every PSD test.
inline constexpr double kPsdTol = 1e-9;

/// Relative singular-value cutoff for rank decisions in lsq_solve.
inline constexpr double kRankTol = 1e-10;

/// Dense symmetric matrix. Symmetry is enforced on construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim);
  explicit SymMatrix(const Mat& m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix identity(std::size_t dim);
  static SymMatrix zero(std::size_t dim) { return SymMatrix(dim); }
  static SymMatrix diag(const std::vector<double>& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Mat& mat() const { return m_; }
  double trace() const { return m_.trace(); }

  SymMatrix operator+(const SymMatrix& o) const { return SymMatrix(Mat(m_ + o.m_)); }
  SymMatrix operator-(const SymMatrix& o) const { return SymMatrix(Mat(m_ - o.m_)); }
  SymMatrix operator*(double s) const { return SymMatrix(Mat(m_ * s)); }
  friend SymMatrix operator*(double s, const SymMatrix& a) { return a * s; }
  bool operator==(const SymMatrix& o) const { return m_ == o.m_; }

 private:
  Mat m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Mat vectors;                 // orthonormal columns, matching values
};

struct SvdResult {
  Mat u;                       // m x min(m,n)
  std::vector<double> sigma;   // descending
  Mat v;                       // n x n, full
};

struct LsqResult {
  Mat solution;
  double residual_norm = 0.0;
  Mat nullspace_basis;  // n x d, d may be 0
};

Mat mat_from_rows(std::initializer_list<std::initializer_list<double>> rows);
Mat mat_from_rows(const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> mat_to_rows(const Mat& m);
bool all_finite(const Mat& m);

EigenDecomposition sym_eigen(const SymMatrix& m);
double min_eigenvalue(const SymMatrix& m);
double max_eigenvalue(const SymMatrix& m);
bool is_psd(const SymMatrix& m, double tol = kPsdTol);

/// Natural-log determinant; throws DomainError unless min eigenvalue > 1e-12.
double logdet(const SymMatrix& m);

/// L S L^T, symmetrized.
SymMatrix congruence(const Mat& l, const SymMatrix& s);

/// Principal square root of a PSD matrix (negative eigenvalues clipped).
SymMatrix sqrtm_psd(const SymMatrix& m);

/// Zero eigenvalues below `floor`; returns the cleaned matrix.
SymMatrix clip_eigenvalues(const SymMatrix& m, double floor);

Mat kron(const Mat& a, const Mat& b);
/// Column-stacking vectorization.
Mat vec(const Mat& a);
Mat unvec(const Mat& v, std::size_t rows, std::size_t cols);

SvdResult svd(const Mat& a);
double spectral_norm(const Mat& a);

/// Minimum-norm least-squares solution of a x = b.
LsqResult lsq_solve(const Mat& a, const Mat& b);

}  // namespace vgic
