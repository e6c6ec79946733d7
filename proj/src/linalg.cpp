#include "vgic/linalg.hpp"

#include "vgic/errors.hpp"

#include <algorithm>
#include <cmath>

namespace vgic {

SymMatrix::SymMatrix(std::size_t dim) : m_(Mat::Zero(dim, dim)) {}

SymMatrix::SymMatrix(const Mat& m) {
  if (m.rows() != m.cols()) throw ValidationError("SymMatrix requires a square matrix");
  if (!all_finite(m)) throw ValidationError("SymMatrix entries must be finite");
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(mat_from_rows(rows)) {}

SymMatrix SymMatrix::identity(std::size_t dim) { return SymMatrix(Mat(Mat::Identity(dim, dim))); }

SymMatrix SymMatrix::diag(const std::vector<double>& d) {
  Mat m = Mat::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymMatrix(m);
}

Mat mat_from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return mat_from_rows(v);
}

Mat mat_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Mat(0, 0);
  const std::size_t c = rows.front().size();
  Mat m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> mat_to_rows(const Mat& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

bool all_finite(const Mat& m) { return m.size() == 0 || m.allFinite(); }

EigenDecomposition sym_eigen(const SymMatrix& m) {
  EigenDecomposition out;
  const Eigen::Index n = m.mat().rows();
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Mat> es(m.mat());
  if (es.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
  // Eigen sorts ascending; flip.
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double min_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Mat>(m.mat(), Eigen::EigenvaluesOnly).eigenvalues()(0);
}

double max_eigenvalue(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  const auto ev = Eigen::SelfAdjointEigenSolver<Mat>(m.mat(), Eigen::EigenvaluesOnly).eigenvalues();
  return ev(ev.size() - 1);
}

bool is_psd(const SymMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

double logdet(const SymMatrix& m) {
  if (m.dim() == 0) return 0.0;
  const auto ev = Eigen::SelfAdjointEigenSolver<Mat>(m.mat(), Eigen::EigenvaluesOnly).eigenvalues();
  if (!(ev(0) > 1e-12)) throw DomainError("logdet of a matrix that is not positive definite");
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::log(ev(i));
  return s;
}

SymMatrix congruence(const Mat& l, const SymMatrix& s) {
  return SymMatrix(Mat(l * s.mat() * l.transpose()));
}

SymMatrix sqrtm_psd(const SymMatrix& m) {
  const auto ed = sym_eigen(m);
  Vec d(ed.values.size());
  for (std::size_t i = 0; i < ed.values.size(); ++i) d(i) = std::sqrt(std::max(0.0, ed.values[i]));
  return SymMatrix(Mat(ed.vectors * d.asDiagonal() * ed.vectors.transpose()));
}

SymMatrix clip_eigenvalues(const SymMatrix& m, double floor) {
  const auto ed = sym_eigen(m);
  Vec d(ed.values.size());
  for (std::size_t i = 0; i < ed.values.size(); ++i) d(i) = ed.values[i] < floor ? 0.0 : ed.values[i];
  return SymMatrix(Mat(ed.vectors * d.asDiagonal() * ed.vectors.transpose()));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat vec(const Mat& a) {
  Mat v(a.size(), 1);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) v(k++, 0) = a(i, j);
  return v;
}

Mat unvec(const Mat& v, std::size_t rows, std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) throw ValidationError("unvec size mismatch");
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

SvdResult svd(const Mat& a) {
  SvdResult out;
  const Eigen::Index n = a.cols();
  if (a.size() == 0) {
    out.v = Mat::Identity(n, n);
    out.u = Mat(a.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<Mat> js(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = js.singularValues();
  out.sigma.assign(sv.data(), sv.data() + sv.size());
  out.u = js.matrixU();
  out.v = js.matrixV();
  return out;
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(a).singularValues()(0);
}

LsqResult lsq_solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw ValidationError("lsq_solve: incompatible shapes");
  const Eigen::Index n = a.cols();
  LsqResult out;
  const SvdResult s = svd(a);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  const double cut = kRankTol * smax;
  Eigen::Index rank = 0;
  for (double v : s.sigma)
    if (smax > 0.0 && v > cut) ++rank;
  out.solution = Mat::Zero(n, b.cols());
  for (Eigen::Index k = 0; k < rank; ++k)
    out.solution += s.v.col(k) * (s.u.col(k).transpose() * b) / s.sigma[k];
  out.residual_norm = (a * out.solution - b).norm();
  out.nullspace_basis = s.v.rightCols(n - rank);
  return out;
}

}  // namespace vgic
