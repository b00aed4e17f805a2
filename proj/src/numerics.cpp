#include "kreinlab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "kreinlab/errors.hpp"

namespace kreinlab {

Mat make_matrix(int rows, int cols, const std::vector<cplx>& row_major) {
  if (rows < 1 || cols < 1) fail(ErrorCode::InvalidInput, "matrix shape must be at least 1x1");
  if (row_major.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    fail(ErrorCode::InvalidInput, "entry count does not match shape");
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = row_major[static_cast<size_t>(i) * cols + j];
  if (!all_finite(m)) fail(ErrorCode::InvalidInput, "non-finite matrix entry");
  return m;
}

bool all_finite(const Mat& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag())) return false;
  return true;
}

double norm(const Mat& a) { return a.size() == 0 ? 0.0 : a.norm(); }

Mat adjoint(const Mat& a) { return a.adjoint(); }

Mat identity(int n) { return Mat::Identity(n, n); }

Mat solve(const Mat& a, const Mat& b, const ToleranceConfig& tol) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    fail(ErrorCode::DimensionMismatch, "solve needs square A and conformable B");
  Eigen::PartialPivLU<Mat> lu(a);
  const Mat& u = lu.matrixLU();
  double floor = tol.solve_pivot * norm(a);
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    if (std::abs(u(i, i)) < floor || std::abs(u(i, i)) == 0.0)
      fail(ErrorCode::SingularMatrix, "pivot below threshold");
  return lu.solve(b);
}

EigenDecomposition eig(const Mat& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "eig needs a square matrix");
  Eigen::ComplexEigenSolver<Mat> es(a, true);
  if (es.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "shifted QR did not converge");
  EigenDecomposition d{es.eigenvalues(), es.eigenvectors(), 0.0};
  d.residual = norm(a * d.vectors - d.vectors * d.values.asDiagonal());
  return d;
}

Vec eigenvalues(const Mat& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "eig needs a square matrix");
  Eigen::ComplexEigenSolver<Mat> es(a, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "shifted QR did not converge");
  return es.eigenvalues();
}

HermitianEigen herm_eig(const Mat& a, const ToleranceConfig& tol) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "herm_eig needs a square matrix");
  if (norm(a - a.adjoint()) > tol.hermitian_check * norm(a))
    fail(ErrorCode::NotHermitian, "||A - A*|| exceeds threshold");
  Mat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "hermitian eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Inertia sylvester_inertia(const Mat& a, double zero_tol, const ToleranceConfig& tol) {
  Inertia in;
  if (a.size() == 0) return in;
  RealVec ev = herm_eig(a, tol).values;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > zero_tol)
      ++in.plus;
    else if (ev(i) < -zero_tol)
      ++in.minus;
    else
      ++in.zero;
  }
  return in;
}

namespace {

int rank_from(const RealVec& s, double rank_tol) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * s(0)) ++r;
  return r;
}

}  // namespace

Mat orthonormal_frame(const Mat& a, double rank_tol) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  int r = rank_from(svd.singularValues(), rank_tol);
  return svd.matrixU().leftCols(r);
}

Mat kernel_frame(const Mat& a, double rank_tol) {
  if (a.rows() == 0) return identity(static_cast<int>(a.cols()));
  if (a.cols() == 0) return Mat(0, 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  int r = rank_from(svd.singularValues(), rank_tol);
  return svd.matrixV().rightCols(a.cols() - r);
}

int numerical_rank(const Mat& a, double rank_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  return rank_from(svd.singularValues(), rank_tol);
}

double sigma_min(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  const RealVec& s = svd.singularValues();
  return s(s.size() - 1);
}

Mat matrix_exp(const Mat& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "matrix_exp needs a square matrix");
  return a.exp();
}

Mat normal_function(const Mat& a, const std::function<cplx(cplx)>& f) {
  if (a.rows() == 0) return a;
  Eigen::ComplexSchur<Mat> schur(a);
  if (schur.info() != Eigen::Success) fail(ErrorCode::NoConvergence, "Schur form did not converge");
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();
  Vec d(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) d(i) = f(t(i, i));
  return u * d.asDiagonal() * u.adjoint();
}

Mat hermitian_function(const Mat& a, const std::function<double(double)>& f,
                       const ToleranceConfig& tol) {
  if (a.rows() == 0) return a;
  HermitianEigen he = herm_eig(a, tol);
  RealVec d(he.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(he.values(i));
  return he.vectors * d.cast<cplx>().asDiagonal() * he.vectors.adjoint();
}

Mat polar_unitary(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace kreinlab
