#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "kreinlab/tolerance.hpp"

namespace kreinlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

/// Builds a matrix from row-major entries. Rejects empty shapes and non-finite entries.
Mat make_matrix(int rows, int cols, const std::vector<cplx>& row_major);

bool all_finite(const Mat& a);

/// Frobenius norm; the default norm for every residual in the library.
double norm(const Mat& a);

/// Solves A X = B by partial-pivot LU.
/// Throws SingularMatrix when a pivot falls below tol.solve_pivot * ||A||.
Mat solve(const Mat& a, const Mat& b, const ToleranceConfig& tol = {});

struct EigenDecomposition {
  Vec values;       // with algebraic multiplicity
  Mat vectors;      // unit right eigenvectors, column j belongs to values[j]
  double residual;  // ||A V - V diag(values)||
};

/// General (non-normal) eigendecomposition: Hessenberg reduction followed by shifted QR.
/// Throws NoConvergence when the QR iteration cap is reached.
EigenDecomposition eig(const Mat& a);

/// Eigenvalues only, same algorithm as eig.
Vec eigenvalues(const Mat& a);

struct HermitianEigen {
  RealVec values;  // ascending
  Mat vectors;     // orthonormal columns
};

/// Throws NotHermitian when ||A - A*|| > tol.hermitian_check * ||A||.
HermitianEigen herm_eig(const Mat& a, const ToleranceConfig& tol = {});

struct Inertia {
  int plus = 0;
  int minus = 0;
  int zero = 0;
};

/// Sylvester inertia of a hermitian matrix; |eigenvalue| <= zero_tol counts as zero.
Inertia sylvester_inertia(const Mat& a, double zero_tol, const ToleranceConfig& tol = {});

/// Orthonormal basis of the column space, keeping singular values above rank_tol * s_max.
/// Returns an n x 0 matrix for numerically zero input.
Mat orthonormal_frame(const Mat& a, double rank_tol);

/// Orthonormal basis of the null space at the same relative threshold.
Mat kernel_frame(const Mat& a, double rank_tol);

int numerical_rank(const Mat& a, double rank_tol);

/// Smallest singular value.
double sigma_min(const Mat& a);

/// Scaling-and-squaring Pade exponential.
Mat matrix_exp(const Mat& a);

/// f(A) for normal A through its complex Schur form (diagonal up to rounding).
Mat normal_function(const Mat& a, const std::function<cplx(cplx)>& f);

/// f(A) for hermitian A through herm_eig.
Mat hermitian_function(const Mat& a, const std::function<double(double)>& f,
                       const ToleranceConfig& tol = {});

/// Unitary polar factor U of A = U |A|.
Mat polar_unitary(const Mat& a);

Mat adjoint(const Mat& a);
Mat identity(int n);

}  // namespace kreinlab
