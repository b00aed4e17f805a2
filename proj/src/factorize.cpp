#include "kreinlab/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

Mat symplectic(int k) {
  Mat s = Mat::Zero(2 * k, 2 * k);
  s.topRightCorner(k, k) = -Mat::Identity(k, k);
  s.bottomLeftCorner(k, k) = Mat::Identity(k, k);
  return s;
}

double wrap(double a, double cut) {
  while (a <= cut) a += 2.0 * M_PI;
  while (a > cut + 2.0 * M_PI) a -= 2.0 * M_PI;
  return a;
}

}  // namespace

Mat unitary_log(const Mat& v, double cut) {
  return normal_function(v, [cut](cplx z) { return cplx(wrap(std::arg(z), cut), 0.0); });
}

double widest_gap_cut(const Mat& v) {
  Vec ev = eigenvalues(v);
  std::vector<double> a;
  for (Eigen::Index i = 0; i < ev.size(); ++i) a.push_back(std::arg(ev(i)));
  std::sort(a.begin(), a.end());
  if (a.empty()) return 0.0;
  double best = a.front() + 2.0 * M_PI - a.back();
  double cut = a.back() + best / 2.0;
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i] - a[i - 1] > best) {
      best = a[i] - a[i - 1];
      cut = a[i - 1] + best / 2.0;
    }
  return cut;
}

double gap_at_one(const Mat& v) {
  Vec ev = eigenvalues(v);
  double d = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) d = std::min(d, std::abs(ev(i) - 1.0));
  return d;
}

double class_residual(const Mat& v, UnitaryClass cls) {
  if (cls == UnitaryClass::Symmetric) return norm(v.transpose() - v);
  if (v.rows() % 2 != 0) return std::numeric_limits<double>::infinity();
  Mat s = symplectic(static_cast<int>(v.rows() / 2));
  return norm(s.adjoint() * v.transpose() * s - v);
}

Factorization factorize_unitary(const Mat& v, UnitaryClass cls, const ToleranceConfig& tol, bool require_gap) {
  const int n = static_cast<int>(v.rows());
  if (norm(v.adjoint() * v - Mat::Identity(n, n)) > tol.factorization)
    fail(ErrorCode::NotInClass, "input is not unitary");
  if (class_residual(v, cls) > tol.factorization) fail(ErrorCode::NotInClass, "input is not in the declared class");
  double cut = 0.0;
  if (require_gap) {
    if (gap_at_one(v) <= tol.gap) fail(ErrorCode::NotGapped, "1 lies in the spectrum");
  } else {
    cut = widest_gap_cut(v);
  }
  Mat h = unitary_log(v, cut);
  h = 0.5 * (h + h.adjoint());
  Mat e = matrix_exp(cplx(0, 0.5) * h);
  Factorization f;
  if (cls == UnitaryClass::Symmetric) {
    f.w = e;
    f.residual = norm(f.w.transpose() * f.w - v);
  } else {
    Mat s = symplectic(n / 2);
    f.w = s * e;
    f.residual = norm(s.adjoint() * f.w.transpose() * s * f.w - v);
  }
  return f;
}

Mat real_frame(const Mat& psi0, const Mat& S, int eta, const ToleranceConfig& tol) {
  const int k = static_cast<int>(psi0.cols());
  if (k == 0) return psi0;
  Mat u = psi0.adjoint() * S * psi0.conjugate();
  if (norm(psi0 * u - S * psi0.conjugate()) > 1e-8 * std::max(1.0, std::sqrt(double(k))))
    fail(ErrorCode::FramePreparationFailed, "subspace is not invariant under the Real symmetry");
  // Re-unitarize against rounding before factorizing.
  u = polar_unitary(u);
  Mat psi;
  if (eta == 1) {
    u = 0.5 * (u + u.transpose());
    u = polar_unitary(u);
    Factorization f = factorize_unitary(u, UnitaryClass::Symmetric, tol.scaled(1e3), false);
    psi = psi0 * f.w.transpose();
    if (norm(S * psi.conjugate() - psi) > 1e-7)
      fail(ErrorCode::FramePreparationFailed, "symmetric frame residual too large");
  } else {
    if (k % 2 != 0) fail(ErrorCode::FramePreparationFailed, "odd-dimensional subspace for eta = -1");
    Mat s = symplectic(k / 2);
    Mat x = s.adjoint() * u;
    x = 0.5 * (x + s.adjoint() * x.transpose() * s);
    x = polar_unitary(x);
    Factorization f = factorize_unitary(x, UnitaryClass::OddSymmetric, tol.scaled(1e3), false);
    psi = psi0 * f.w.transpose();
    if (norm(S * psi.conjugate() - psi * s) > 1e-7)
      fail(ErrorCode::FramePreparationFailed, "quaternionic frame residual too large");
  }
  return psi;
}

}  // namespace kreinlab
