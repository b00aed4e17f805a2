#include "kreinlab/krein.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kreinlab/errors.hpp"
#include "kreinlab/random.hpp"

namespace kreinlab {

KreinStructure make_standard(int n_plus, int n_minus) {
  if (n_plus < 0 || n_minus < 0 || n_plus + n_minus < 1)
    fail(ErrorCode::InvalidInput, "Krein structure needs n_plus + n_minus >= 1");
  KreinStructure K{n_plus, n_minus, Mat::Zero(n_plus + n_minus, n_plus + n_minus)};
  for (int i = 0; i < n_plus; ++i) K.J(i, i) = 1.0;
  for (int i = n_plus; i < n_plus + n_minus; ++i) K.J(i, i) = -1.0;
  return K;
}

Mat GeneralFormReduction::to_standard(const Mat& a) const {
  return Q.adjoint() * W * a * W_inv * Q;
}

GeneralFormReduction reduce_general_form(const Mat& j, const ToleranceConfig& tol) {
  HermitianEigen he = herm_eig(j, tol);
  const Eigen::Index n = he.values.size();
  double scale = he.values.cwiseAbs().maxCoeff();
  if (he.values.cwiseAbs().minCoeff() <= 1e-10 * scale || scale == 0.0)
    fail(ErrorCode::SingularForm, "form is numerically singular");

  RealVec root(n), inv_root(n), sign(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    root(i) = std::sqrt(std::abs(he.values(i)));
    inv_root(i) = 1.0 / root(i);
    sign(i) = he.values(i) > 0 ? 1.0 : -1.0;
  }
  const Mat& U = he.vectors;
  GeneralFormReduction r;
  r.W = U * root.cast<cplx>().asDiagonal() * U.adjoint();
  r.W_inv = U * inv_root.cast<cplx>().asDiagonal() * U.adjoint();
  r.J_general = U * sign.cast<cplx>().asDiagonal() * U.adjoint();

  int np = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sign(i) > 0) ++np;
  r.K = make_standard(np, static_cast<int>(n) - np);
  r.Q = Mat(n, n);
  // Positive directions first; within each sign keep the order of the input basis
  // as far as the eigenvectors allow, which makes diagonal inputs map to Q = I.
  std::vector<Eigen::Index> pos, neg;
  for (Eigen::Index i = 0; i < n; ++i) (sign(i) > 0 ? pos : neg).push_back(i);
  auto lead = [&](Eigen::Index c) {
    Eigen::Index k;
    U.col(c).cwiseAbs().maxCoeff(&k);
    return k;
  };
  auto by_lead = [&](Eigen::Index a, Eigen::Index b) { return lead(a) < lead(b); };
  std::sort(pos.begin(), pos.end(), by_lead);
  std::sort(neg.begin(), neg.end(), by_lead);
  Eigen::Index c = 0;
  for (auto i : pos) r.Q.col(c++) = U.col(i);
  for (auto i : neg) r.Q.col(c++) = U.col(i);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p;
    r.Q.col(k).cwiseAbs().maxCoeff(&p);
    cplx ph = r.Q(p, k) / std::abs(r.Q(p, k));
    r.Q.col(k) /= ph;
  }
  return r;
}

Membership is_j_unitary(const Mat& t, const KreinStructure& K, double tol) {
  if (t.rows() != K.dim() || t.cols() != K.dim())
    fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ in dimension");
  double r = norm(t.adjoint() * K.J * t - K.J);
  return {r <= tol, r};
}

Membership is_j_hermitian(const Mat& h, const KreinStructure& K, double tol) {
  if (h.rows() != K.dim() || h.cols() != K.dim())
    fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ in dimension");
  double r = norm(h.adjoint() * K.J - K.J * h);
  return {r <= tol, r};
}

Mat random_j_hermitian(const KreinStructure& K, std::uint64_t seed) {
  Rng rng(seed);
  return K.J * random_hermitian(K.dim(), rng);
}

Mat random_j_unitary(const KreinStructure& K, std::uint64_t seed) {
  return matrix_exp(cplx(0, 1) * random_j_hermitian(K, seed));
}

}  // namespace kreinlab
