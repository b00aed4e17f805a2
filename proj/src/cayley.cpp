#include "kreinlab/cayley.hpp"

#include <cmath>
#include <limits>

#include "kreinlab/errors.hpp"

namespace kreinlab {

void CayleyParams::validate() const {
  if (std::abs(z.imag()) <= 1e-10) fail(ErrorCode::InvalidInput, "Cayley parameter z must be off the real axis");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) fail(ErrorCode::InvalidInput, "Cayley parameter zeta must be unimodular");
}

SpherePoint cayley_scalar(const CayleyParams& p, SpherePoint l) {
  if (l.infinite) return SpherePoint::at(p.zeta);
  cplx d = l.value - std::conj(p.z);
  if (d == 0.0) return SpherePoint::infinity();
  return SpherePoint::at(p.zeta * (l.value - p.z) / d);
}

cplx cayley_scalar(const CayleyParams& p, cplx l) { return p.zeta * (l - p.z) / (l - std::conj(p.z)); }

SpherePoint cayley_inv_scalar(const CayleyParams& p, SpherePoint l) {
  if (l.infinite) return SpherePoint::at(std::conj(p.z));
  cplx d = p.zeta - l.value;
  if (d == 0.0) return SpherePoint::infinity();
  return SpherePoint::at((p.z * p.zeta - std::conj(p.z) * l.value) / d);
}

cplx cayley_inv_scalar(const CayleyParams& p, cplx l) {
  return (p.z * p.zeta - std::conj(p.z) * l) / (p.zeta - l);
}

namespace {

double distance_to(const Vec& spec, cplx w) {
  double d = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < spec.size(); ++i) d = std::min(d, std::abs(spec(i) - w));
  return d;
}

}  // namespace

Mat cayley_op(const Mat& h, const KreinStructure& K, const CayleyParams& p, const ToleranceConfig& tol) {
  p.validate();
  if (h.rows() != K.dim()) fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ");
  Vec spec = eigenvalues(h);
  if (distance_to(spec, p.z) <= 1e-8 || distance_to(spec, std::conj(p.z)) <= 1e-8)
    fail(ErrorCode::SpectrumTooClose, "z is too close to the spectrum");
  const int n = static_cast<int>(h.rows());
  Mat I = Mat::Identity(n, n);
  Mat a = h - p.z * I;
  Mat b = h - std::conj(p.z) * I;
  // a and b commute, so a b^{-1} = b^{-1} a.
  return p.zeta * solve(b, a, tol);
}

Mat cayley_inv_op(const Mat& t, const KreinStructure& K, const CayleyParams& p, const ToleranceConfig& tol) {
  p.validate();
  if (t.rows() != K.dim()) fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ");
  Vec spec = eigenvalues(t);
  if (distance_to(spec, p.zeta) <= 1e-8) fail(ErrorCode::SpectrumTooClose, "zeta is too close to the spectrum");
  const int n = static_cast<int>(t.rows());
  Mat I = Mat::Identity(n, n);
  Mat a = p.z * p.zeta * I - std::conj(p.z) * t;
  Mat b = p.zeta * I - t;
  return solve(b, a, tol);
}

cplx auto_zeta(const Mat& t) {
  Vec spec = eigenvalues(t);
  cplx best = 1.0;
  double bd = -1.0;
  for (int k = 0; k < 16; ++k) {
    double th = 2.0 * M_PI * k / 16.0;
    cplx w(std::cos(th), std::sin(th));
    if (k == 0) w = 1.0;
    if (k == 4) w = cplx(0, 1);
    if (k == 8) w = -1.0;
    if (k == 12) w = cplx(0, -1);
    double d = distance_to(spec, w);
    if (d > bd + 1e-12) {
      bd = d;
      best = w;
    }
  }
  return best;
}

TransportReport transport_report(const Mat& h, const KreinStructure& K, const CayleyParams& p,
                                 const ToleranceConfig& tol) {
  TransportReport rep;
  rep.params = p;
  Mat t = cayley_op(h, K, p, tol);
  rep.hermitian = global_signature(h, K, OperatorKind::Hermitian, tol);
  rep.unitary = global_signature(t, K, OperatorKind::Unitary, tol);
  for (size_t i = 0; i < rep.hermitian.rows.size(); ++i) {
    const ClusterRow& r = rep.hermitian.rows[i];
    if (!r.on_boundary) continue;
    cplx img = cayley_scalar(p, r.eigenvalue);
    int best = -1;
    double bd = tol.match * (1.0 + std::abs(img));
    for (size_t j = 0; j < rep.unitary.rows.size(); ++j) {
      double d = std::abs(rep.unitary.rows[j].eigenvalue - img);
      if (d <= bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) fail(ErrorCode::ClusterMatchFailed, "no unitary cluster at the Cayley image");
    bool eq = rep.unitary.rows[best].on_boundary && rep.unitary.rows[best].nu == r.nu;
    rep.matches.push_back({static_cast<int>(i), best, eq});
    rep.inertia_equal = rep.inertia_equal && eq;
  }
  rep.sig_equal = rep.hermitian.global_sig == rep.unitary.global_sig;
  return rep;
}

}  // namespace kreinlab
