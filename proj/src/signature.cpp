#include "kreinlab/signature.hpp"

#include <algorithm>
#include <cmath>

#include "kreinlab/errors.hpp"

namespace kreinlab {

InertiaPair frame_inertia(const Mat& frame, const KreinStructure& K, double zero_tol,
                          const ToleranceConfig& tol) {
  Inertia in = sylvester_inertia(frame.adjoint() * K.J * frame, zero_tol, tol);
  if (in.zero > 0) fail(ErrorCode::DegenerateForm, "Krein form on the cluster is degenerate");
  return {in.plus, in.minus};
}

InertiaPair inertia(const SpectralCluster& c, const KreinStructure& K, double zero_tol,
                    const ToleranceConfig& tol) {
  return frame_inertia(c.frame, K, zero_tol, tol);
}

Region boundary_region(OperatorKind kind) {
  return kind == OperatorKind::Unitary ? Region::UnitCircle : Region::RealAxis;
}

int InvariantReport::sig_at(cplx z, double radius) const {
  for (const auto& r : rows)
    if (r.on_boundary && std::abs(r.eigenvalue - z) <= radius) return r.sig;
  return 0;
}

InvariantReport global_signature(const Mat& a, const KreinStructure& K, OperatorKind kind,
                                 const ToleranceConfig& tol) {
  if (a.rows() != K.dim() || a.cols() != K.dim())
    fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ in dimension");
  InvariantReport rep;
  rep.kind = kind;
  rep.n_plus = K.n_plus;
  rep.n_minus = K.n_minus;
  ClusterPartition p = partition(a, tol);
  Region region = boundary_region(kind);
  double radius = std::max(p.delta, tol.match);
  for (const auto& c : p.clusters) {
    ClusterRow row;
    row.eigenvalue = c.center;
    row.multiplicity = c.multiplicity;
    Side s = classify(c, region, tol.eps_region);
    if (s == Side::Ambiguous)
      fail(ErrorCode::AmbiguousClassification,
           std::string("cluster too close to the ") + region_name(region));
    row.on_boundary = s == Side::In;
    if (row.on_boundary) {
      row.nu = inertia(c, K, tol.zero_tol, tol);
      row.sig = row.nu.sig();
      rep.global_sig += row.sig;
    } else {
      cplx zr = kind == OperatorKind::Unitary ? 1.0 / std::conj(c.center) : std::conj(c.center);
      row.partner = find_cluster(p, zr, radius * (1.0 + std::abs(zr)));
    }
    rep.rows.push_back(row);
  }
  rep.matches_dimension_law = rep.global_sig == K.n_plus - K.n_minus;
  return rep;
}

int sig2_from_report(const InvariantReport& rep) {
  int m = 0;
  for (const auto& r : rep.rows)
    if (r.on_boundary) m += r.multiplicity;
  if (m % 2 != 0) fail(ErrorCode::OddDimension, "on-boundary multiplicity is odd");
  return (m / 2) % 2;
}

int sig2(const Mat& a, const RealStructure& R, OperatorKind kind, const ToleranceConfig& tol) {
  if (!(R.kind == RealKind{-1, -1})) fail(ErrorCode::InvalidInput, "Sig2 is defined for kind (-1,-1)");
  return sig2_from_report(global_signature(a, R.K, kind, tol));
}

int sec_from_report(const InvariantReport& rep, const ToleranceConfig& tol) {
  return std::abs(rep.sig_at(cplx(1.0, 0.0), tol.special_point)) % 2;
}

int sec(const Mat& t, const RealStructure& R, const ToleranceConfig& tol) {
  if (!(R.kind == RealKind{1, 1})) fail(ErrorCode::InvalidInput, "Sec is defined for kind (1,1)");
  return sec_from_report(global_signature(t, R.K, OperatorKind::Unitary, tol), tol);
}

std::pair<Mat, KreinStructure> build_index_example(const Mat& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  KreinStructure K = make_standard(n, m);
  Mat h = Mat::Zero(n + m, n + m);
  h.topRightCorner(n, m) = a.adjoint();
  h.bottomLeftCorner(m, n) = a;
  return {cplx(0, 1) * h, K};
}

}  // namespace kreinlab
