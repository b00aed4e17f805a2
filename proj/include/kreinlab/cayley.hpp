#pragma once

#include <vector>

#include "kreinlab/signature.hpp"

namespace kreinlab {

/// z off the real axis, zeta on the unit circle.
struct CayleyParams {
  cplx z{0.0, 1.0};
  cplx zeta{1.0, 0.0};

  /// Throws InvalidInput when |Im z| <= 1e-10 or ||zeta| - 1| > 1e-12.
  void validate() const;
};

/// Point of the Riemann sphere.
struct SpherePoint {
  bool infinite = false;
  cplx value{};

  static SpherePoint at(cplx v) { return {false, v}; }
  static SpherePoint infinity() { return {true, {}}; }
};

/// zeta (lambda - z) / (lambda - conj z); conj z -> infinity, infinity -> zeta.
SpherePoint cayley_scalar(const CayleyParams& p, SpherePoint lambda);
cplx cayley_scalar(const CayleyParams& p, cplx lambda);

/// (z zeta - conj(z) lambda) / (zeta - lambda); zeta -> infinity, infinity -> conj z.
SpherePoint cayley_inv_scalar(const CayleyParams& p, SpherePoint lambda);
cplx cayley_inv_scalar(const CayleyParams& p, cplx lambda);

/// zeta (H - z)(H - conj z)^{-1}. Throws SpectrumTooClose when z is within 1e-8 of sigma(H).
Mat cayley_op(const Mat& h, const KreinStructure& K, const CayleyParams& p, const ToleranceConfig& tol = {});

/// (z zeta - conj(z) T)(zeta - T)^{-1}. Throws SpectrumTooClose when zeta is within 1e-8 of sigma(T).
Mat cayley_inv_op(const Mat& t, const KreinStructure& K, const CayleyParams& p,
                  const ToleranceConfig& tol = {});

/// Root of unity of order 16 farthest from sigma(T); ties go to the smallest angle.
cplx auto_zeta(const Mat& t);

struct ClusterMatch {
  int hermitian_row = 0;
  int unitary_row = 0;
  bool inertia_equal = false;
};

struct TransportReport {
  CayleyParams params;
  InvariantReport hermitian;
  InvariantReport unitary;
  std::vector<ClusterMatch> matches;
  bool inertia_equal = true;
  bool sig_equal = false;
};

/// Reports for H and C(H) with on-axis clusters matched through the scalar map.
/// Throws ClusterMatchFailed when an image cluster is missing.
TransportReport transport_report(const Mat& h, const KreinStructure& K, const CayleyParams& p,
                                 const ToleranceConfig& tol = {});

}  // namespace kreinlab
