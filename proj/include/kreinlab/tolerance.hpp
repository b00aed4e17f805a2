#pragma once

namespace kreinlab {

/// Numerical thresholds used across the library. Passed explicitly; no globals.
struct ToleranceConfig {
  double solve_pivot = 1e-13;       // relative pivot floor in solve
  double hermitian_check = 1e-10;   // relative ||A - A*|| accepted by herm_eig
  double riesz = 1e-8;              // ||P^2 - P|| target for contour quadrature
  double riesz_sum = 1e-7;          // completeness of a partition
  double trace = 1e-6;              // |tr P - multiplicity|
  double contour_clearance = 1e-9;  // minimal distance of a contour to the spectrum
  double cluster_rel = 1e-6;        // clustering delta = cluster_rel * (1 + spectral radius)
  double eps_region = 1e-7;         // half-width of the real-axis / unit-circle band
  double zero_tol = 1e-8;           // degeneracy threshold for Krein forms
  double membership = 1e-8;         // group / algebra membership
  double path_membership = 1e-7;    // membership along sampled paths
  double rank = 1e-8;               // relative singular value cutoff for kernels and frames
  double match = 1e-6;              // eigenvalue multiset matching
  double special_point = 1e-6;      // snapping to +-1 (unitary) or 0 (hermitian)
  double min_step = 1e-6;           // smallest tracking step
  double step_ratio = 0.2;          // allowed move relative to nearest-neighbour distance
  double event_bracket = 1e-8;      // bisection width when localising events
  double factorization = 1e-9;      // unitary factorization residual
  double gap = 1e-8;                // distance of 1 from the spectrum of a gapped unitary
  int quad_min = 64;
  int quad_max = 1024;

  /// Returns a copy with every threshold multiplied by `factor`; counts are untouched.
  ToleranceConfig scaled(double factor) const;

  /// Defaults, scaled by the KREINLAB_TOL environment variable when it parses as a positive number.
  static ToleranceConfig from_env();
};

}  // namespace kreinlab
