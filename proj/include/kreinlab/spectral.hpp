#pragma once

#include <string>
#include <vector>

#include "kreinlab/krein.hpp"
#include "kreinlab/numerics.hpp"

namespace kreinlab {

enum class Region { RealAxis, UnitCircle, UpperHalf, LowerHalf, InsideDisc, OutsideDisc };

enum class Side { In, Out, Ambiguous };

const char* region_name(Region r);
Region parse_region(const std::string& s);

/// A group of nearby eigenvalues with its Riesz projection.
/// Invariants: ||P^2 - P|| <= tol.riesz, ||PT - TP|| <= tol.riesz ||T||,
/// |tr P - multiplicity| <= tol.trace.
struct SpectralCluster {
  cplx center;
  std::vector<cplx> eigenvalues;
  int multiplicity = 0;
  Mat projection;
  Mat frame;  // orthonormal basis of range(projection)
  int quad_points = 0;
};

struct ClusterPartition {
  std::vector<SpectralCluster> clusters;
  double gap = 0.0;    // smallest distance between members of different clusters
  double delta = 0.0;  // clustering threshold used
};

/// Transitive closure of |a - b| <= delta. Groups are ordered by first member index.
std::vector<std::vector<int>> cluster_eigenvalues(const Vec& eigs, double delta);

/// delta = tol.cluster_rel * (1 + spectral radius).
double default_delta(const Vec& eigs, const ToleranceConfig& tol = {});

/// Trapezoidal quadrature of (1/2 pi i) \oint (z - T)^{-1} dz around the members of
/// `spectrum` selected by `members`. The circle is centred at the cluster centroid with
/// radius half the distance to the nearest excluded eigenvalue, floored at delta/2.
/// Quadrature starts at tol.quad_min points and doubles up to tol.quad_max.
/// Throws NoSeparatingContour or QuadratureDivergence.
Mat riesz_projection(const Mat& t, const Vec& spectrum, const std::vector<int>& members, double delta,
                     const ToleranceConfig& tol = {}, int* points_used = nullptr);

/// Convenience form: the cluster is given by values; members are the eigenvalues of T
/// within delta of any listed value.
Mat riesz_projection(const Mat& t, const std::vector<cplx>& cluster, const ToleranceConfig& tol = {});

/// Orthonormal basis of the range of an idempotent with known rank.
Mat range_frame(const Mat& p, int rank);

/// Full spectral partition with a projection and frame per cluster.
ClusterPartition partition(const Mat& t, const ToleranceConfig& tol = {});
ClusterPartition partition(const Mat& t, const Vec& spectrum, const ToleranceConfig& tol);

/// Distance from the boundary of `r` (the real axis or the unit circle).
double boundary_distance(cplx lambda, Region r);

/// In/out of the region with band half-width eps; Ambiguous in (eps, 10 eps].
Side classify(cplx lambda, Region r, double eps);

/// Side of a whole cluster; Ambiguous if members disagree.
Side classify(const SpectralCluster& c, Region r, double eps);

/// Clusters of `t` inside region `r`. Throws AmbiguousClassification.
ClusterPartition spectral_subspaces(const Mat& t, const KreinStructure& K, Region r,
                                    const ToleranceConfig& tol = {});

/// Restricts an existing partition; throws AmbiguousClassification.
ClusterPartition restrict_to(const ClusterPartition& p, Region r, double eps);

/// Sum of the cluster projections (zero matrix of size n when empty).
Mat total_projection(const ClusterPartition& p, int n);

enum class OperatorKind { Unitary, Hermitian };

const char* kind_name(OperatorKind k);

struct ReflectionResidual {
  int cluster = 0;
  int partner = 0;
  double residual = 0.0;
};

struct ProjectionSymmetryReport {
  std::vector<ReflectionResidual> rows;
  double max_residual = 0.0;
};

/// Residual ||P_D* - J P_D' J|| with D' the reflection of D (1/conj for unitaries,
/// conj for hermitians). Throws UnmatchedReflection.
ProjectionSymmetryReport check_projection_symmetry(const ClusterPartition& p, const KreinStructure& K,
                                                   OperatorKind kind, const ToleranceConfig& tol = {});

/// Index of the cluster whose centre is within `radius` of z, or -1.
int find_cluster(const ClusterPartition& p, cplx z, double radius);

/// F = J Psi Psi* with Psi a frame of ker(H - lambda). Throws CorrectionFailed when
/// H - lambda + F stays numerically singular.
Mat fredholm_corrector(const Mat& h, const KreinStructure& K, double lambda, const ToleranceConfig& tol = {});

}  // namespace kreinlab
