#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kreinlab/real_structure.hpp"
#include "kreinlab/spectral.hpp"

namespace kreinlab {

struct InertiaPair {
  int nu_plus = 0;
  int nu_minus = 0;

  bool operator==(const InertiaPair&) const = default;
  int sig() const { return nu_plus - nu_minus; }
};

/// Inertia of Psi* J Psi on the cluster frame. Throws DegenerateForm when an
/// eigenvalue of the form has modulus <= zero_tol.
InertiaPair inertia(const SpectralCluster& c, const KreinStructure& K, double zero_tol,
                    const ToleranceConfig& tol = {});

/// Same from an explicit frame.
InertiaPair frame_inertia(const Mat& frame, const KreinStructure& K, double zero_tol,
                          const ToleranceConfig& tol = {});

struct ClusterRow {
  cplx eigenvalue;
  int multiplicity = 0;
  bool on_boundary = false;  // unit circle (unitary) or real axis (hermitian)
  InertiaPair nu;            // (0,0) off the boundary
  int sig = 0;
  int partner = -1;          // reflected cluster for off-boundary rows
};

struct InvariantReport {
  OperatorKind kind = OperatorKind::Hermitian;
  int n_plus = 0;
  int n_minus = 0;
  std::vector<ClusterRow> rows;
  int global_sig = 0;
  bool matches_dimension_law = false;  // global_sig == n_plus - n_minus
  std::optional<int> sig2;
  std::optional<int> sec;

  /// Krein signature of the cluster containing z, 0 when z is not an eigenvalue.
  int sig_at(cplx z, double radius) const;
};

/// Region on which inertia is counted for each operator kind.
Region boundary_region(OperatorKind kind);

/// Partition, region classification, per-cluster inertia and global Sig.
InvariantReport global_signature(const Mat& a, const KreinStructure& K, OperatorKind kind,
                                 const ToleranceConfig& tol = {});

/// Half the on-boundary multiplicity mod 2; kind (-1,-1) only. Throws OddDimension.
int sig2(const Mat& a, const RealStructure& R, OperatorKind kind, const ToleranceConfig& tol = {});
int sig2_from_report(const InvariantReport& rep);

/// Sig(1,T) mod 2 for kind (1,1) unitaries.
int sec(const Mat& t, const RealStructure& R, const ToleranceConfig& tol = {});
int sec_from_report(const InvariantReport& rep, const ToleranceConfig& tol = {});

/// H = i [[0, A*], [A, 0]] on (cols(A), rows(A)).
std::pair<Mat, KreinStructure> build_index_example(const Mat& a);

}  // namespace kreinlab
