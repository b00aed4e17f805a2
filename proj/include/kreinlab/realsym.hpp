#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kreinlab/real_structure.hpp"
#include "kreinlab/signature.hpp"

namespace kreinlab {

/// Normal-form S:
///   (1,1)   S = 1
///   (-1,1)  S = diag(s, ..., s), s = [[0,-1],[1,0]]; needs both n_plus and n_minus even
///   tau=-1  S = [[0, eta 1], [1, 0]]; needs n_plus == n_minus
/// Throws IncompatibleDimensions.
RealStructure make_real_structure(RealKind kind, int n_plus, int n_minus);

/// Standard symplectic unit [[0,-1_k],[1_k,0]] of size 2k.
Mat symplectic_unit(int k);

/// Residual of S* conj(A) S = A (unitary) or S* conj(A) S = -A (hermitian).
Membership is_member(const Mat& a, const RealStructure& R, OperatorKind kind, double tol);

/// Checks the structural invariants of R (reality, S^2 = eta, J S = tau S J).
double structure_residual(const RealStructure& R);

struct GroupInfo {
  std::string group;
  std::string invariants;
  std::vector<std::string> bifurcations;
  std::string inertia_relation;
};

/// Classical group of the Real structure; nullptr means no Real structure, U(p,q).
GroupInfo classify_group(const RealStructure* R, const KreinStructure& K);

/// Conj-reflected point: conj(z) for unitaries, -conj(z) for hermitians.
cplx real_reflection(cplx z, OperatorKind kind);

struct SymmetryReport {
  double multiset_residual = 0.0;
  double projection_residual = 0.0;
};

/// (a) closure of the spectrum under the full reflection group, (b) S* conj(P_D) S = P_{D'}.
/// Throws SymmetryViolated naming the offending eigenvalue.
SymmetryReport check_spectral_symmetries(const Mat& a, const RealStructure& R, OperatorKind kind,
                                         const ToleranceConfig& tol = {});

struct KramersResult {
  bool ok = true;
  int clusters_checked = 0;
  std::vector<std::string> diagnostics;
};

/// For eta = -1: real eigenvalues of unitaries, imaginary eigenvalues of hermitians,
/// have even algebraic and geometric multiplicity.
KramersResult kramers_check(const Mat& a, const RealStructure& R, OperatorKind kind,
                            const ToleranceConfig& tol = {});

/// (H - S* conj(H) S) / 2, the projection onto Real-symmetric J-hermitians.
Mat symmetrize(const Mat& h, const RealStructure& R);

/// Symmetrized random J-hermitian, or its exponential exp(i H) for unitaries.
Mat random_member(const RealStructure& R, OperatorKind kind, std::uint64_t seed, double scale = 1.0);

/// Signature report extended by the kind-specific invariants; throws
/// InvariantConstraintViolated when a kind constraint fails.
InvariantReport full_invariant_report(const Mat& a, const RealStructure& R, OperatorKind kind,
                                      const ToleranceConfig& tol = {});

/// Unitary U commuting with J such that U* S conj(U) is the normal form of the kind.
/// Throws FramePreparationFailed when S does not have the declared kind.
Mat normal_form_basis(const Mat& S, const KreinStructure& K, RealKind kind, const ToleranceConfig& tol = {});

}  // namespace kreinlab
