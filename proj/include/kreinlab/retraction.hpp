#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kreinlab/factorize.hpp"
#include "kreinlab/homotopy.hpp"

namespace kreinlab {

/// Orthonormal frame of a J-nondegenerate subspace, rotated inside the subspace so that
/// j = psi* J psi has the kind-specific form:
///   no R, (1,1):  diag(d), positives first
///   (-1,1):       diag(D, D) with S conj(psi) = psi s
///   (-1,-1):      diag(D, -D) with S conj(psi) = psi s
///   (1,-1):       i [[0,-D],[D,0]]
/// n = |j|^{-1/2} and J_psi = j |j|^{-1}.
struct PreparedFrame {
  Mat psi;
  Mat j;
  Mat n;
  Mat n_inv;
  Mat J_psi;
  int plus = 0;
  int minus = 0;
};

PreparedFrame prepare_frame(const Mat& psi0, const KreinStructure& K, const RealStructure* R,
                            const ToleranceConfig& tol = {});

/// H_t = (1 - t) H + i t (P_+ - P_-) with P_+- the spectral projections of the open half planes.
OperatorPath spectral_flatten(const Mat& h, const KreinStructure& K, const RealStructure* R,
                              const ToleranceConfig& tol = {});

struct BlockDecomposition {
  Mat M;
  Mat M_inv;
  Mat H_psi;
  Mat J_psi;
  Mat H_phi;
  Mat J_phi;
  PreparedFrame psi;
  PreparedFrame phi;
  double residual = 0.0;  // max of the block, congruence and inverse residuals
};

/// M = (psi n_psi, phi n_phi) with phi spanning J E^perp; M^{-1} H M = diag(H_psi, H_phi).
/// Throws NotInvariant, DegenerateSubspace.
BlockDecomposition block_decompose(const Mat& h, const KreinStructure& K, const Mat& e_frame,
                                   const RealStructure* R = nullptr, const ToleranceConfig& tol = {});

struct LiftResult {
  OperatorPath path;
  Mat endpoint;
  Mat V;                   // perturbation in the prepared kernel coordinates
  int kernel_dim = 0;      // after the lift
  InertiaPair kernel_inertia;
  Mat kernel_frame;        // orthonormal frame of the remaining kernel
};

/// H_t = H + t psi n V n^{-1} psi* P_0 on the kernel of a flat operator.
/// Throws FramePreparationFailed, InvalidInput when H is not flat.
LiftResult lift_kernel(const Mat& h_flat, const KreinStructure& K, const RealStructure* R,
                       const ToleranceConfig& tol = {});

struct LagrangianFrames {
  Mat u_plus;
  Mat u_minus;
  Mat P_plus;
  Mat P_minus;
  double isotropy_residual = 0.0;
  double embedding_residual = 0.0;
  double reproduction_residual = 0.0;
  double certificate = 0.0;  // smallest singular value of u_-* u_+ - 1
};

/// P_+- = Phi_+-(Phi_-+* J Phi_+-)^{-1} Phi_-+* J with Phi_+- = (u_+-; 1)/sqrt 2.
Mat projection_from_frames(const Mat& u_this, const Mat& u_other);

/// Needs n_plus == n_minus and spectrum in {i, -i}. Throws NotLagrangian, NotFredholmPair.
LagrangianFrames lagrangian_frames(const Mat& h, const KreinStructure& K, const ToleranceConfig& tol = {});

enum class StraightenSymmetry { None, Symmetric, OddSymmetric, RealAvoiding1, QuaternionicAvoiding1 };
const char* symmetry_name(StraightenSymmetry s);
StraightenSymmetry symmetry_for(const RealStructure* R);

struct StraightenResult {
  OperatorPath path;          // H_t = i (P_+,t - P_-,t)
  Mat u_plus;                 // u_+ is kept fixed; u_-,1 = -u_+
  double min_certificate = 0.0;
  std::optional<double> factorization_residual;  // symmetric classes
};

/// v = u_-* u_+, v_t = exp(i((1 - t) theta + t pi)) on eigen-angles theta in (0, 2 pi),
/// u_-,t = u_+ v_t*. Throws PathBlocked.
StraightenResult straighten(const Mat& u_plus, const Mat& u_minus, StraightenSymmetry symmetry,
                            const ToleranceConfig& tol = {});

struct TraceSegment {
  std::string stage;  // flatten, lift, straighten, final
  OperatorPath path;
  double membership_residual = 0.0;
};

struct RetractionTrace {
  std::vector<TraceSegment> segments;
  Mat initial;
  Mat terminal;
  Mat P_plus;
  Mat P_minus;
  Mat u_plus;
  Mat A;
  std::string a_class;
  double a_residual = 0.0;
  int sig_initial = 0;
  int sig_terminal = 0;
  int kernel_dim_after_lift = 0;
  InertiaPair kernel_inertia;
  std::optional<int> sig2;
  double max_chain_gap = 0.0;
  double max_membership = 0.0;
  std::optional<double> factorization_residual;
};

/// flatten -> lift -> (block reduction for a (1,1) kernel of kind (-1,-1)) -> frames -> straighten.
/// Stage errors keep their code with the stage prefixed to the message.
RetractionTrace retract_to_model(const Mat& h, const KreinStructure& K, const RealStructure* R,
                                 const ToleranceConfig& tol = {}, int membership_samples = 9);

/// Class of the terminal block A and its residual per kind.
std::pair<std::string, double> terminal_class(const Mat& a, const RealStructure* R);

}  // namespace kreinlab
