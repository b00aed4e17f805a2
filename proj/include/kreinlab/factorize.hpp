#pragma once

#include "kreinlab/numerics.hpp"

namespace kreinlab {

enum class UnitaryClass { Symmetric, OddSymmetric };

/// h hermitian with exp(i h) = v for unitary (normal) v; eigen-angles lie in (cut, cut + 2 pi).
Mat unitary_log(const Mat& v, double cut_angle);

/// Angle in the middle of the widest arc free of spectrum.
double widest_gap_cut(const Mat& v);

/// Distance of 1 from the spectrum of v.
double gap_at_one(const Mat& v);

struct Factorization {
  Mat w;
  double residual = 0.0;
};

/// Symmetric (v^t = v): v = w^t w with w = exp(i h / 2), h = -i log v.
/// Odd-symmetric (s* v^t s = v): v = s* w^t s w with w = s exp(i h / 2).
/// The logarithm is cut at 1 when `require_gap` (NotGapped otherwise), else at the widest gap.
/// Throws NotInClass when v is not a unitary of the class to tol.factorization.
Factorization factorize_unitary(const Mat& v, UnitaryClass cls, const ToleranceConfig& tol = {},
                                bool require_gap = true);

/// Class residual ||v^t - v|| or ||s* v^t s - v||.
double class_residual(const Mat& v, UnitaryClass cls);

/// Orthonormal frame psi = psi0 x of the same subspace with S conj(psi) = psi (eta = 1)
/// or S conj(psi) = psi s (eta = -1, s the symplectic unit of the frame width).
/// The subspace must be invariant under S conj. Throws FramePreparationFailed.
Mat real_frame(const Mat& psi0, const Mat& S, int eta, const ToleranceConfig& tol = {});

}  // namespace kreinlab
