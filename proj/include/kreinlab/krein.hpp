#pragma once

#include <cstdint>

#include "kreinlab/numerics.hpp"

namespace kreinlab {

/// Fundamental symmetry J = diag(1_{n_plus}, -1_{n_minus}), positive directions first.
struct KreinStructure {
  int n_plus = 0;
  int n_minus = 0;
  Mat J;

  int dim() const { return n_plus + n_minus; }
};

KreinStructure make_standard(int n_plus, int n_minus);

/// Reduction of an invertible hermitian form j to the standard diagonal form.
///
/// W = |j|^{1/2} turns j-unitaries into (j|j|^{-1})-unitaries; Q then rotates
/// j|j|^{-1} onto diag(1, -1). `to_standard` applies both steps.
struct GeneralFormReduction {
  KreinStructure K;
  Mat W;
  Mat W_inv;
  Mat Q;         // unitary with Q* (j|j|^{-1}) Q = K.J
  Mat J_general; // j |j|^{-1}

  Mat to_standard(const Mat& a) const;
};

/// Throws NotHermitian or SingularForm.
GeneralFormReduction reduce_general_form(const Mat& j, const ToleranceConfig& tol = {});

struct Membership {
  bool ok = false;
  double residual = 0.0;
};

/// ||T* J T - J|| <= tol.
Membership is_j_unitary(const Mat& t, const KreinStructure& K, double tol);

/// ||H* J - J H|| <= tol.
Membership is_j_hermitian(const Mat& h, const KreinStructure& K, double tol);

/// H = J A with A hermitian Gaussian; J-hermitian by construction.
Mat random_j_hermitian(const KreinStructure& K, std::uint64_t seed);

/// T = exp(i H) with H from random_j_hermitian.
Mat random_j_unitary(const KreinStructure& K, std::uint64_t seed);

}  // namespace kreinlab
