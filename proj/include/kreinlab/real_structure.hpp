#pragma once

#include "kreinlab/krein.hpp"

namespace kreinlab {

/// Kind (eta, tau): S^2 = eta, J S = tau S J.
struct RealKind {
  int eta = 1;
  int tau = 1;

  bool operator==(const RealKind&) const = default;
};

/// Real symmetry S in normal form together with its Krein structure.
struct RealStructure {
  RealKind kind;
  Mat S;
  KreinStructure K;
};

}  // namespace kreinlab
