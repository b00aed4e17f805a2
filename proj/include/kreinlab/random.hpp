#pragma once

#include <cstdint>
#include <random>

#include "kreinlab/numerics.hpp"

namespace kreinlab {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts, scaled by 1/sqrt(2).
Mat random_complex(int rows, int cols, Rng& rng);

/// Real standard normal entries.
Mat random_real(int rows, int cols, Rng& rng);

/// Hermitian matrix (G + G*)/2 with G from random_complex.
Mat random_hermitian(int n, Rng& rng);

/// Haar-like unitary from the QR factor of a complex Gaussian matrix.
Mat random_unitary(int n, Rng& rng);

/// Real orthogonal matrix from the QR factor of a real Gaussian matrix.
Mat random_orthogonal(int n, Rng& rng);

}  // namespace kreinlab
