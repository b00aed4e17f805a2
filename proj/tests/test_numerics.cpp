#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace kt;

TEST_CASE("solve: identity, diagonal, random residual") {
  Rng rng(3);
  Mat b = random_complex(2, 3, rng);
  CHECK(norm(solve(identity(2), b) - b) < 1e-14);
  CHECK(norm(solve(diag({2.0, 0.5}), identity(2)) - diag({0.5, 2.0})) < 1e-14);
  Mat a = random_complex(8, 8, rng) + 4.0 * identity(8);
  Mat rhs = random_complex(8, 2, rng);
  CHECK(norm(a * solve(a, rhs) - rhs) < 1e-12);
}

TEST_CASE("solve: singular system is refused") {
  CHECK_THROWS_AS(solve(diag({1.0, 0.0}), identity(2)), Error);
}

TEST_CASE("eig: diagonal, Jordan block, hyperbolic O(1,1) matrix") {
  CHECK(same_multiset(to_vector(eigenvalues(diag({1.0, -1.0}))), {1.0, -1.0}, 1e-14));
  Mat jordan = make_matrix(2, 2, {1.0, 1.0, 0.0, 1.0});
  CHECK(same_multiset(to_vector(eigenvalues(jordan)), {1.0, 1.0}, 1e-7));
  CHECK(same_multiset(to_vector(eigenvalues(finex(1.0))), {1.0, -1.0}, 1e-12));
  EigenDecomposition d = eig(finex(1.0));
  CHECK(d.residual < 1e-12);
}

TEST_CASE("herm_eig: ascending values, congruence keeps the inertia") {
  auto v = herm_eig(diag({1.0, -1.0})).values;
  CHECK(v(0) == doctest::Approx(-1.0));
  CHECK(v(1) == doctest::Approx(1.0));
  auto w = herm_eig(make_matrix(2, 2, {0.0, 1.0, 1.0, 0.0})).values;
  CHECK(w(0) == doctest::Approx(-1.0));
  CHECK(w(1) == doctest::Approx(1.0));

  Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    Mat a = random_hermitian(6, rng);
    Mat x = random_complex(6, 6, rng) + 3.0 * identity(6);
    Inertia i1 = sylvester_inertia(a, 1e-10);
    Inertia i2 = sylvester_inertia(x.adjoint() * a * x, 1e-10);
    CHECK(i1.plus == i2.plus);
    CHECK(i1.minus == i2.minus);
    CHECK(i1.zero == i2.zero);
  }
}

TEST_CASE("orthonormal_frame: rank one, identity, random rank two") {
  Mat psi = orthonormal_frame(diag({3.0, 0.0}), 1e-8);
  REQUIRE(psi.cols() == 1);
  CHECK(std::abs(psi(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(psi(1, 0)) < 1e-14);
  Mat u = orthonormal_frame(identity(3), 1e-8);
  CHECK(norm(u.adjoint() * u - identity(3)) < 1e-14);
  Rng rng(5);
  Mat a = random_complex(4, 2, rng) * random_complex(2, 4, rng);
  Mat f = orthonormal_frame(a, 1e-8);
  REQUIRE(f.cols() == 2);
  CHECK(norm(f.adjoint() * f - identity(2)) < 1e-12);
  CHECK(norm(f * f.adjoint() * a - a) < 1e-10 * norm(a));
}

TEST_CASE("matrix_exp: zero, i pi, J-unitarity of exp(iH)") {
  CHECK(norm(matrix_exp(Mat::Zero(3, 3)) - identity(3)) < 1e-15);
  CHECK(norm(matrix_exp(I * M_PI * identity(2)) + identity(2)) < 1e-14);
  KreinStructure K = make_standard(2, 3);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Mat t = matrix_exp(I * random_j_hermitian(K, seed));
    CHECK(is_j_unitary(t, K, 1e-8).ok);
  }
}

TEST_CASE("polar_unitary and kernel_frame") {
  Rng rng(2);
  Mat a = random_complex(4, 4, rng);
  Mat u = polar_unitary(a);
  CHECK(norm(u.adjoint() * u - identity(4)) < 1e-12);
  Mat k = kernel_frame(diag({1.0, 0.0, 2.0}), 1e-8);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(k(1, 0)) == doctest::Approx(1.0));
}
