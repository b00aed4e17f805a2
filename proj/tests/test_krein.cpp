#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace kt;

TEST_CASE("make_standard") {
  CHECK(norm(make_standard(1, 1).J - diag({1.0, -1.0})) == 0.0);
  CHECK(norm(make_standard(2, 0).J - identity(2)) == 0.0);
  CHECK(norm(make_standard(0, 3).J + identity(3)) == 0.0);
  CHECK_THROWS_AS(make_standard(0, 0), Error);
}

TEST_CASE("reduce_general_form: diagonal form") {
  GeneralFormReduction r = reduce_general_form(diag({4.0, -9.0}));
  CHECK(norm(r.K.J - diag({1.0, -1.0})) < 1e-14);
  CHECK(norm(r.W - diag({2.0, 3.0})) < 1e-12);
  CHECK(norm(r.W.adjoint() * r.J_general * r.W - diag({4.0, -9.0})) < 1e-12);
}

TEST_CASE("reduce_general_form: J is already standard") {
  GeneralFormReduction r = reduce_general_form(make_standard(2, 1).J);
  CHECK(norm(r.W - identity(3)) < 1e-14);
  CHECK(norm(r.to_standard(identity(3)) - identity(3)) < 1e-14);
}

TEST_CASE("reduce_general_form: j-unitaries become J-unitaries") {
  Rng rng(17);
  for (int k = 0; k < 5; ++k) {
    // j = X* J0 X with invertible X, U = X^{-1} T X for a J0-unitary T.
    KreinStructure K0 = make_standard(2, 2);
    Mat x = random_complex(4, 4, rng) + 3.0 * identity(4);
    Mat j = x.adjoint() * K0.J * x;
    j = 0.5 * (j + j.adjoint());
    Mat u = x.inverse() * random_j_unitary(K0, rng()) * x;
    CHECK(norm(u.adjoint() * j * u - j) < 1e-8 * norm(j));
    GeneralFormReduction r = reduce_general_form(j);
    CHECK(r.K.n_plus == 2);
    CHECK(r.K.n_minus == 2);
    CHECK(is_j_unitary(r.to_standard(u), r.K, 1e-8).ok);
  }
}

TEST_CASE("reduce_general_form: singular or non-hermitian forms are refused") {
  CHECK_THROWS_AS(reduce_general_form(diag({1.0, 0.0})), Error);
  CHECK_THROWS_AS(reduce_general_form(make_matrix(2, 2, {1.0, 1.0, 0.0, -1.0})), Error);
}

TEST_CASE("is_j_unitary") {
  KreinStructure K = make_standard(1, 1);
  CHECK(is_j_unitary(K.J, K, 1e-12).ok);
  for (int s : {-1, 1})
    for (int sp : {-1, 1})
      for (double t : {0.0, 0.3, 1.0, 2.0}) CHECK(is_j_unitary(finex(t, s, sp), K, 1e-10).ok);
  Membership m = is_j_unitary(diag({2.0, 1.0}), K, 1e-8);
  CHECK_FALSE(m.ok);
  CHECK(m.residual == doctest::Approx(3.0));
}

TEST_CASE("is_j_hermitian") {
  KreinStructure K = make_standard(1, 1);
  CHECK(is_j_hermitian(K.J, K, 1e-12).ok);
  CHECK(is_j_hermitian(I * make_matrix(2, 2, {0.0, 1.0, 1.0, 0.0}), K, 1e-12).ok);
  CHECK_FALSE(is_j_hermitian(diag({I, 0.0}), K, 1e-8).ok);
}

TEST_CASE("random_j_hermitian and random_j_unitary") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    KreinStructure K = make_standard(1 + seed % 3, seed % 4);
    Mat h = random_j_hermitian(K, seed);
    CHECK(is_j_hermitian(h, K, 1e-12).ok);
    CHECK(is_j_unitary(random_j_unitary(K, seed), K, 1e-8).ok);
  }
  Mat h = random_j_hermitian(make_standard(1, 0), 4);
  CHECK(std::abs(h(0, 0).imag()) < 1e-15);
  KreinStructure K = make_standard(1, 1);
  CHECK(norm(matrix_exp(I * Mat::Zero(2, 2)) - identity(2)) == 0.0);
  Mat t = matrix_exp(I * K.J);
  CHECK(norm(t - diag({std::polar(1.0, 1.0), std::polar(1.0, -1.0)})) < 1e-14);
  CHECK(is_j_unitary(t, K, 1e-12).ok);
}

TEST_CASE("random draws are reproducible") {
  KreinStructure K = make_standard(2, 1);
  CHECK(norm(random_j_hermitian(K, 9) - random_j_hermitian(K, 9)) == 0.0);
  CHECK(norm(random_j_hermitian(K, 9) - random_j_hermitian(K, 10)) > 0.0);
}
