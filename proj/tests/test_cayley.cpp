#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kreinlab/cayley.hpp"
#include "test_util.hpp"

using namespace kt;

TEST_CASE("cayley_scalar: z -> 0, 0 -> zeta z / conj z, round trip") {
  CayleyParams p;
  CHECK(std::abs(cayley_scalar(p, p.z)) < 1e-15);
  CHECK(std::abs(cayley_scalar(p, cplx(0.0)) - cplx(-1.0)) < 1e-15);
  CayleyParams q{cplx(0.3, 1.7), std::polar(1.0, 0.9)};
  CHECK(std::abs(cayley_scalar(q, cplx(0.0)) - q.zeta * q.z / std::conj(q.z)) < 1e-14);
  Rng rng(6);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    cplx l(g(rng), g(rng));
    CHECK(std::abs(cayley_inv_scalar(q, cayley_scalar(q, l)) - l) < 1e-10 * (1.0 + std::abs(l)));
  }
  CHECK(cayley_scalar(p, SpherePoint::at(std::conj(p.z))).infinite);
  CHECK(std::abs(cayley_scalar(p, SpherePoint::infinity()).value - p.zeta) < 1e-15);
}

TEST_CASE("cayley_op: zero, J, membership") {
  KreinStructure K = make_standard(1, 1);
  CayleyParams p;
  CHECK(norm(cayley_op(Mat::Zero(2, 2), K, p) + identity(2)) < 1e-14);
  CHECK(norm(cayley_op(K.J, K, p) - diag({-I, I})) < 1e-14);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    KreinStructure K2 = make_standard(3, 2);
    CHECK(is_j_unitary(cayley_op(random_j_hermitian(K2, seed), K2, p), K2, 1e-8).ok);
  }
}

TEST_CASE("cayley_inv_op: inverse examples and round trip") {
  KreinStructure K = make_standard(1, 1);
  CayleyParams p;
  CHECK(norm(cayley_inv_op(-identity(2), K, p)) < 1e-14);
  CHECK(norm(cayley_inv_op(diag({-I, I}), K, p) - K.J) < 1e-14);
  KreinStructure K2 = make_standard(2, 3);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Mat t = random_j_unitary(K2, seed);
    CayleyParams q;
    q.zeta = auto_zeta(t);
    Mat back = cayley_op(cayley_inv_op(t, K2, q), K2, q);
    CHECK(norm(back - t) <= 1e-7);
  }
}

TEST_CASE("cayley parameters are validated") {
  KreinStructure K = make_standard(1, 1);
  CHECK_THROWS_AS(cayley_op(K.J, K, CayleyParams{cplx(1.0, 0.0), 1.0}), Error);
  CHECK_THROWS_AS(cayley_op(K.J, K, CayleyParams{I, 2.0}), Error);
}

TEST_CASE("transport_report") {
  KreinStructure K = make_standard(2, 1);
  TransportReport r = transport_report(K.J, K, CayleyParams{});
  CHECK(r.sig_equal);
  CHECK(r.unitary.global_sig == 1);
  auto [h, K2] = build_index_example(Mat::Zero(1, 2));
  TransportReport s = transport_report(h, K2, CayleyParams{});
  CHECK(s.sig_equal);
  CHECK(s.inertia_equal);
  CHECK(s.hermitian.global_sig == 1);
  Rng rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + k % 10;
    const int np = static_cast<int>(rng() % (d + 1));
    KreinStructure Kk = make_standard(np, d - np);
    CayleyParams p{cplx(2.0 * u(rng) - 1.0, 0.5 + u(rng)), std::polar(1.0, 2.0 * M_PI * u(rng))};
    TransportReport t = transport_report(random_j_hermitian(Kk, rng()), Kk, p);
    CHECK(t.sig_equal);
    CHECK(t.inertia_equal);
  }
}
