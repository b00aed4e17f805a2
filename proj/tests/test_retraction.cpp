#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kreinlab/factorize.hpp"
#include "kreinlab/retraction.hpp"
#include "test_util.hpp"

using namespace kt;

namespace {

Mat h_special() { return I * make_matrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

bool spectrum_in(const Mat& a, std::initializer_list<cplx> allowed, double tol) {
  Vec ev = eigenvalues(a);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double d = 1e9;
    for (cplx z : allowed) d = std::min(d, std::abs(ev(i) - z));
    if (d > tol) return false;
  }
  return true;
}

Mat odd_unit(int m) {
  Mat s = Mat::Zero(2 * m, 2 * m);
  s.topRightCorner(m, m) = -identity(m);
  s.bottomLeftCorner(m, m) = identity(m);
  return s;
}

}  // namespace

TEST_CASE("spectral_flatten") {
  KreinStructure K = make_standard(1, 1);
  OperatorPath p = spectral_flatten(h_special(), K, nullptr);
  for (double t : {0.0, 0.3, 1.0}) CHECK(norm(p.at(t) - h_special()) < 1e-10);
  CHECK(norm(spectral_flatten(K.J, K, nullptr).at(1.0)) < 1e-10);
  KreinStructure K8 = make_standard(4, 4);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Mat h = random_j_hermitian(K8, seed);
    OperatorPath f = spectral_flatten(h, K8, nullptr);
    CHECK(norm(f.at(0.0) - h) < 1e-12);
    CHECK(spectrum_in(f.at(1.0), {I, -I, 0.0}, 1e-7));
    CHECK(path_membership_residual(f, 9) <= 1e-8);
  }
}

TEST_CASE("block_decompose") {
  KreinStructure K = make_standard(2, 1);
  Mat h = random_j_hermitian(K, 3);
  BlockDecomposition whole = block_decompose(h, K, identity(3));
  CHECK(whole.H_phi.size() == 0);
  CHECK(whole.residual < 1e-8);

  KreinStructure K4 = make_standard(2, 2);
  Mat d = diag({1.0, I, 2.0, -I});
  Mat e = Mat::Zero(4, 2);
  e(0, 0) = 1.0;
  e(2, 1) = 1.0;
  BlockDecomposition b = block_decompose(d, K4, e);
  CHECK(b.residual < 1e-10);
  CHECK(b.H_psi.rows() == 2);
  CHECK(b.H_phi.rows() == 2);
  CHECK(same_multiset(to_vector(eigenvalues(b.H_psi)), {1.0, 2.0}, 1e-10));
  CHECK(same_multiset(to_vector(eigenvalues(b.H_phi)), {I, -I}, 1e-10));
  CHECK(norm(b.M_inv * d * b.M - block_diag(b.H_psi, b.H_phi)) < 1e-10);

  // A J-neutral line is degenerate.
  Mat neutral = Mat::Zero(2, 1);
  neutral(0, 0) = neutral(1, 0) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(block_decompose(identity(2), make_standard(1, 1), neutral), Error);
  // A non-invariant subspace is refused.
  Mat e1 = Mat::Zero(2, 1);
  e1(0, 0) = 1.0;
  CHECK_THROWS_AS(block_decompose(h_special(), make_standard(1, 1), e1), Error);
}

TEST_CASE("lift_kernel") {
  KreinStructure K = make_standard(1, 1);
  LiftResult l = lift_kernel(Mat::Zero(2, 2), K, nullptr);
  CHECK(norm(l.V - I * make_matrix(2, 2, {0.0, 1.0, 1.0, 0.0})) < 1e-12);
  CHECK(norm(l.endpoint - h_special()) < 1e-12);
  CHECK(l.kernel_dim == 0);
  RealStructure R = make_real_structure({1, -1}, 1, 1);
  LiftResult lr = lift_kernel(Mat::Zero(2, 2), R.K, &R);
  CHECK(lr.kernel_dim == 0);
  CHECK(spectrum_in(lr.endpoint, {I, -I}, 1e-10));
  CHECK(is_member(lr.endpoint, R, OperatorKind::Hermitian, 1e-10).ok);
  CHECK_THROWS_AS(lift_kernel(K.J, K, nullptr), Error);
}

TEST_CASE("lagrangian_frames") {
  KreinStructure K = make_standard(1, 1);
  LagrangianFrames f = lagrangian_frames(h_special(), K);
  CHECK(std::abs(f.u_plus(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(f.u_minus(0, 0) + 1.0) < 1e-12);
  CHECK(f.isotropy_residual < 1e-12);
  CHECK(f.reproduction_residual < 1e-12);
  CHECK(f.certificate > 1.0);
  KreinStructure K3 = make_standard(3, 3);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Mat h = spectral_flatten(random_j_hermitian(K3, seed), K3, nullptr).at(1.0);
    if (!spectrum_in(h, {I, -I}, 1e-7)) continue;
    LagrangianFrames g = lagrangian_frames(h, K3);
    CHECK(norm(g.u_plus.adjoint() * g.u_plus - identity(3)) < 1e-8);
    CHECK(norm(g.u_minus.adjoint() * g.u_minus - identity(3)) < 1e-8);
    CHECK(norm(I * (g.P_plus - g.P_minus) - h) < 1e-7);
  }
  CHECK_THROWS_AS(lagrangian_frames(K.J, K), Error);
}

TEST_CASE("straighten") {
  Mat one = identity(1);
  StraightenResult c = straighten(one, -one, StraightenSymmetry::None);
  for (double t : {0.0, 0.5, 1.0}) CHECK(norm(c.path.at(t) - h_special()) < 1e-12);
  Rng rng(17);
  Mat up = random_unitary(3, rng), um = random_unitary(3, rng);
  StraightenResult s = straighten(up, um, StraightenSymmetry::None);
  CHECK(s.min_certificate > 0.0);
  CHECK(norm(s.path.at(0.0) - I * (projection_from_frames(up, um) - projection_from_frames(um, up))) < 1e-8);
  CHECK(norm(s.path.at(1.0) - I * (projection_from_frames(up, -up) - projection_from_frames(-up, up))) < 1e-8);
  CHECK(path_membership_residual(s.path, 9) <= 1e-8);
}

TEST_CASE("factorize_unitary") {
  Factorization f1 = factorize_unitary(identity(2), UnitaryClass::Symmetric, {}, false);
  CHECK(norm(f1.w.transpose() * f1.w - identity(2)) < 1e-12);
  CHECK_THROWS_AS(factorize_unitary(identity(2), UnitaryClass::Symmetric), Error);
  Mat d = diag({std::polar(1.0, 0.4), std::polar(1.0, 2.0), std::polar(1.0, -1.0)});
  Factorization fd = factorize_unitary(d, UnitaryClass::Symmetric);
  CHECK(fd.residual < 1e-12);
  CHECK(norm(fd.w.transpose() * fd.w - d) < 1e-12);
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    Mat u = random_unitary(6, rng);
    Mat v = u.transpose() * u;
    Factorization f = factorize_unitary(v, UnitaryClass::Symmetric, {}, false);
    CHECK(norm(f.w.transpose() * f.w - v) < 1e-8);
    Mat s = odd_unit(3);
    Mat vo = s.adjoint() * u.transpose() * s * u;
    CHECK(class_residual(vo, UnitaryClass::OddSymmetric) < 1e-10);
    Factorization fo = factorize_unitary(vo, UnitaryClass::OddSymmetric, {}, false);
    CHECK(norm(s.adjoint() * fo.w.transpose() * s * fo.w - vo) < 1e-8);
  }
  CHECK_THROWS_AS(factorize_unitary(odd_unit(1), UnitaryClass::Symmetric), Error);
}

TEST_CASE("retract_to_model: H = J and the model operator") {
  KreinStructure K = make_standard(1, 1);
  RetractionTrace t = retract_to_model(K.J, K, nullptr);
  CHECK(norm(t.terminal - h_special()) < 1e-8);
  CHECK(t.sig_initial == t.sig_terminal);
  CHECK(t.max_chain_gap < 1e-8);
  CHECK(t.max_membership < 1e-8);
  RetractionTrace m = retract_to_model(h_special(), K, nullptr);
  CHECK(norm(m.terminal - h_special()) < 1e-8);
  CHECK(m.A.rows() == 1);
  CHECK(std::abs(m.A(0, 0) - 1.0) < 1e-8);
}

TEST_CASE("retract_to_model: random operators of each kind") {
  KreinStructure K = make_standard(3, 3);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RetractionTrace t = retract_to_model(random_j_hermitian(K, seed), K, nullptr);
    CHECK(t.sig_initial == t.sig_terminal);
    CHECK(t.max_chain_gap < 1e-6);
    CHECK(spectrum_in(t.terminal, {I, -I}, 1e-7));
    CHECK(norm(t.A.adjoint() * t.A - identity(t.A.rows())) < 1e-7);
  }
  for (RealKind k : std::vector<RealKind>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
    RealStructure R = make_real_structure(k, 2, 2);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(seed);
      RetractionTrace t = retract_to_model(random_member(R, OperatorKind::Hermitian, seed), R.K, &R);
      CHECK(t.max_membership < 1e-6);
      CHECK(t.max_chain_gap < 1e-6);
      CHECK(is_member(t.terminal, R, OperatorKind::Hermitian, 1e-6).ok);
      CHECK(terminal_class(t.A, &R).second < 1e-6);
    }
  }
}

TEST_CASE("retract_to_model: unequal inertia is refused") {
  KreinStructure K = make_standard(2, 1);
  try {
    retract_to_model(K.J, K, nullptr);
    FAIL("expected IncompatibleDimensions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleDimensions);
  }
}
