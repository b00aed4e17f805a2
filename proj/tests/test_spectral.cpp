#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace kt;

TEST_CASE("cluster_eigenvalues") {
  Vec a(2);
  a << 1.0, -1.0;
  CHECK(cluster_eigenvalues(a, 0.1).size() == 2);
  Vec b(2);
  b << 1.0, 1.0 + 1e-12;
  auto cb = cluster_eigenvalues(b, 1e-8);
  REQUIRE(cb.size() == 1);
  CHECK(cb[0].size() == 2);
  CHECK(cluster_eigenvalues(eigenvalues(finex(0.0)), 0.5).size() == 2);
}

TEST_CASE("riesz_projection: diagonal, Jordan block, closed-form residue") {
  CHECK(norm(riesz_projection(diag({2.0, 0.5}), std::vector<cplx>{2.0}) - diag({1.0, 0.0})) < 1e-10);
  Mat jordan = make_matrix(2, 2, {1.0, 1.0, 0.0, 1.0});
  CHECK(norm(riesz_projection(jordan, std::vector<cplx>{1.0}) - identity(2)) < 1e-10);
  Mat t = make_matrix(2, 2, {2.0, 1.0, 0.0, 0.5});
  Mat expected = make_matrix(2, 2, {1.0, 2.0 / 3.0, 0.0, 0.0});
  CHECK(norm(riesz_projection(t, std::vector<cplx>{2.0}) - expected) < 1e-10);
}

TEST_CASE("partition: projections are idempotent, commute and sum to one") {
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    Mat t = random_complex(10, 10, rng);
    ClusterPartition p = partition(t);
    Mat total = Mat::Zero(10, 10);
    for (const auto& c : p.clusters) {
      CHECK(norm(c.projection * c.projection - c.projection) <= 1e-8);
      CHECK(norm(c.projection * t - t * c.projection) <= 1e-8 * norm(t));
      CHECK(std::abs(c.projection.trace() - double(c.multiplicity)) <= 1e-6);
      total += c.projection;
    }
    CHECK(norm(total - identity(10)) <= 1e-7);
  }
}

TEST_CASE("spectral_subspaces: Hspecial, circle, 2x2 family") {
  KreinStructure K = make_standard(1, 1);
  Mat h = I * make_matrix(2, 2, {0.0, 1.0, 1.0, 0.0});
  CHECK(restrict_to(spectral_subspaces(h, K, Region::RealAxis), Region::RealAxis, 1e-7).clusters.empty());
  auto up = restrict_to(spectral_subspaces(h, K, Region::UpperHalf), Region::UpperHalf, 1e-7);
  REQUIRE(up.clusters.size() == 1);
  CHECK(std::abs(up.clusters[0].center - I) < 1e-10);
  auto lo = restrict_to(spectral_subspaces(h, K, Region::LowerHalf), Region::LowerHalf, 1e-7);
  REQUIRE(lo.clusters.size() == 1);
  CHECK(std::abs(lo.clusters[0].center + I) < 1e-10);

  Mat t = diag({std::polar(1.0, 0.4), std::polar(1.0, -0.4)});
  auto circ = restrict_to(spectral_subspaces(t, K, Region::UnitCircle), Region::UnitCircle, 1e-7);
  CHECK(norm(total_projection(circ, 2) - identity(2)) < 1e-10);

  Mat fam = make_matrix(2, 2, {2.0, 1.0, -1.0, -2.0});
  auto real = restrict_to(spectral_subspaces(fam, K, Region::RealAxis), Region::RealAxis, 1e-7);
  std::vector<cplx> centres;
  for (const auto& c : real.clusters) centres.push_back(c.center);
  CHECK(same_multiset(centres, {std::sqrt(3.0), -std::sqrt(3.0)}, 1e-10));
}

TEST_CASE("classify: band and ambiguous zone") {
  CHECK(classify(cplx(1.0, 0.0), Region::RealAxis, 1e-7) == Side::In);
  CHECK(classify(cplx(1.0, 1.0), Region::RealAxis, 1e-7) == Side::Out);
  CHECK(classify(cplx(1.0, 5e-7), Region::RealAxis, 1e-7) == Side::Ambiguous);
  CHECK(classify(std::polar(1.0, 2.0), Region::UnitCircle, 1e-7) == Side::In);
  CHECK(classify(cplx(0.0, 2.0), Region::UpperHalf, 1e-7) == Side::In);
}

TEST_CASE("check_projection_symmetry") {
  KreinStructure K = make_standard(1, 1);
  // Real spectrum: every cluster is its own reflection.
  Mat fam = make_matrix(2, 2, {2.0, 1.0, -1.0, -2.0});
  auto rh = check_projection_symmetry(partition(fam), K, OperatorKind::Hermitian);
  CHECK(rh.max_residual < 1e-8);
  // diag(2, 1/2) is not J-unitary on (1,1): 2 still pairs with 1/conj(2) = 1/2, and the
  // reported residual is the true ||diag(1,0) - J diag(0,1) J|| = sqrt 2.
  auto ru = check_projection_symmetry(partition(diag({2.0, 0.5})), K, OperatorKind::Unitary);
  REQUIRE(ru.rows.size() == 2);
  for (const auto& r : ru.rows) CHECK(r.cluster != r.partner);
  CHECK(ru.max_residual == doctest::Approx(std::sqrt(2.0)));
  // A hyperbolic J-unitary with the same pairing satisfies the relation.
  Mat boost = make_matrix(2, 2, {std::cosh(0.7), std::sinh(0.7), std::sinh(0.7), std::cosh(0.7)});
  auto rb = check_projection_symmetry(partition(boost), K, OperatorKind::Unitary);
  REQUIRE(rb.rows.size() == 2);
  for (const auto& r : rb.rows) CHECK(r.cluster != r.partner);
  CHECK(rb.max_residual < 1e-8);
  auto ri = check_projection_symmetry(partition(identity(2)), K, OperatorKind::Unitary);
  REQUIRE(ri.rows.size() == 1);
  CHECK(ri.max_residual < 1e-12);
}

TEST_CASE("fredholm_corrector") {
  KreinStructure K = make_standard(1, 1);
  CHECK(norm(fredholm_corrector(Mat::Zero(2, 2), K, 0.0) - K.J) < 1e-12);
  CHECK(norm(fredholm_corrector(K.J, K, 0.5)) == 0.0);
  Mat f = fredholm_corrector(K.J, K, 1.0);
  CHECK(norm(f - diag({1.0, 0.0})) < 1e-12);
  CHECK(sigma_min(K.J - identity(2) + f) > 0.5);
}
