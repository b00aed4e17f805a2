#include "kreinlab/random.hpp"

#include <cmath>

namespace kreinlab {

Mat random_complex(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      double re = g(rng);
      double im = g(rng);
      m(i, j) = cplx(s * re, s * im);
    }
  return m;
}

Mat random_real(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

Mat random_hermitian(int n, Rng& rng) {
  Mat g = random_complex(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

namespace {

Mat q_factor(const Mat& g) {
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR();
  // Fix column phases so the distribution does not depend on Householder conventions.
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

Mat random_unitary(int n, Rng& rng) { return q_factor(random_complex(n, n, rng)); }

Mat random_orthogonal(int n, Rng& rng) {
  Mat q = q_factor(random_real(n, n, rng));
  return q.real().cast<cplx>();
}

}  // namespace kreinlab
