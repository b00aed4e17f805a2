#include "kreinlab/retraction.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

const cplx I(0.0, 1.0);

Mat select_cols(const Mat& a, const std::vector<int>& idx) {
  Mat out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
  return out;
}

Mat hcat(const Mat& a, const Mat& b) {
  Mat out(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  if (a.cols()) out.leftCols(a.cols()) = a;
  if (b.cols()) out.rightCols(b.cols()) = b;
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Mat symplectic(int k) {
  Mat s = Mat::Zero(2 * k, 2 * k);
  s.topRightCorner(k, k) = -Mat::Identity(k, k);
  s.bottomLeftCorner(k, k) = Mat::Identity(k, k);
  return s;
}

// Finishes a frame whose j is diagonal (entries d) or i[[0,-D],[D,0]].
PreparedFrame finish(const Mat& psi, const KreinStructure& K, int plus, int minus) {
  PreparedFrame f;
  f.psi = psi;
  f.j = psi.adjoint() * K.J * psi;
  f.j = 0.5 * (f.j + f.j.adjoint());
  f.n = hermitian_function(f.j, [](double x) { return 1.0 / std::sqrt(std::abs(x)); });
  f.n_inv = hermitian_function(f.j, [](double x) { return std::sqrt(std::abs(x)); });
  f.J_psi = hermitian_function(f.j, [](double x) { return x > 0 ? 1.0 : -1.0; });
  f.plus = plus;
  f.minus = minus;
  return f;
}

void check_nondegenerate(const Mat& j, const ToleranceConfig& tol) {
  if (j.rows() == 0) return;
  HermitianEigen he = herm_eig(0.5 * (j + j.adjoint()), tol);
  for (Eigen::Index i = 0; i < he.values.size(); ++i)
    if (std::abs(he.values(i)) <= 1e-8)
      fail(ErrorCode::DegenerateSubspace, "subspace is J-degenerate");
}

// Orthonormal eigenvectors of a hermitian j split by sign.
void split_eigen(const Mat& j, const ToleranceConfig& tol, Mat& pos, std::vector<double>& dpos, Mat& neg,
                 std::vector<double>& dneg) {
  HermitianEigen he = herm_eig(0.5 * (j + j.adjoint()), tol);
  std::vector<int> ip, in;
  for (Eigen::Index i = he.values.size() - 1; i >= 0; --i)
    if (he.values(i) > 0) {
      ip.push_back(static_cast<int>(i));
      dpos.push_back(he.values(i));
    }
  for (Eigen::Index i = 0; i < he.values.size(); ++i)
    if (he.values(i) < 0) {
      in.push_back(static_cast<int>(i));
      dneg.push_back(he.values(i));
    }
  pos = select_cols(he.vectors, ip);
  neg = select_cols(he.vectors, in);
}

// Greedy quaternionic basis [X, s conj X] of an eigenspace invariant under x -> s conj x.
Mat quaternionic_pairs(const Mat& e, const Mat& s) {
  Mat rest = e;
  Mat xs(e.rows(), 0);
  while (rest.cols() > 0) {
    Vec x = rest.col(0).normalized();
    Vec y = s * x.conjugate();
    Mat xy = hcat(x, y);
    Mat nx(xs.rows(), xs.cols() + 1);
    if (xs.cols()) nx.leftCols(xs.cols()) = xs;
    nx.col(xs.cols()) = x;
    xs = nx;
    Mat comp = rest - xy * (xy.adjoint() * rest);
    rest = rest.cols() > 2 ? orthonormal_frame(comp, 1e-6) : Mat(e.rows(), 0);
    if (rest.cols() % 2 != 0) fail(ErrorCode::FramePreparationFailed, "eigenspace is not quaternionic");
  }
  return xs;
}

}  // namespace

PreparedFrame prepare_frame(const Mat& psi0, const KreinStructure& K, const RealStructure* R,
                            const ToleranceConfig& tol) {
  const int k = static_cast<int>(psi0.cols());
  if (k == 0) return finish(psi0, K, 0, 0);
  Mat j0 = psi0.adjoint() * K.J * psi0;
  check_nondegenerate(j0, tol);
  if (!R) {
    Mat pos, neg;
    std::vector<double> dp, dn;
    split_eigen(j0, tol, pos, dp, neg, dn);
    return finish(psi0 * hcat(pos, neg), K, static_cast<int>(dp.size()), static_cast<int>(dn.size()));
  }
  const RealKind kind = R->kind;
  Mat psi = real_frame(psi0, R->S, kind.eta, tol);
  Mat j = psi.adjoint() * K.J * psi;
  j = 0.5 * (j + j.adjoint());
  if (kind == RealKind{1, 1}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j.real());
    std::vector<int> ip, in;
    for (int i = k - 1; i >= 0; --i)
      if (es.eigenvalues()(i) > 0) ip.push_back(i);
    for (int i = 0; i < k; ++i)
      if (es.eigenvalues()(i) < 0) in.push_back(i);
    Mat o = es.eigenvectors().cast<cplx>();
    Mat q = hcat(select_cols(o, ip), select_cols(o, in));
    return finish(psi * q, K, static_cast<int>(ip.size()), static_cast<int>(in.size()));
  }
  if (kind == RealKind{1, -1}) {
    Mat pos, neg;
    std::vector<double> dp, dn;
    split_eigen(j, tol, pos, dp, neg, dn);
    if (dp.size() != dn.size()) fail(ErrorCode::FramePreparationFailed, "j is not of the form i K");
    Mat q = std::sqrt(2.0) * hcat(pos.real().cast<cplx>(), pos.imag().cast<cplx>());
    return finish(psi * q, K, static_cast<int>(dp.size()), static_cast<int>(dn.size()));
  }
  const Mat s = symplectic(k / 2);
  if (kind == RealKind{-1, -1}) {
    Mat pos, neg;
    std::vector<double> dp, dn;
    split_eigen(j, tol, pos, dp, neg, dn);
    if (2 * dp.size() != static_cast<size_t>(k))
      fail(ErrorCode::FramePreparationFailed, "j has unequal inertia for kind (-1,-1)");
    Mat q = hcat(pos, s * pos.conjugate());
    return finish(psi * q, K, static_cast<int>(dp.size()), static_cast<int>(dn.size()));
  }
  // Kind (-1,1): Kramers-degenerate j, paired eigenvectors per eigenvalue.
  HermitianEigen he = herm_eig(j, tol);
  std::vector<std::vector<int>> groups;
  for (int i = k - 1; i >= 0; --i) {
    if (!groups.empty() && std::abs(he.values(groups.back().back()) - he.values(i)) <= 1e-6 * (1.0 + std::abs(he.values(i))))
      groups.back().push_back(i);
    else
      groups.push_back({i});
  }
  Mat xpos(k, 0), xneg(k, 0);
  int np = 0, nm = 0;
  for (const auto& g : groups) {
    if (g.size() % 2 != 0) fail(ErrorCode::FramePreparationFailed, "eigenvalue of j without its Kramers partner");
    Mat x = quaternionic_pairs(select_cols(he.vectors, g), s);
    if (he.values(g[0]) > 0) {
      xpos = hcat(xpos, x);
      np += static_cast<int>(x.cols());
    } else {
      xneg = hcat(xneg, x);
      nm += static_cast<int>(x.cols());
    }
  }
  Mat x = hcat(xpos, xneg);
  Mat q = hcat(x, s * x.conjugate());
  PreparedFrame f = finish(psi * q, K, 2 * np, 2 * nm);
  if (norm(q.adjoint() * q - Mat::Identity(k, k)) > 1e-8)
    fail(ErrorCode::FramePreparationFailed, "quaternionic basis is not orthonormal");
  return f;
}

OperatorPath spectral_flatten(const Mat& h, const KreinStructure& K, const RealStructure* R,
                              const ToleranceConfig& tol) {
  if (h.rows() != K.dim()) fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ");
  ClusterPartition part = partition(h, tol);
  const int n = K.dim();
  Mat pp = total_projection(restrict_to(part, Region::UpperHalf, tol.eps_region), n);
  Mat pm = total_projection(restrict_to(part, Region::LowerHalf, tol.eps_region), n);
  Mat flat = I * (pp - pm);
  OperatorPath p;
  p.name = "flatten";
  p.K = K;
  if (R) p.R = *R;
  p.kind = OperatorKind::Hermitian;
  p.sampler = [h, flat](double t) -> Mat { return (1.0 - t) * h + t * flat; };
  return p;
}

BlockDecomposition block_decompose(const Mat& h, const KreinStructure& K, const Mat& e_frame,
                                   const RealStructure* R, const ToleranceConfig& tol) {
  const int n = K.dim();
  Mat psi0 = orthonormal_frame(e_frame, tol.rank);
  const double scale = std::max(1.0, norm(h));
  if (norm(h * psi0 - psi0 * (psi0.adjoint() * h * psi0)) > 1e-8 * scale)
    fail(ErrorCode::NotInvariant, "subspace is not invariant");
  check_nondegenerate(psi0.adjoint() * K.J * psi0, tol);
  Mat perp = psi0.cols() == n ? Mat(n, 0) : kernel_frame(psi0.adjoint(), tol.rank);
  Mat phi0 = K.J * perp;
  BlockDecomposition b;
  b.psi = prepare_frame(psi0, K, R, tol);
  b.phi = prepare_frame(phi0, K, R, tol);
  b.M = hcat(b.psi.psi * b.psi.n, b.phi.psi * b.phi.n);
  Mat jd = block_diag(b.psi.J_psi, b.phi.J_psi);
  b.M_inv = jd * b.M.adjoint() * K.J;
  Mat red = b.M_inv * h * b.M;
  const int k = static_cast<int>(psi0.cols());
  b.H_psi = red.topLeftCorner(k, k);
  b.H_phi = red.bottomRightCorner(n - k, n - k);
  b.J_psi = b.psi.J_psi;
  b.J_phi = b.phi.J_psi;
  double off = k == 0 || k == n ? 0.0 : std::max(norm(red.topRightCorner(k, n - k)), norm(red.bottomLeftCorner(n - k, k)));
  double cong = norm(b.M.adjoint() * K.J * b.M - jd);
  double inv = norm(b.M_inv * b.M - Mat::Identity(n, n));
  double sq = std::max(norm(b.J_psi * b.J_psi - Mat::Identity(k, k)),
                       norm(b.J_phi * b.J_phi - Mat::Identity(n - k, n - k)));
  b.residual = std::max({off / scale, cong, inv, sq});
  if (b.residual > 1e-8) fail(ErrorCode::NotInvariant, "block reduction residual " + std::to_string(b.residual));
  return b;
}

namespace {

// V = [[0,0,i],[0,0,0],[i,0,0]] with blocks (m, n0, m).
Mat pairing_v(int m, int n0) {
  Mat v = Mat::Zero(2 * m + n0, 2 * m + n0);
  for (int a = 0; a < m; ++a) {
    v(a, m + n0 + a) = I;
    v(m + n0 + a, a) = I;
  }
  return v;
}

// Majority sign block in the middle: reorders columns of a frame with `plus` positives first.
std::vector<int> pairing_order(int plus, int minus) {
  std::vector<int> idx;
  if (plus >= minus) {
    for (int a = 0; a < plus + minus; ++a) idx.push_back(a);
  } else {
    for (int a = 0; a < minus; ++a) idx.push_back(plus + a);
    for (int a = 0; a < plus; ++a) idx.push_back(a);
  }
  return idx;
}

Mat frame_of_kernel(const Mat& h, const ToleranceConfig& tol) {
  Vec ev = eigenvalues(h);
  std::vector<cplx> zero{cplx(0, 0)};
  int m = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) <= 1e-6) ++m;
  if (m == 0) return Mat(h.rows(), 0);
  Mat p0 = riesz_projection(h, zero, tol);
  return range_frame(p0, m);
}

}  // namespace

LiftResult lift_kernel(const Mat& h_flat, const KreinStructure& K, const RealStructure* R,
                       const ToleranceConfig& tol) {
  const int n = K.dim();
  Vec ev = eigenvalues(h_flat);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double d = std::min({std::abs(ev(i)), std::abs(ev(i) - I), std::abs(ev(i) + I)});
    if (d > 1e-6) fail(ErrorCode::InvalidInput, "operator is not flat");
  }
  LiftResult out;
  Mat psi0 = frame_of_kernel(h_flat, tol);
  Mat w = Mat::Zero(n, n);
  if (psi0.cols() > 0) {
    PreparedFrame f = prepare_frame(psi0, K, R, tol);
    const int k = static_cast<int>(f.psi.cols());
    const RealKind kind = R ? R->kind : RealKind{1, 1};
    Mat v;
    if (!R || kind == RealKind{1, 1}) {
      std::vector<int> order = pairing_order(f.plus, f.minus);
      f = finish(select_cols(f.psi, order), K, f.plus, f.minus);
      v = pairing_v(std::min(f.plus, f.minus), std::abs(f.plus - f.minus));
    } else if (kind == RealKind{1, -1}) {
      const int m = k / 2;
      v = block_diag(I * Mat::Identity(m, m), -I * Mat::Identity(m, m));
    } else if (kind == RealKind{-1, 1}) {
      const int m = k / 2;
      const int p = f.plus / 2, q = f.minus / 2;
      std::vector<int> half = pairing_order(p, q);
      std::vector<int> order;
      for (int a : half) order.push_back(a);
      for (int a : half) order.push_back(m + a);
      f = finish(select_cols(f.psi, order), K, f.plus, f.minus);
      Mat vh = pairing_v(std::min(p, q), std::abs(p - q));
      v = block_diag(vh, vh);
    } else {
      // Kind (-1,-1): v real antisymmetric with v^2 = -1 off a one-dimensional kernel when m is odd.
      const int m = k / 2;
      Mat vh = Mat::Zero(m, m);
      const int pairs = m / 2;
      const int mid = m % 2;
      for (int a = 0; a < pairs; ++a) {
        vh(a, pairs + mid + a) = -1.0;
        vh(pairs + mid + a, a) = 1.0;
      }
      v = Mat::Zero(k, k);
      v.topRightCorner(m, m) = vh;
      v.bottomLeftCorner(m, m) = vh;
    }
    out.V = v;
    Mat p0 = f.psi * solve(f.j, f.psi.adjoint() * K.J, tol);
    w = f.psi * f.n * v * f.n_inv * f.psi.adjoint() * p0;
  }
  Mat h0 = h_flat;
  out.path.name = "lift";
  out.path.K = K;
  if (R) out.path.R = *R;
  out.path.kind = OperatorKind::Hermitian;
  out.path.sampler = [h0, w](double t) -> Mat { return h0 + t * w; };
  out.endpoint = h0 + w;
  out.kernel_frame = frame_of_kernel(out.endpoint, tol);
  out.kernel_dim = static_cast<int>(out.kernel_frame.cols());
  if (out.kernel_dim > 0) out.kernel_inertia = frame_inertia(out.kernel_frame, K, tol.zero_tol, tol);
  const bool definite = out.kernel_inertia.nu_plus == 0 || out.kernel_inertia.nu_minus == 0;
  const bool quaternion_pair = R && R->kind == RealKind{-1, -1} && out.kernel_inertia == InertiaPair{1, 1};
  if (!definite && !quaternion_pair)
    fail(ErrorCode::FramePreparationFailed, "lifted kernel is indefinite");
  return out;
}

Mat projection_from_frames(const Mat& u_this, const Mat& u_other) {
  const int n = static_cast<int>(u_this.rows());
  Mat phi_this(2 * n, n), phi_other(2 * n, n);
  phi_this << u_this, Mat::Identity(n, n);
  phi_other << u_other, Mat::Identity(n, n);
  phi_this /= std::sqrt(2.0);
  phi_other /= std::sqrt(2.0);
  Mat J = Mat::Identity(2 * n, 2 * n);
  J.bottomRightCorner(n, n) *= -1.0;
  Mat g = phi_other.adjoint() * J * phi_this;
  return phi_this * g.partialPivLu().solve(phi_other.adjoint() * J);
}

LagrangianFrames lagrangian_frames(const Mat& h, const KreinStructure& K, const ToleranceConfig& tol) {
  if (K.n_plus != K.n_minus) fail(ErrorCode::NotLagrangian, "needs n_plus == n_minus");
  const int n = K.n_plus;
  Vec ev = eigenvalues(h);
  int np = 0, nm = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i) - I) <= 1e-6) ++np;
    else if (std::abs(ev(i) + I) <= 1e-6) ++nm;
    else fail(ErrorCode::NotLagrangian, "spectrum is not contained in {i, -i}");
  }
  if (np != n || nm != n) fail(ErrorCode::NotLagrangian, "spectral subspaces are not maximal");
  LagrangianFrames out;
  out.P_plus = riesz_projection(h, std::vector<cplx>{I}, tol);
  out.P_minus = riesz_projection(h, std::vector<cplx>{-I}, tol);
  Mat us[2];
  const Mat* ps[2] = {&out.P_plus, &out.P_minus};
  for (int s = 0; s < 2; ++s) {
    Mat f = range_frame(*ps[s], n);
    out.isotropy_residual = std::max(out.isotropy_residual, norm(f.adjoint() * K.J * f));
    Mat a = f.topRows(n), b = f.bottomRows(n);
    us[s] = polar_unitary(a) * polar_unitary(b).adjoint();
    Mat phi(2 * n, n);
    phi << us[s], Mat::Identity(n, n);
    phi /= std::sqrt(2.0);
    out.embedding_residual = std::max(out.embedding_residual, norm(*ps[s] * phi - phi));
  }
  if (out.isotropy_residual > 1e-8) fail(ErrorCode::NotLagrangian, "spectral subspace is not J-isotropic");
  if (out.embedding_residual > 1e-7) fail(ErrorCode::NotLagrangian, "frame does not span the spectral subspace");
  out.u_plus = us[0];
  out.u_minus = us[1];
  out.certificate = sigma_min(out.u_minus.adjoint() * out.u_plus - Mat::Identity(n, n));
  if (out.certificate <= tol.gap) fail(ErrorCode::NotFredholmPair, "u_-* u_+ - 1 is not invertible");
  out.reproduction_residual = std::max(norm(projection_from_frames(out.u_plus, out.u_minus) - out.P_plus),
                                       norm(projection_from_frames(out.u_minus, out.u_plus) - out.P_minus));
  if (out.reproduction_residual > 1e-7) fail(ErrorCode::NotLagrangian, "projections not reproduced by the frames");
  return out;
}

const char* symmetry_name(StraightenSymmetry s) {
  switch (s) {
    case StraightenSymmetry::None: return "none";
    case StraightenSymmetry::Symmetric: return "symmetric";
    case StraightenSymmetry::OddSymmetric: return "odd-symmetric";
    case StraightenSymmetry::RealAvoiding1: return "real-avoiding-1";
    case StraightenSymmetry::QuaternionicAvoiding1: return "quaternionic-avoiding-1";
  }
  return "?";
}

StraightenSymmetry symmetry_for(const RealStructure* R) {
  if (!R) return StraightenSymmetry::None;
  const RealKind k = R->kind;
  if (k == RealKind{1, 1}) return StraightenSymmetry::RealAvoiding1;
  if (k == RealKind{-1, 1}) return StraightenSymmetry::QuaternionicAvoiding1;
  if (k == RealKind{1, -1}) return StraightenSymmetry::Symmetric;
  return StraightenSymmetry::OddSymmetric;
}

StraightenResult straighten(const Mat& u_plus, const Mat& u_minus, StraightenSymmetry symmetry,
                            const ToleranceConfig& tol) {
  const int n = static_cast<int>(u_plus.rows());
  const Mat v = u_minus.adjoint() * u_plus;
  if (gap_at_one(v) <= tol.gap) fail(ErrorCode::PathBlocked, "1 lies in the spectrum of u_-* u_+");
  StraightenResult out;
  out.u_plus = u_plus;
  // Angles in (0, 2 pi) move linearly to pi, so 1 stays out of the spectrum.
  Mat theta = unitary_log(v, 0.0);
  theta = 0.5 * (theta + theta.adjoint());
  auto v_at = [theta, n](double t) -> Mat {
    Mat arg = (1.0 - t) * theta + t * M_PI * Mat::Identity(n, n);
    return matrix_exp(I * arg);
  };
  auto u_minus_at = [u_plus, v_at](double t) -> Mat { return u_plus * v_at(t).adjoint(); };
  out.min_certificate = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 32; ++k) {
    double t = k / 32.0;
    double c = sigma_min(v_at(t) - Mat::Identity(n, n));
    out.min_certificate = std::min(out.min_certificate, c);
  }
  if (out.min_certificate <= tol.gap) fail(ErrorCode::PathBlocked, "Fredholm certificate lost along the path");
  if (symmetry == StraightenSymmetry::Symmetric || symmetry == StraightenSymmetry::OddSymmetric) {
    // Diagnostic: the pair in coordinates where u_+ = 1 is a gapped unitary of the class.
    try {
      if (symmetry == StraightenSymmetry::Symmetric) {
        Factorization fp = factorize_unitary(u_plus, UnitaryClass::Symmetric, tol.scaled(1e2), false);
        Mat vt = fp.w.conjugate() * u_minus * fp.w.adjoint();
        out.factorization_residual = factorize_unitary(vt, UnitaryClass::Symmetric, tol.scaled(1e2)).residual;
      } else {
        Mat s = symplectic(n / 2);
        Factorization fp = factorize_unitary(s.adjoint() * u_plus, UnitaryClass::OddSymmetric, tol.scaled(1e2), false);
        Mat vt = s.adjoint() * fp.w.conjugate() * u_minus * fp.w.adjoint();
        out.factorization_residual = factorize_unitary(vt, UnitaryClass::OddSymmetric, tol.scaled(1e2)).residual;
      }
    } catch (const Error&) {
      out.factorization_residual = std::numeric_limits<double>::infinity();
    }
  }
  out.path.name = "straighten";
  out.path.K = make_standard(n, n);
  out.path.kind = OperatorKind::Hermitian;
  out.path.sampler = [u_plus, u_minus_at](double t) -> Mat {
    Mat um = u_minus_at(t);
    return I * (projection_from_frames(u_plus, um) - projection_from_frames(um, u_plus));
  };
  return out;
}

std::pair<std::string, double> terminal_class(const Mat& a, const RealStructure* R) {
  if (!R) return {"complex", 0.0};
  const RealKind k = R->kind;
  if (k == RealKind{1, 1}) return {"real", norm(a.imag().cast<cplx>())};
  if (k == RealKind{-1, -1}) return {"anti-symmetric", norm(a + a.transpose())};
  if (k == RealKind{1, -1}) return {"symmetric", norm(a - a.transpose())};
  Mat s = make_real_structure({-1, 1}, static_cast<int>(a.rows()), 0).S;
  return {"quaternionic", norm(s.adjoint() * a.conjugate() * s - a)};
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    fail(e.code(), std::string(name) + ": " + e.what());
  }
}

double segment_membership(const OperatorPath& p, int samples) { return path_membership_residual(p, samples); }

}  // namespace

namespace {

// Appends the constant final segment and checks chaining, membership and Sig.
RetractionTrace close_trace(RetractionTrace& tr, const OperatorPath& last, const KreinStructure& K,
                            const ToleranceConfig& tol, int membership_samples) {
  tr.terminal = last.at(1.0);
  Mat term = tr.terminal;
  OperatorPath fin = last;
  fin.name = "final";
  fin.sampler = [term](double) { return term; };
  tr.segments.push_back({"final", fin, 0.0});

  for (size_t i = 0; i < tr.segments.size(); ++i) {
    tr.segments[i].membership_residual = segment_membership(tr.segments[i].path, membership_samples);
    tr.max_membership = std::max(tr.max_membership, tr.segments[i].membership_residual);
    if (i + 1 < tr.segments.size())
      tr.max_chain_gap =
          std::max(tr.max_chain_gap, norm(tr.segments[i].path.at(1.0) - tr.segments[i + 1].path.at(0.0)));
  }
  if (tr.max_chain_gap > tol.path_membership)
    fail(ErrorCode::InvariantConstraintViolated, "segments do not chain, gap " + std::to_string(tr.max_chain_gap));
  if (tr.max_membership > tol.path_membership)
    fail(ErrorCode::InvariantConstraintViolated,
         "membership lost along the trace, residual " + std::to_string(tr.max_membership));
  tr.sig_terminal = global_signature(tr.terminal, K, OperatorKind::Hermitian, tol).global_sig;
  if (tr.sig_terminal != tr.sig_initial) fail(ErrorCode::InvariantConstraintViolated, "final: Sig changed");
  return tr;
}

// The lift left a kernel filling the whole space: the endpoint is already the model point and A is empty.
RetractionTrace finish_trace(RetractionTrace& tr, const LiftResult& lift, const KreinStructure& K,
                             const RealStructure* R, const ToleranceConfig& tol, int membership_samples) {
  tr.A = Mat(0, 0);
  tr.u_plus = Mat(0, 0);
  tr.P_plus = Mat::Zero(K.dim(), K.dim());
  tr.P_minus = Mat::Zero(K.dim(), K.dim());
  auto cls = terminal_class(tr.A, R);
  tr.a_class = cls.first;
  tr.a_residual = cls.second;
  return close_trace(tr, lift.path, K, tol, membership_samples);
}

}  // namespace

RetractionTrace retract_to_model(const Mat& h, const KreinStructure& K, const RealStructure* R,
                                 const ToleranceConfig& tol, int membership_samples) {
  RetractionTrace tr;
  tr.initial = h;
  if (K.n_plus != K.n_minus) fail(ErrorCode::IncompatibleDimensions, "retraction needs n_plus == n_minus");
  tr.sig_initial = global_signature(h, K, OperatorKind::Hermitian, tol).global_sig;

  OperatorPath flat = stage("flatten", [&] { return spectral_flatten(h, K, R, tol); });
  LiftResult lift = stage("lift", [&] { return lift_kernel(flat.at(1.0), K, R, tol); });
  tr.kernel_dim_after_lift = lift.kernel_dim;
  tr.kernel_inertia = lift.kernel_inertia;
  tr.segments.push_back({"flatten", flat, 0.0});
  tr.segments.push_back({"lift", lift.path, 0.0});

  Mat block = lift.endpoint;
  KreinStructure Kb = K;
  std::optional<RealStructure> Rb;
  if (R) Rb = *R;
  Mat M, M_inv;
  int k0 = 0;
  if (lift.kernel_dim > 0) {
    if (!(R && R->kind == RealKind{-1, -1}))
      fail(ErrorCode::NotLagrangian, "lift: kernel remains after the lift");
    tr.sig2 = 1;
    if (lift.kernel_dim == K.dim()) return finish_trace(tr, lift, K, R, tol, membership_samples);
    BlockDecomposition b = stage("lift", [&] { return block_decompose(lift.endpoint, K, lift.kernel_frame, R, tol); });
    M = b.M;
    M_inv = b.M_inv;
    k0 = lift.kernel_dim;
    const int m = (K.dim() - k0) / 2;
    Kb = make_standard(m, m);
    Rb = make_real_structure({-1, -1}, m, m);
    block = b.H_phi;
    if (norm(b.J_phi - Kb.J) > 1e-8) fail(ErrorCode::FramePreparationFailed, "lift: complement grading not standard");
  } else if (R && R->kind == RealKind{-1, -1}) {
    tr.sig2 = 0;
  }

  LagrangianFrames lf = stage("straighten", [&] { return lagrangian_frames(block, Kb, tol); });
  StraightenResult st = stage("straighten", [&] {
    return straighten(lf.u_plus, lf.u_minus, symmetry_for(Rb ? &*Rb : nullptr), tol);
  });
  tr.factorization_residual = st.factorization_residual;
  tr.u_plus = st.u_plus;
  const int nb = Kb.n_plus;
  Mat h_end_block = st.path.at(1.0);
  tr.A = h_end_block.bottomLeftCorner(nb, nb) / I;
  tr.P_plus = projection_from_frames(st.u_plus, -st.u_plus);
  tr.P_minus = projection_from_frames(-st.u_plus, st.u_plus);
  auto cls = terminal_class(tr.A, Rb ? &*Rb : nullptr);
  tr.a_class = cls.first;
  tr.a_residual = cls.second;
  if (tr.a_residual > 1e-8)
    fail(ErrorCode::NotInClass, "final: terminal block is not " + tr.a_class + ", residual " + std::to_string(tr.a_residual));

  OperatorPath full = st.path;
  full.K = K;
  if (R) full.R = *R;
  if (k0 > 0) {
    auto inner = st.path.sampler;
    full.sampler = [inner, M, M_inv, k0](double t) -> Mat {
      Mat b = inner(t);
      Mat d = Mat::Zero(M.rows(), M.cols());
      d.bottomRightCorner(b.rows(), b.cols()) = b;
      return M * d * M_inv;
    };
  }
  tr.segments.push_back({"straighten", full, 0.0});
  return close_trace(tr, full, K, tol, membership_samples);
}

}  // namespace kreinlab
