#include "kreinlab/realsym.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kreinlab/errors.hpp"
#include "kreinlab/factorize.hpp"
#include "kreinlab/random.hpp"

namespace kreinlab {

namespace {

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Interleaving permutation taking symplectic_unit(k) to diag(s, ..., s).
Mat interleave(int k) {
  Mat p = Mat::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    p(i, 2 * i) = 1.0;
    p(k + i, 2 * i + 1) = 1.0;
  }
  return p;
}

std::vector<cplx> reflection_orbit(cplx z, OperatorKind kind) {
  if (kind == OperatorKind::Hermitian) return {std::conj(z), -z, -std::conj(z)};
  if (std::abs(z) == 0.0) return {std::conj(z)};
  return {std::conj(z), 1.0 / z, 1.0 / std::conj(z)};
}

}  // namespace

Mat symplectic_unit(int k) {
  Mat s = Mat::Zero(2 * k, 2 * k);
  s.topRightCorner(k, k) = -Mat::Identity(k, k);
  s.bottomLeftCorner(k, k) = Mat::Identity(k, k);
  return s;
}

RealStructure make_real_structure(RealKind kind, int n_plus, int n_minus) {
  if (std::abs(kind.eta) != 1 || std::abs(kind.tau) != 1) fail(ErrorCode::InvalidInput, "eta and tau must be +-1");
  RealStructure R{kind, Mat(), make_standard(n_plus, n_minus)};
  const int n = n_plus + n_minus;
  if (kind.tau == 1 && kind.eta == 1) {
    R.S = Mat::Identity(n, n);
  } else if (kind.tau == 1) {
    if (n_plus % 2 != 0 || n_minus % 2 != 0)
      fail(ErrorCode::IncompatibleDimensions, "kind (-1,1) needs even n_plus and n_minus");
    R.S = Mat::Zero(n, n);
    for (int b = 0; b < n / 2; ++b) {
      R.S(2 * b, 2 * b + 1) = -1.0;
      R.S(2 * b + 1, 2 * b) = 1.0;
    }
  } else {
    if (n_plus != n_minus) fail(ErrorCode::IncompatibleDimensions, "tau = -1 needs n_plus == n_minus");
    R.S = Mat::Zero(n, n);
    R.S.topRightCorner(n_plus, n_plus) = double(kind.eta) * Mat::Identity(n_plus, n_plus);
    R.S.bottomLeftCorner(n_plus, n_plus) = Mat::Identity(n_plus, n_plus);
  }
  return R;
}

double structure_residual(const RealStructure& R) {
  const int n = R.K.dim();
  if (R.S.rows() != n || R.S.cols() != n) return std::numeric_limits<double>::infinity();
  double r = R.S.imag().cwiseAbs().maxCoeff();
  r = std::max(r, norm(R.S * R.S - double(R.kind.eta) * Mat::Identity(n, n)));
  r = std::max(r, norm(R.K.J * R.S - double(R.kind.tau) * R.S * R.K.J));
  return r;
}

Membership is_member(const Mat& a, const RealStructure& R, OperatorKind kind, double tol) {
  if (a.rows() != R.S.rows() || a.cols() != R.S.cols())
    fail(ErrorCode::DimensionMismatch, "operator and S differ in size");
  Mat img = R.S.adjoint() * a.conjugate() * R.S;
  double res = kind == OperatorKind::Unitary ? norm(img - a) : norm(img + a);
  return {res <= tol, res};
}

GroupInfo classify_group(const RealStructure* R, const KreinStructure& K) {
  const std::string p = std::to_string(K.n_plus), q = std::to_string(K.n_minus);
  if (R == nullptr) return {"U(" + p + "," + q + ")", "Sig", {"KC"}, ""};
  const RealKind k = R->kind;
  if (k == RealKind{1, 1})
    return {"O(" + p + "," + q + ")", "Sig x Sec", {"QKC", "MTB", "MPD"}, "nu(l) = nu(conj l)"};
  if (k == RealKind{-1, -1})
    return {"SO*(" + std::to_string(2 * K.n_plus) + ")", "Sig2", {"QKC"}, "nu+-(l) = nu-+(conj l)"};
  if (k == RealKind{-1, 1}) return {"SP(" + p + "," + q + ")", "Sig in 2Z", {"QKC"}, "nu(l) = nu(conj l)"};
  return {"SP(" + std::to_string(2 * K.n_plus) + ",R)", "trivial", {"QKC", "TB", "PD"}, "nu+-(l) = nu-+(conj l)"};
}

cplx real_reflection(cplx z, OperatorKind kind) {
  return kind == OperatorKind::Unitary ? std::conj(z) : -std::conj(z);
}

SymmetryReport check_spectral_symmetries(const Mat& a, const RealStructure& R, OperatorKind kind,
                                         const ToleranceConfig& tol) {
  SymmetryReport rep;
  ClusterPartition part = partition(a, tol);
  const auto& cs = part.clusters;
  for (const auto& c : cs) {
    const double radius = std::max(tol.match, 10.0 * part.delta) * (1.0 + std::abs(c.center));
    for (cplx img : reflection_orbit(c.center, kind)) {
      int j = find_cluster(part, img, radius);
      if (j < 0 || cs[j].multiplicity != c.multiplicity)
        fail(ErrorCode::SymmetryViolated, "reflection of eigenvalue " + fmt(c.center) + " missing");
      rep.multiset_residual = std::max(rep.multiset_residual, std::abs(cs[j].center - img));
    }
    cplx img = real_reflection(c.center, kind);
    int j = find_cluster(part, img, radius);
    Mat conj_p = R.S.adjoint() * c.projection.conjugate() * R.S;
    double res = norm(conj_p - cs[j].projection) / std::max(1.0, norm(c.projection));
    rep.projection_residual = std::max(rep.projection_residual, res);
    if (res > 1e3 * tol.riesz)
      fail(ErrorCode::SymmetryViolated, "projection of eigenvalue " + fmt(c.center) + " not conjugated by S");
  }
  return rep;
}

KramersResult kramers_check(const Mat& a, const RealStructure& R, OperatorKind kind, const ToleranceConfig& tol) {
  KramersResult out;
  if (R.kind.eta != -1) {
    out.diagnostics.push_back("kind has eta = 1; nothing to check");
    return out;
  }
  ClusterPartition part = partition(a, tol);
  const int n = static_cast<int>(a.rows());
  for (const auto& c : part.clusters) {
    cplx axis = kind == OperatorKind::Unitary ? c.center : cplx(0, -1) * c.center;
    if (std::abs(axis.imag()) > std::max(tol.eps_region, 10.0 * part.delta)) continue;
    ++out.clusters_checked;
    const int alg = static_cast<int>(std::lround(c.projection.trace().real()));
    const int geo = static_cast<int>(kernel_frame(a - c.center * Mat::Identity(n, n), 1e-7).cols());
    if (alg % 2 != 0 || geo % 2 != 0) {
      out.ok = false;
      out.diagnostics.push_back("eigenvalue " + fmt(c.center) + ": algebraic " + std::to_string(alg) +
                                ", geometric " + std::to_string(geo));
    }
  }
  return out;
}

Mat symmetrize(const Mat& h, const RealStructure& R) {
  return 0.5 * (h - R.S.adjoint() * h.conjugate() * R.S);
}

Mat random_member(const RealStructure& R, OperatorKind kind, std::uint64_t seed, double scale) {
  Mat h = scale * symmetrize(random_j_hermitian(R.K, seed), R);
  if (kind == OperatorKind::Hermitian) return h;
  return matrix_exp(cplx(0, 1) * h);
}

InvariantReport full_invariant_report(const Mat& a, const RealStructure& R, OperatorKind kind,
                                      const ToleranceConfig& tol) {
  InvariantReport rep = global_signature(a, R.K, kind, tol);
  const RealKind k = R.kind;
  if (k == RealKind{1, 1}) {
    if (kind == OperatorKind::Unitary) rep.sec = sec_from_report(rep, tol);
  } else if (k == RealKind{-1, -1}) {
    if (rep.global_sig != 0) fail(ErrorCode::InvariantConstraintViolated, "Sig must vanish for kind (-1,-1)");
    rep.sig2 = sig2_from_report(rep);
  } else if (k == RealKind{-1, 1}) {
    if (rep.global_sig % 2 != 0) fail(ErrorCode::InvariantConstraintViolated, "Sig must be even for kind (-1,1)");
  } else {
    if (rep.global_sig != 0) fail(ErrorCode::InvariantConstraintViolated, "Sig must vanish for kind (1,-1)");
  }
  return rep;
}

Mat normal_form_basis(const Mat& S, const KreinStructure& K, RealKind kind, const ToleranceConfig& tol) {
  RealStructure given{kind, S, K};
  if (structure_residual(given) > 1e-10) fail(ErrorCode::FramePreparationFailed, "S does not have the declared kind");
  RealStructure target = make_real_structure(kind, K.n_plus, K.n_minus);
  const int np = K.n_plus, nm = K.n_minus, n = K.dim();
  Mat u = Mat::Zero(n, n);
  if (kind.tau == 1) {
    // S commutes with J, so each eigenspace of J carries its own Real frame.
    Mat up = real_frame(Mat::Identity(np, np), S.topLeftCorner(np, np), kind.eta, tol);
    Mat um = real_frame(Mat::Identity(nm, nm), S.bottomRightCorner(nm, nm), kind.eta, tol);
    if (kind.eta == -1) {
      up = up * interleave(np / 2);
      um = um * interleave(nm / 2);
    }
    u.topLeftCorner(np, np) = up;
    u.bottomRightCorner(nm, nm) = um;
  } else {
    u.topLeftCorner(np, np) = Mat::Identity(np, np);
    u.bottomRightCorner(nm, nm) = S.bottomLeftCorner(nm, np).real().cast<cplx>();
  }
  double res = std::max({norm(u.adjoint() * u - Mat::Identity(n, n)), norm(u * K.J - K.J * u),
                         norm(u.adjoint() * S * u.conjugate() - target.S)});
  if (res > 1e-8 * std::max(1.0, std::sqrt(double(n))))
    fail(ErrorCode::FramePreparationFailed, "normal form not reached, residual " + std::to_string(res));
  return u;
}

}  // namespace kreinlab
