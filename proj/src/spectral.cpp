#include "kreinlab/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kreinlab/errors.hpp"

namespace kreinlab {

const char* region_name(Region r) {
  switch (r) {
    case Region::RealAxis: return "real-axis";
    case Region::UnitCircle: return "unit-circle";
    case Region::UpperHalf: return "upper-half";
    case Region::LowerHalf: return "lower-half";
    case Region::InsideDisc: return "inside-disc";
    case Region::OutsideDisc: return "outside-disc";
  }
  return "?";
}

Region parse_region(const std::string& s) {
  for (Region r : {Region::RealAxis, Region::UnitCircle, Region::UpperHalf, Region::LowerHalf,
                   Region::InsideDisc, Region::OutsideDisc})
    if (s == region_name(r)) return r;
  fail(ErrorCode::InvalidInput, "unknown region " + s);
}

const char* kind_name(OperatorKind k) { return k == OperatorKind::Unitary ? "unitary" : "hermitian"; }

std::vector<std::vector<int>> cluster_eigenvalues(const Vec& eigs, double delta) {
  const int n = static_cast<int>(eigs.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(eigs(i) - eigs(j)) <= delta) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

double default_delta(const Vec& eigs, const ToleranceConfig& tol) {
  double rho = eigs.size() ? eigs.cwiseAbs().maxCoeff() : 0.0;
  return tol.cluster_rel * (1.0 + rho);
}

Mat riesz_projection(const Mat& t, const Vec& spectrum, const std::vector<int>& members, double delta,
                     const ToleranceConfig& tol, int* points_used) {
  const int n = static_cast<int>(t.rows());
  if (members.empty()) return Mat::Zero(n, n);
  std::vector<bool> in(spectrum.size(), false);
  cplx c = 0;
  for (int i : members) {
    in[i] = true;
    c += spectrum(i);
  }
  c /= static_cast<double>(members.size());
  double spread = 0.0;
  for (int i : members) spread = std::max(spread, std::abs(spectrum(i) - c));
  double dmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (!in[i]) dmin = std::min(dmin, std::abs(spectrum(i) - c));

  double r;
  if (std::isinf(dmin)) {
    r = 2.0 * spread + 1.0;
  } else {
    r = std::max(dmin / 2.0, delta / 2.0);
    if (r <= spread) r = 0.5 * (spread + dmin);
  }
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    double d = std::abs(spectrum(i) - c);
    bool inside = d < r;
    if (inside != static_cast<bool>(in[i]) || std::abs(d - r) < tol.contour_clearance)
      fail(ErrorCode::NoSeparatingContour, "no circle separates the cluster");
  }

  const Mat I = Mat::Identity(n, n);
  auto node = [&](int k, int N) {
    double th = 2.0 * M_PI * k / N;
    cplx e(std::cos(th), std::sin(th));
    return Mat(r * e * solve(c * I + r * e * I - t, I, tol));
  };
  int N = tol.quad_min;
  Mat sum = Mat::Zero(n, n);
  for (int k = 0; k < N; ++k) sum += node(k, N);
  while (true) {
    Mat p = sum / static_cast<double>(N);
    if (norm(p * p - p) <= tol.riesz) {
      if (points_used) *points_used = N;
      return p;
    }
    if (2 * N > tol.quad_max) break;
    for (int k = 1; k < 2 * N; k += 2) sum += node(k, 2 * N);
    N *= 2;
  }
  fail(ErrorCode::QuadratureDivergence, "idempotency not reached at the quadrature cap");
}

Mat riesz_projection(const Mat& t, const std::vector<cplx>& cluster, const ToleranceConfig& tol) {
  Vec spec = eigenvalues(t);
  double delta = default_delta(spec, tol);
  std::vector<int> members;
  for (Eigen::Index i = 0; i < spec.size(); ++i)
    for (cplx z : cluster)
      if (std::abs(spec(i) - z) <= std::max(delta, tol.match)) {
        members.push_back(static_cast<int>(i));
        break;
      }
  return riesz_projection(t, spec, members, delta, tol);
}

Mat range_frame(const Mat& p, int rank) {
  if (rank <= 0) return Mat(p.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

ClusterPartition partition(const Mat& t, const Vec& spectrum, const ToleranceConfig& tol) {
  ClusterPartition out;
  out.delta = default_delta(spectrum, tol);
  auto groups = cluster_eigenvalues(spectrum, out.delta);
  out.gap = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < groups.size(); ++a)
    for (size_t b = a + 1; b < groups.size(); ++b)
      for (int i : groups[a])
        for (int j : groups[b]) out.gap = std::min(out.gap, std::abs(spectrum(i) - spectrum(j)));
  for (const auto& g : groups) {
    SpectralCluster c;
    c.center = 0;
    for (int i : g) {
      c.eigenvalues.push_back(spectrum(i));
      c.center += spectrum(i);
    }
    c.center /= static_cast<double>(g.size());
    c.multiplicity = static_cast<int>(g.size());
    c.projection = riesz_projection(t, spectrum, g, out.delta, tol, &c.quad_points);
    c.frame = range_frame(c.projection, c.multiplicity);
    out.clusters.push_back(std::move(c));
  }
  return out;
}

ClusterPartition partition(const Mat& t, const ToleranceConfig& tol) {
  return partition(t, eigenvalues(t), tol);
}

double boundary_distance(cplx z, Region r) {
  switch (r) {
    case Region::RealAxis:
    case Region::UpperHalf:
    case Region::LowerHalf: return std::abs(z.imag());
    default: return std::abs(std::abs(z) - 1.0);
  }
}

Side classify(cplx z, Region r, double eps) {
  double d = boundary_distance(z, r);
  bool on = d <= eps;
  if (!on && d <= 10.0 * eps) return Side::Ambiguous;
  switch (r) {
    case Region::RealAxis:
    case Region::UnitCircle: return on ? Side::In : Side::Out;
    case Region::UpperHalf: return (!on && z.imag() > 0) ? Side::In : Side::Out;
    case Region::LowerHalf: return (!on && z.imag() < 0) ? Side::In : Side::Out;
    case Region::InsideDisc: return (!on && std::abs(z) < 1) ? Side::In : Side::Out;
    case Region::OutsideDisc: return (!on && std::abs(z) > 1) ? Side::In : Side::Out;
  }
  return Side::Out;
}

Side classify(const SpectralCluster& c, Region r, double eps) {
  Side s = classify(c.center, r, eps);
  for (cplx z : c.eigenvalues)
    if (classify(z, r, eps) != s) return Side::Ambiguous;
  return s;
}

ClusterPartition restrict_to(const ClusterPartition& p, Region r, double eps) {
  ClusterPartition out;
  out.gap = p.gap;
  out.delta = p.delta;
  for (const auto& c : p.clusters) {
    Side s = classify(c, r, eps);
    if (s == Side::Ambiguous)
      fail(ErrorCode::AmbiguousClassification,
           std::string("eigenvalue too close to the boundary of ") + region_name(r));
    if (s == Side::In) out.clusters.push_back(c);
  }
  return out;
}

ClusterPartition spectral_subspaces(const Mat& t, const KreinStructure& K, Region r,
                                    const ToleranceConfig& tol) {
  if (t.rows() != K.dim()) fail(ErrorCode::DimensionMismatch, "operator and Krein structure differ");
  return restrict_to(partition(t, tol), r, tol.eps_region);
}

Mat total_projection(const ClusterPartition& p, int n) {
  Mat s = Mat::Zero(n, n);
  for (const auto& c : p.clusters) s += c.projection;
  return s;
}

int find_cluster(const ClusterPartition& p, cplx z, double radius) {
  int best = -1;
  double bd = radius;
  for (size_t i = 0; i < p.clusters.size(); ++i) {
    double d = std::abs(p.clusters[i].center - z);
    if (d <= bd) {
      bd = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

ProjectionSymmetryReport check_projection_symmetry(const ClusterPartition& p, const KreinStructure& K,
                                                   OperatorKind kind, const ToleranceConfig& tol) {
  ProjectionSymmetryReport rep;
  double radius = std::max(p.delta, tol.match);
  for (size_t i = 0; i < p.clusters.size(); ++i) {
    cplx z = p.clusters[i].center;
    cplx zr = kind == OperatorKind::Unitary ? 1.0 / std::conj(z) : std::conj(z);
    int j = find_cluster(p, zr, radius * (1.0 + std::abs(zr)));
    if (j < 0) fail(ErrorCode::UnmatchedReflection, "reflected cluster missing");
    double r = norm(p.clusters[i].projection.adjoint() - K.J * p.clusters[j].projection * K.J);
    rep.rows.push_back({static_cast<int>(i), j, r});
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

Mat fredholm_corrector(const Mat& h, const KreinStructure& K, double lambda, const ToleranceConfig& tol) {
  const int n = static_cast<int>(h.rows());
  Mat shifted = h - lambda * Mat::Identity(n, n);
  Mat psi = kernel_frame(shifted, tol.rank);
  Mat f = K.J * psi * psi.adjoint();
  if (sigma_min(shifted + f) <= 1e-8)
    fail(ErrorCode::CorrectionFailed, "corrected operator is still singular");
  return f;
}

}  // namespace kreinlab
