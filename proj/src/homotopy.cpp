#include "kreinlab/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Region boundary_of(OperatorKind kind) { return boundary_region(kind); }

double band(const ToleranceConfig& tol) { return 10.0 * tol.eps_region; }

bool on_boundary(cplx z, OperatorKind kind, const ToleranceConfig& tol) {
  return boundary_distance(z, boundary_of(kind)) <= band(tol) * (1.0 + std::abs(z));
}

cplx project_to_boundary(cplx z, OperatorKind kind) {
  if (kind == OperatorKind::Hermitian) return {z.real(), 0.0};
  return std::abs(z) > 0 ? z / std::abs(z) : cplx(1.0, 0.0);
}

int count_on(const Vec& ev, OperatorKind kind, const ToleranceConfig& tol) {
  int c = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) c += on_boundary(ev(i), kind, tol) ? 1 : 0;
  return c;
}

std::string fmt_t(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

// Inertia of the group of eigenvalues of `a` within `radius` of `centre`.
bool group_inertia(const Mat& a, const Vec& spectrum, cplx centre, double radius, const KreinStructure& K,
                   const ToleranceConfig& tol, InertiaPair& out, int* size = nullptr) {
  std::vector<int> members;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (std::abs(spectrum(i) - centre) <= radius) members.push_back(static_cast<int>(i));
  if (size) *size = static_cast<int>(members.size());
  if (members.empty()) {
    out = {};
    return false;
  }
  try {
    Mat p = riesz_projection(a, spectrum, members, default_delta(spectrum, tol), tol);
    Mat frame = range_frame(p, static_cast<int>(members.size()));
    out = frame_inertia(frame, K, tol.zero_tol, tol);
    return true;
  } catch (const Error&) {
    return false;
  }
}

struct Sample {
  Vec values;
  std::vector<TrackSample> info;
};

// Per-eigenvalue boundary status and inertia; singletons use the eigenvector form.
Sample describe(const Mat& a, double t, const OperatorPath& p, const ToleranceConfig& tol) {
  EigenDecomposition ed = eig(a);
  Sample s;
  s.values = ed.values;
  const int n = static_cast<int>(ed.values.size());
  s.info.resize(n);
  const double delta = default_delta(ed.values, tol);
  auto groups = cluster_eigenvalues(ed.values, delta);
  for (const auto& g : groups) {
    cplx centre = 0.0;
    for (int i : g) centre += ed.values(i);
    centre /= double(g.size());
    const bool on = on_boundary(centre, p.kind, tol);
    InertiaPair nu;
    bool defined = false;
    if (on) {
      if (g.size() == 1) {
        Vec v = ed.vectors.col(g[0]);
        double f = (v.adjoint() * p.K.J * v)(0, 0).real();
        if (std::abs(f) > tol.zero_tol * v.squaredNorm()) {
          nu = f > 0 ? InertiaPair{1, 0} : InertiaPair{0, 1};
          defined = true;
        }
      } else {
        try {
          Mat proj = riesz_projection(a, ed.values, g, delta, tol);
          nu = frame_inertia(range_frame(proj, static_cast<int>(g.size())), p.K, tol.zero_tol, tol);
          defined = true;
        } catch (const Error&) {
          defined = false;
        }
      }
    }
    for (int i : g) {
      TrackSample& ts = s.info[i];
      ts.t = t;
      ts.value = ed.values(i);
      ts.on_boundary = on;
      ts.inertia_defined = defined;
      ts.nu = nu;
      ts.cluster_size = static_cast<int>(g.size());
    }
  }
  return s;
}

}  // namespace

OperatorPath interpolated_path(std::string name, std::vector<double> ts, std::vector<Mat> samples,
                               const KreinStructure& K, std::optional<RealStructure> R, OperatorKind kind) {
  if (ts.size() < 2 || ts.size() != samples.size()) fail(ErrorCode::InvalidInput, "need at least two samples");
  for (size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1])) fail(ErrorCode::InvalidInput, "sample times must increase");
  for (const auto& m : samples)
    if (m.rows() != K.dim() || m.cols() != K.dim()) fail(ErrorCode::DimensionMismatch, "sample size differs from J");
  OperatorPath p;
  p.name = std::move(name);
  p.K = K;
  p.R = std::move(R);
  p.kind = kind;
  p.t_begin = ts.front();
  p.t_end = ts.back();
  p.sampler = [ts, samples](double t) -> Mat {
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    size_t j = std::clamp<size_t>(static_cast<size_t>(it - ts.begin()), 1, ts.size() - 1);
    double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
    return (1.0 - w) * samples[j - 1] + w * samples[j];
  };
  return p;
}

OperatorPath reversed(const OperatorPath& p) {
  OperatorPath r = p;
  r.name = p.name + "-reversed";
  const double a = p.t_begin, b = p.t_end;
  auto f = p.sampler;
  r.sampler = [f, a, b](double s) { return f(a + b - s); };
  return r;
}

double path_membership_residual(const OperatorPath& p, int samples) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double t = p.t_begin + (p.t_end - p.t_begin) * k / std::max(1, samples - 1);
    Mat a = p.at(t);
    Membership m = p.kind == OperatorKind::Unitary ? is_j_unitary(a, p.K, kInf) : is_j_hermitian(a, p.K, kInf);
    worst = std::max(worst, m.residual);
    if (p.R) worst = std::max(worst, is_member(a, *p.R, p.kind, kInf).residual);
  }
  return worst;
}

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) fail(ErrorCode::DimensionMismatch, "assignment needs a square cost matrix");
  // Potentials method, 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = 0;
      double d = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < d) {
          d = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += d;
          v[j] -= d;
        } else {
          minv[j] -= d;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> result(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] > 0) result[match[j] - 1] = j - 1;
  return result;
}

TrackResult track(const OperatorPath& p, int initial_grid, const ToleranceConfig& tol) {
  if (initial_grid < 2) fail(ErrorCode::InvalidInput, "initial grid needs at least two points");
  const double span = p.t_end - p.t_begin;
  const double h0 = span / (initial_grid - 1);
  TrackResult tr;
  Sample cur = describe(p.at(p.t_begin), p.t_begin, p, tol);
  const int n = static_cast<int>(cur.values.size());
  tr.tracks.resize(n);
  for (int i = 0; i < n; ++i) {
    tr.tracks[i].id = i;
    tr.tracks[i].samples.push_back(cur.info[i]);
  }
  tr.ts.push_back(p.t_begin);

  double t = p.t_begin;
  double h = h0;
  while (t < p.t_end - 1e-14 * std::max(1.0, std::abs(p.t_end))) {
    const double hh = std::min(h, p.t_end - t);
    const double tn = t + hh;
    Sample nxt = describe(p.at(tn), tn, p, tol);
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cost(i, j) = std::abs(cur.values(i) - nxt.values(j));
    std::vector<int> perm = hungarian(cost);

    const double delta = default_delta(cur.values, tol);
    std::vector<double> move(n), nn(n, kInf);
    for (int i = 0; i < n; ++i) {
      move[i] = cost(i, perm[i]);
      for (int k = 0; k < n; ++k) {
        double d = std::abs(cur.values(i) - cur.values(k));
        if (k != i && d > delta) nn[i] = std::min(nn[i], d);
      }
    }
    std::vector<int> bad;
    double worst_ratio = 0.0;
    for (int i = 0; i < n; ++i) {
      if (move[i] > tol.step_ratio * nn[i]) bad.push_back(i);
      if (std::isfinite(nn[i]) && nn[i] > 0) worst_ratio = std::max(worst_ratio, move[i] / nn[i]);
    }
    if (!bad.empty()) {
      if (hh > tol.min_step * (1.0 + 1e-9)) {
        h = std::max(hh / 2.0, tol.min_step);
        ++tr.bisections;
        continue;
      }
      // At the minimum step, accept only when the jumps stay inside an isolated colliding group.
      std::vector<int> root(n);
      for (int i = 0; i < n; ++i) root[i] = i;
      std::function<int(int)> find = [&](int i) { return root[i] == i ? i : root[i] = find(root[i]); };
      for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
          if (std::abs(cur.values(k) - cur.values(i)) <= 10.0 * std::max(move[i], move[k]) + delta)
            root[find(i)] = find(k);
      for (int i : bad) {
        std::vector<int> group;
        for (int k = 0; k < n; ++k)
          if (find(k) == find(i)) group.push_back(k);
        double inner = 0.0, outer = kInf;
        cplx centre = 0.0;
        for (int k = 0; k < n; ++k) {
          if (find(k) == find(i)) {
            inner = std::max(inner, move[k]);
            centre += cur.values(k);
          } else {
            for (int g : group) outer = std::min(outer, std::abs(cur.values(k) - cur.values(g)));
          }
        }
        if (group.size() < 2 || inner > tol.step_ratio * outer)
          fail(ErrorCode::StepUnderflow, "unresolvable collision in [" + fmt_t(t) + ", " + fmt_t(tn) + "]");
        centre /= double(group.size());
        if (tr.collisions.empty() || std::abs(tr.collisions.back().first - t) > 10.0 * tol.min_step ||
            std::abs(tr.collisions.back().second - centre) > 1e-3)
          tr.collisions.emplace_back(t, centre);
      }
    }
    Sample re;
    re.values.resize(n);
    re.info.resize(n);
    for (int i = 0; i < n; ++i) {
      re.values(i) = nxt.values(perm[i]);
      re.info[i] = nxt.info[perm[i]];
      tr.tracks[i].samples.push_back(re.info[i]);
      if (std::isfinite(nn[i]) && nn[i] > 0)
        tr.tracks[i].continuity_bound = std::max(tr.tracks[i].continuity_bound, move[i] / nn[i]);
    }
    (void)worst_ratio;
    tr.ts.push_back(tn);
    cur = std::move(re);
    t = tn;
    h = std::min(h0, 2.0 * hh);
  }
  return tr;
}

const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::KC: return "KC";
    case EventKind::QKC: return "QKC";
    case EventKind::TB: return "TB";
    case EventKind::MTB: return "MTB";
    case EventKind::PD: return "PD";
    case EventKind::MPD: return "MPD";
    case EventKind::PassThrough: return "PASS_THROUGH";
  }
  return "?";
}

EventKind parse_event(const std::string& s) {
  for (EventKind k : {EventKind::KC, EventKind::QKC, EventKind::TB, EventKind::MTB, EventKind::PD, EventKind::MPD,
                      EventKind::PassThrough})
    if (s == event_name(k)) return k;
  fail(ErrorCode::InvalidInput, "unknown event kind " + s);
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::Departure: return "departure";
    case Direction::Arrival: return "arrival";
    case Direction::Along: return "along";
  }
  return "?";
}

namespace {

bool is_special(cplx z, OperatorKind kind, const ToleranceConfig& tol, int* which = nullptr) {
  if (kind == OperatorKind::Hermitian) {
    if (which) *which = 0;
    return std::abs(z) <= tol.special_point;
  }
  if (std::abs(z - 1.0) <= tol.special_point) {
    if (which) *which = 1;
    return true;
  }
  if (std::abs(z + 1.0) <= tol.special_point) {
    if (which) *which = -1;
    return true;
  }
  return false;
}

EventKind label(cplx lambda0, int mult, const OperatorPath& p, const ToleranceConfig& tol) {
  if (!p.R) return EventKind::KC;
  if (p.R->kind.eta == -1) return EventKind::QKC;
  int which = 0;
  if (!is_special(lambda0, p.kind, tol, &which)) return EventKind::QKC;
  const bool tangent = which >= 0;  // 1 on the circle, 0 on the axis
  if (mult % 2 == 0) return tangent ? EventKind::TB : EventKind::PD;
  return tangent ? EventKind::MTB : EventKind::MPD;
}

cplx snap(cplx z, OperatorKind kind, const ToleranceConfig& tol) {
  int which = 0;
  if (!is_special(z, kind, tol, &which)) return z;
  return cplx(double(which), 0.0);
}

struct Point {
  cplx lambda0;
  std::vector<cplx> departing;
  double radius = 0.0;
};

}  // namespace

std::vector<BifurcationEvent> detect_events(const TrackResult& tr, const OperatorPath& p, const ToleranceConfig& tol) {
  std::vector<BifurcationEvent> events;
  const Region boundary = boundary_of(p.kind);
  auto count_at = [&](double t, Vec* ev = nullptr) {
    Vec e = eigenvalues(p.at(t));
    if (ev) *ev = e;
    return count_on(e, p.kind, tol);
  };

  for (size_t k = 0; k + 1 < tr.ts.size(); ++k) {
    int c0 = 0, c1 = 0;
    for (const auto& trk : tr.tracks) {
      c0 += trk.samples[k].on_boundary ? 1 : 0;
      c1 += trk.samples[k + 1].on_boundary ? 1 : 0;
    }
    if (c0 == c1) continue;
    double lo = tr.ts[k], hi = tr.ts[k + 1];
    int clo = c0, chi = c1;
    while (hi - lo > tol.event_bracket) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      int c = count_at(mid);
      if (c == clo) {
        lo = mid;
      } else if (c == chi) {
        hi = mid;
      } else {
        chi = c;
        hi = mid;
      }
    }
    if (hi - lo > 1e3 * tol.event_bracket)
      fail(ErrorCode::UnresolvedEvent, "event bracket [" + fmt_t(lo) + ", " + fmt_t(hi) + "] did not narrow");
    const bool departure = clo > chi;
    const double t_on = departure ? lo : hi;
    const double t_off = departure ? hi : lo;
    Vec ev_on, ev_off;
    count_at(t_on, &ev_on);
    count_at(t_off, &ev_off);
    const int delta_count = std::abs(clo - chi);

    // The departing eigenvalues are the off-boundary ones closest to the boundary.
    std::vector<std::pair<double, cplx>> off;
    for (Eigen::Index i = 0; i < ev_off.size(); ++i)
      if (!on_boundary(ev_off(i), p.kind, tol)) off.emplace_back(boundary_distance(ev_off(i), boundary), ev_off(i));
    std::sort(off.begin(), off.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (static_cast<int>(off.size()) < delta_count)
      fail(ErrorCode::UnresolvedEvent, "status change without departing eigenvalues near t = " + fmt_t(t_on));
    double dmax = 0.0;
    for (int i = 0; i < delta_count; ++i) dmax = std::max(dmax, off[i].first);
    const double radius = std::max(10.0 * dmax, 1e-10);

    std::vector<Point> points;
    for (int i = 0; i < delta_count; ++i) {
      cplx q = project_to_boundary(off[i].second, p.kind);
      auto it = std::find_if(points.begin(), points.end(),
                             [&](const Point& pt) { return std::abs(pt.lambda0 - q) <= radius; });
      if (it == points.end()) {
        points.push_back({q, {off[i].second}, radius});
      } else {
        it->departing.push_back(off[i].second);
      }
    }
    for (auto& pt : points) {
      cplx m = 0.0;
      for (cplx z : pt.departing) m += project_to_boundary(z, p.kind);
      m /= double(pt.departing.size());
      pt.lambda0 = snap(project_to_boundary(m, p.kind), p.kind, tol);
      // The bracket may sit much closer to t* on one side; size the group from the on side too.
      std::vector<double> d_on;
      for (Eigen::Index i = 0; i < ev_on.size(); ++i)
        if (on_boundary(ev_on(i), p.kind, tol)) d_on.push_back(std::abs(ev_on(i) - pt.lambda0));
      std::sort(d_on.begin(), d_on.end());
      const size_t need = std::min(d_on.size(), pt.departing.size());
      pt.radius = std::max(radius, need > 0 ? 1.5 * d_on[need - 1] : 0.0);
    }

    Mat a_on = p.at(t_on);
    std::vector<char> used(points.size(), 0);
    for (size_t i = 0; i < points.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      std::vector<size_t> members{i};
      if (p.R && !is_special(points[i].lambda0, p.kind, tol)) {
        cplx mirror = real_reflection(points[i].lambda0, p.kind);
        for (size_t j = i + 1; j < points.size(); ++j)
          if (!used[j] && std::abs(points[j].lambda0 - mirror) <= std::max(points[i].radius, points[j].radius)) {
            used[j] = 1;
            members.push_back(j);
          }
      }
      BifurcationEvent e;
      e.direction = departure ? Direction::Departure : Direction::Arrival;
      e.bracket_lo = lo;
      e.bracket_hi = hi;
      e.t0 = 0.5 * (lo + hi);
      e.lambda0 = points[i].lambda0;
      for (size_t j : members) {
        const cplx l = points[j].lambda0;
        if ((p.kind == OperatorKind::Unitary && l.imag() > e.lambda0.imag()) ||
            (p.kind == OperatorKind::Hermitian && l.real() > e.lambda0.real()))
          e.lambda0 = l;
      }
      InertiaPair total;
      int mult = 0;
      bool defined = true;
      for (size_t j : members) {
        InertiaPair g;
        int sz = 0;
        defined = group_inertia(a_on, ev_on, points[j].lambda0, points[j].radius, p.K, tol, g, &sz) && defined;
        total.nu_plus += g.nu_plus;
        total.nu_minus += g.nu_minus;
        mult += std::max(sz, static_cast<int>(points[j].departing.size()));
      }
      e.multiplicity = mult;
      e.inertia_defined = defined;
      if (departure) {
        e.inertia_before = total;
      } else {
        e.inertia_after = total;
      }
      e.kind = label(e.lambda0, members.size() > 1 ? mult / static_cast<int>(members.size()) : mult, p, tol);
      if (members.size() > 1) e.kind = EventKind::QKC;
      events.push_back(e);
    }
  }

  // An arrival immediately undone at the same point with no spread along the boundary is a
  // transverse crossing (e.g. a real pair r, 1/r passing through 1), not a bifurcation.
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.t0 < b.t0; });
  const double span = p.t_end - p.t_begin;
  for (size_t i = 0; i < events.size(); ++i) {
    if (events[i].direction != Direction::Arrival) continue;
    for (size_t j = i + 1; j < events.size(); ++j) {
      const BifurcationEvent& a = events[i];
      const BifurcationEvent& d = events[j];
      const double gap = d.t0 - a.t0;
      if (gap > 1e-4 * span) break;
      if (d.direction != Direction::Departure || d.multiplicity != a.multiplicity ||
          std::abs(d.lambda0 - a.lambda0) > 1e-4)
        continue;
      const double tm = 0.5 * (a.t0 + d.t0);
      Vec ev = eigenvalues(p.at(tm));
      double spread = 0.0;
      for (Eigen::Index k = 0; k < ev.size(); ++k) {
        const double dist = std::abs(ev(k) - a.lambda0);
        if (dist <= 1e-3) spread = std::max(spread, dist);
      }
      if (spread > std::max(1e-6, 100.0 * gap)) continue;
      BifurcationEvent e = a;
      e.kind = EventKind::PassThrough;
      e.direction = Direction::Along;
      e.t0 = tm;
      e.bracket_hi = d.bracket_hi;
      e.inertia_before = a.inertia_after;
      e.inertia_defined = a.inertia_defined && d.inertia_defined;
      events.erase(events.begin() + static_cast<std::ptrdiff_t>(j));
      events[i] = e;
      break;
    }
  }

  // Collisions accepted at the minimum step that never left the boundary.
  for (const auto& [tc, centre] : tr.collisions) {
    if (!on_boundary(centre, p.kind, tol)) continue;
    bool near_event = std::any_of(events.begin(), events.end(), [&](const BifurcationEvent& e) {
      return e.kind != EventKind::PassThrough && std::abs(e.t0 - tc) <= 1e-4 * (p.t_end - p.t_begin);
    });
    bool duplicate = std::any_of(events.begin(), events.end(), [&](const BifurcationEvent& e) {
      return e.kind == EventKind::PassThrough && std::abs(e.t0 - tc) <= 1e-4 && std::abs(e.lambda0 - centre) <= 1e-3;
    });
    if (near_event || duplicate) continue;
    BifurcationEvent e;
    e.kind = EventKind::PassThrough;
    e.direction = Direction::Along;
    e.t0 = tc;
    e.bracket_lo = tc;
    e.bracket_hi = tc + tol.min_step;
    e.lambda0 = project_to_boundary(centre, p.kind);
    const double r = 1e-3;
    const double tb = std::max(p.t_begin, tc - 1e-4), ta = std::min(p.t_end, tc + 1e-4);
    Mat before = p.at(tb), after = p.at(ta);
    int sz = 0;
    bool d1 = group_inertia(before, eigenvalues(before), e.lambda0, r, p.K, tol, e.inertia_before, &sz);
    bool d2 = group_inertia(after, eigenvalues(after), e.lambda0, r, p.K, tol, e.inertia_after);
    e.inertia_defined = d1 && d2;
    e.multiplicity = sz;
    events.push_back(e);
  }
  std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.t0 < b.t0; });
  return events;
}

StabilityReport verify_krein_stability(const std::vector<BifurcationEvent>& events) {
  StabilityReport r;
  for (const auto& e : events) {
    if (e.direction != Direction::Departure) continue;
    const InertiaPair& nu = e.inertia_before;
    if (!e.inertia_defined || nu.nu_plus < 1 || nu.nu_minus < 1) {
      r.ok = false;
      std::ostringstream os;
      os << event_name(e.kind) << " at t = " << e.t0 << " departs from inertia (" << nu.nu_plus << ","
         << nu.nu_minus << ")";
      r.violations.push_back(os.str());
    }
  }
  return r;
}

void write_csv(std::ostream& os, const TrackResult& tr, OperatorKind kind) {
  os << "t,track_id,re,im,nu_plus,nu_minus,region\n";
  os.precision(17);
  for (size_t k = 0; k < tr.ts.size(); ++k)
    for (const auto& trk : tr.tracks) {
      const TrackSample& s = trk.samples[k];
      std::string region;
      if (s.on_boundary) {
        region = kind == OperatorKind::Unitary ? "circle" : "axis";
      } else if (kind == OperatorKind::Unitary) {
        region = std::abs(s.value) < 1.0 ? "inside" : "outside";
      } else {
        region = s.value.imag() > 0 ? "upper" : "lower";
      }
      os << s.t << ',' << trk.id << ',' << s.value.real() << ',' << s.value.imag() << ',' << s.nu.nu_plus << ','
         << s.nu.nu_minus << ',' << region << '\n';
    }
}

OperatorPath random_member_path(const KreinStructure& K, const RealStructure* R, OperatorKind kind,
                                std::uint64_t seed, double scale) {
  Mat h0, h1;
  if (R) {
    h0 = random_member(*R, OperatorKind::Hermitian, seed, scale);
    h1 = random_member(*R, OperatorKind::Hermitian, seed ^ 0x9e3779b97f4a7c15ULL, scale);
  } else {
    h0 = scale * random_j_hermitian(K, seed);
    h1 = scale * random_j_hermitian(K, seed ^ 0x9e3779b97f4a7c15ULL);
  }
  OperatorPath p;
  p.name = "random";
  p.K = K;
  if (R) p.R = *R;
  p.kind = kind;
  p.sampler = [h0, h1, kind](double t) -> Mat {
    Mat h = (1.0 - t) * h0 + t * h1;
    if (kind == OperatorKind::Hermitian) return h;
    return matrix_exp(cplx(0, 1) * h);
  };
  return p;
}

}  // namespace kreinlab
