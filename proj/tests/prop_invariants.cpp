// Hand-rolled property checks: each property runs over a range of seeds and reports the first
// failing seed so it can be replayed.
#include <cstdio>
#include <functional>
#include <optional>
#include <string>

#include "kreinlab/cayley.hpp"
#include "kreinlab/io.hpp"
#include "kreinlab/realsym.hpp"
#include "kreinlab/retraction.hpp"
#include "test_util.hpp"

using namespace kt;

namespace {

using Outcome = std::optional<std::string>;  // nullopt = holds
using Property = std::function<Outcome(std::uint64_t seed)>;

int g_failures = 0;

void check(const std::string& name, int trials, const Property& prop) {
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(k);
    Outcome o;
    try {
      o = prop(seed);
    } catch (const std::exception& e) {
      o = std::string("threw: ") + e.what();
    }
    if (o) {
      std::printf("FAIL %s (seed %llu): %s\n", name.c_str(), static_cast<unsigned long long>(seed), o->c_str());
      ++g_failures;
      return;
    }
  }
  std::printf("PASS %s (%d trials)\n", name.c_str(), trials);
}

Outcome expect(bool ok, const std::string& what) { return ok ? Outcome{} : Outcome{what}; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

KreinStructure dims_from(std::uint64_t seed, int max_dim) {
  Rng rng(seed);
  const int d = 1 + static_cast<int>(rng() % max_dim);
  const int p = static_cast<int>(rng() % (d + 1));
  return make_standard(p, d - p);
}

// Largest distance from an eigenvalue to the nearest image of the multiset under f.
double reflection_gap(const Vec& ev, const std::function<cplx(cplx)>& f) {
  std::vector<cplx> a = to_vector(ev), b;
  for (cplx z : a) b.push_back(f(z));
  double worst = 0.0;
  for (cplx z : a) {
    double d = 1e300;
    for (cplx w : b) d = std::min(d, std::abs(z - w));
    worst = std::max(worst, d);
  }
  return worst;
}

const std::vector<RealKind> kKinds{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

}  // namespace

int main() {
  check("eig reconstruction", 30, [](std::uint64_t s) {
    Rng rng(s);
    Mat a = random_complex(12, 12, rng);
    EigenDecomposition e = eig(a);
    return expect(e.residual <= 1e-8 * norm(a), "residual " + num(e.residual));
  });

  check("sylvester inertia is congruence invariant", 30, [](std::uint64_t s) {
    Rng rng(s);
    Mat a = random_hermitian(8, rng);
    Mat c = random_complex(8, 8, rng);
    Inertia x = sylvester_inertia(a, 1e-8), y = sylvester_inertia(c.adjoint() * a * c, 1e-8);
    return expect(x.plus == y.plus && x.minus == y.minus && x.zero == y.zero, "inertia changed");
  });

  check("matrix_exp(A) matrix_exp(-A) = 1", 30, [](std::uint64_t s) {
    Rng rng(s);
    Mat a = random_complex(8, 8, rng);
    const double r = norm(matrix_exp(a) * matrix_exp(-a) - identity(8));
    return expect(r <= 1e-9, "residual " + num(r));
  });

  check("J-unitaries form a group", 30, [](std::uint64_t s) {
    KreinStructure K = dims_from(s, 10);
    Mat a = random_j_unitary(K, s), b = random_j_unitary(K, s + 7);
    Mat inv = K.J * a.adjoint() * K.J;
    return expect(is_j_unitary(a * b, K, 1e-8).ok && is_j_unitary(inv, K, 1e-8).ok &&
                      norm(inv * a - identity(K.dim())) <= 1e-8,
                  "product or inverse left the group");
  });

  check("J-hermitians are a real vector space", 30, [](std::uint64_t s) {
    KreinStructure K = dims_from(s, 10);
    Mat h = 0.7 * random_j_hermitian(K, s) - 2.5 * random_j_hermitian(K, s + 3);
    return expect(is_j_hermitian(h, K, 1e-10).ok, "combination not J-hermitian");
  });

  check("spectral reflection", 50, [](std::uint64_t s) {
    KreinStructure K = dims_from(s, 10);
    const double gu =
        reflection_gap(eigenvalues(random_j_unitary(K, s)), [](cplx z) { return 1.0 / std::conj(z); });
    const double gh = reflection_gap(eigenvalues(random_j_hermitian(K, s)), [](cplx z) { return std::conj(z); });
    return expect(gu <= 1e-6 && gh <= 1e-6, "gaps " + num(gu) + ", " + num(gh));
  });

  check("riesz singleton equals the eigenvector projector", 20, [](std::uint64_t s) {
    Rng rng(s);
    Mat a = random_complex(6, 6, rng);
    EigenDecomposition r = eig(a), l = eig(a.adjoint());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < r.values.size(); ++i) {
      Eigen::Index j = 0;
      for (Eigen::Index k = 1; k < l.values.size(); ++k)
        if (std::abs(std::conj(l.values(k)) - r.values(i)) < std::abs(std::conj(l.values(j)) - r.values(i))) j = k;
      Vec v = r.vectors.col(i), w = l.vectors.col(j);
      Mat oracle = v * w.adjoint() / (w.adjoint() * v)(0, 0);
      worst = std::max(worst, norm(riesz_projection(a, std::vector<cplx>{r.values(i)}) - oracle));
    }
    return expect(worst <= 1e-7, "difference " + num(worst));
  });

  check("boundary cluster forms are nondegenerate", 50, [](std::uint64_t s) {
    KreinStructure K = dims_from(s, 10);
    double smallest = 1e300;
    for (OperatorKind kind : {OperatorKind::Unitary, OperatorKind::Hermitian}) {
      Mat a = kind == OperatorKind::Unitary ? random_j_unitary(K, s) : random_j_hermitian(K, s);
      for (const auto& c : partition(a).clusters) {
        const bool on = kind == OperatorKind::Unitary ? std::abs(std::abs(c.center) - 1.0) < 1e-6
                                                      : std::abs(c.center.imag()) < 1e-6;
        if (!on) continue;
        RealVec f = herm_eig(c.frame.adjoint() * K.J * c.frame).values;
        smallest = std::min(smallest, f.cwiseAbs().minCoeff());
      }
    }
    return expect(smallest >= 1e-8, "form eigenvalue " + num(smallest));
  });

  check("Sig is constant along random paths", 20, [](std::uint64_t s) {
    KreinStructure K = dims_from(s, 8);
    for (OperatorKind kind : {OperatorKind::Unitary, OperatorKind::Hermitian}) {
      OperatorPath p = random_member_path(K, nullptr, kind, s);
      for (int k = 0; k <= 10; ++k)
        if (global_signature(p.at(0.1 * k), K, kind).global_sig != K.n_plus - K.n_minus)
          return Outcome{"Sig moved at t = " + num(0.1 * k)};
    }
    return Outcome{};
  });

  check("inertia reflection under Real symmetry", 25, [](std::uint64_t s) {
    for (RealKind k : kKinds) {
      RealStructure R = make_real_structure(k, 2, 2);
      for (OperatorKind kind : {OperatorKind::Unitary, OperatorKind::Hermitian}) {
        InvariantReport rep = global_signature(random_member(R, kind, s), R.K, kind);
        for (const auto& row : rep.rows) {
          if (!row.on_boundary) continue;
          const cplx m = real_reflection(row.eigenvalue, kind);
          const ClusterRow* hit = nullptr;
          for (const auto& other : rep.rows)
            if (std::abs(other.eigenvalue - m) < 1e-6) hit = &other;
          if (!hit) return Outcome{"no reflected cluster"};
          InertiaPair want = k.tau == 1 ? row.nu : InertiaPair{row.nu.nu_minus, row.nu.nu_plus};
          if (!(hit->nu == want)) return Outcome{"reflected inertia differs"};
        }
      }
    }
    return Outcome{};
  });

  check("cayley keeps Real members", 25, [](std::uint64_t s) {
    Rng rng(s);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (RealKind k : kKinds) {
      RealStructure R = make_real_structure(k, 2, 2);
      for (double zeta : {1.0, -1.0}) {
        CayleyParams p{cplx(0.0, u(rng)), zeta};
        Mat t = cayley_op(random_member(R, OperatorKind::Hermitian, s), R.K, p);
        Membership m = is_member(t, R, OperatorKind::Unitary, 1e-8);
        if (!m.ok) return Outcome{"membership residual " + num(m.residual)};
      }
    }
    return Outcome{};
  });

  check("cayley maps the extended real line onto the circle", 10, [](std::uint64_t s) {
    Rng rng(s);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CayleyParams p{cplx(u(rng), 0.5 + std::abs(u(rng))), std::polar(1.0, 3.0 * u(rng))};
    double prev = -1.0;
    for (int k = 0; k <= 400; ++k) {
      const double x = std::tan(M_PI * (k / 401.0 - 0.5 + 1.0 / 802.0));
      const cplx w = cayley_scalar(p, cplx(x, 0.0));
      if (std::abs(std::abs(w) - 1.0) > 1e-10) return Outcome{"off the circle at " + num(x)};
      if (std::abs(cayley_inv_scalar(p, w) - x) > 1e-10 * (1.0 + x * x)) return Outcome{"inverse at " + num(x)};
      // Injective: the argument relative to the image of infinity increases strictly.
      double a = std::arg(w / p.zeta);
      if (a <= 0.0) a += 2.0 * M_PI;
      if (a <= prev) return Outcome{"not monotone at " + num(x)};
      prev = a;
    }
    return expect(std::abs(cayley_scalar(p, SpherePoint::infinity()).value - p.zeta) <= 1e-12, "infinity");
  });

  check("reversed paths give mirrored events", 1, [](std::uint64_t) {
    Direction flip[3] = {Direction::Arrival, Direction::Departure, Direction::Along};
    for (const auto& name : scenario_names()) {
      Scenario s = scenario_library(name);
      auto fwd = detect_events(track(s.path, 41), s.path);
      OperatorPath back = reversed(s.path);
      auto bwd = detect_events(track(back, 41), back);
      if (fwd.size() != bwd.size()) return Outcome{name + ": event count differs"};
      for (size_t i = 0; i < fwd.size(); ++i) {
        const auto& f = fwd[i];
        const auto& b = bwd[fwd.size() - 1 - i];
        const double mirrored = s.path.t_begin + s.path.t_end - f.t0;
        if (b.kind != f.kind || b.multiplicity != f.multiplicity || std::abs(b.t0 - mirrored) > 1e-4 ||
            b.direction != flip[static_cast<int>(f.direction)])
          return Outcome{name + ": event " + std::to_string(i) + " not mirrored"};
      }
    }
    return Outcome{};
  });

  check("Sig2 is constant along kind (-1,-1) paths", 10, [](std::uint64_t s) {
    RealStructure R = make_real_structure({-1, -1}, 3, 3);
    OperatorPath p = random_member_path(R.K, &R, OperatorKind::Unitary, s);
    const int first = sig2(p.at(0.0), R, OperatorKind::Unitary);
    for (int k = 1; k <= 10; ++k)
      if (sig2(p.at(0.1 * k), R, OperatorKind::Unitary) != first) return Outcome{"Sig2 moved"};
    return Outcome{};
  });

  check("after the lift the spectral subspaces are Lagrangian", 20, [](std::uint64_t s) {
    KreinStructure K = make_standard(3, 3);
    Mat flat = spectral_flatten(random_j_hermitian(K, s), K, nullptr).at(1.0);
    LiftResult lift = lift_kernel(flat, K, nullptr);
    if (lift.kernel_dim != 0) return Outcome{"kernel survived the lift"};
    LagrangianFrames f = lagrangian_frames(lift.endpoint, K);
    return expect(f.isotropy_residual <= 1e-9 && numerical_rank(f.P_plus, 1e-8) == 3 &&
                      numerical_rank(f.P_minus, 1e-8) == 3,
                  "isotropy " + num(f.isotropy_residual));
  });

  check("unequal inertia leaves a definite kernel of size |N+ - N-|", 20, [](std::uint64_t s) {
    Rng rng(s);
    const int p = 1 + static_cast<int>(rng() % 4), q = 1 + static_cast<int>(rng() % 4);
    KreinStructure K = make_standard(p, q);
    Mat h = random_j_hermitian(K, s);
    Mat flat = spectral_flatten(h, K, nullptr).at(1.0);
    LiftResult lift = lift_kernel(flat, K, nullptr);
    const int want = std::abs(p - q);
    const InertiaPair nu = p >= q ? InertiaPair{want, 0} : InertiaPair{0, want};
    return expect(lift.kernel_dim == want && lift.kernel_inertia == nu &&
                      global_signature(h, K, OperatorKind::Hermitian).global_sig == p - q,
                  "kernel " + std::to_string(lift.kernel_dim) + " for (" + std::to_string(p) + "," +
                      std::to_string(q) + ")");
  });

  check("fixed seeds give identical output", 5, [](std::uint64_t s) {
    KreinStructure K = make_standard(2, 2);
    if (norm(random_j_unitary(K, s) - random_j_unitary(K, s)) != 0.0) return Outcome{"generator"};
    Scenario sc = scenario_library("qkc");
    const std::string a = to_json(detect_events(track(sc.path, 41), sc.path)).dump();
    const std::string b = to_json(detect_events(track(sc.path, 41), sc.path)).dump();
    return expect(a == b, "event JSON differs");
  });

  std::printf("%d failing properties\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
