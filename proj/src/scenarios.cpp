#include <cmath>

#include "kreinlab/cayley.hpp"
#include "kreinlab/errors.hpp"
#include "kreinlab/homotopy.hpp"

namespace kreinlab {

namespace {

Mat kc_block(double t) {
  Mat h(2, 2);
  h << t, 1.0, -1.0, -t;
  return h;
}

Mat mediated_block(double t) {
  Mat x = Mat::Zero(3, 3);
  x(0, 1) = 1.0;
  x(1, 0) = -1.0;
  x(0, 2) = t;
  x(2, 0) = t;
  return cplx(0, 1) * x;
}

// diag(h, -conj h) rotated so that conj(H) = -H, then reordered to J = diag(1,1,-1,-1).
Mat quadruple_block(double s, double lambda0) {
  Mat h(2, 2);
  h << lambda0 + s, 1.0, -1.0, lambda0 - s;
  Mat hp = Mat::Zero(4, 4);
  hp.topLeftCorner(2, 2) = h;
  hp.bottomRightCorner(2, 2) = -h.conjugate();
  Mat q2(2, 2);
  q2 << 1.0, 1.0, cplx(0, -1), cplx(0, 1);
  q2 /= std::sqrt(2.0);
  Mat q = Mat::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) q.block(2 * a, 2 * b, 2, 2) = q2(a, b) * Mat::Identity(2, 2);
  Mat big = q * hp * q.adjoint();
  const int order[4] = {0, 2, 1, 3};
  Mat out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = big(order[i], order[j]);
  return out;
}

OperatorPath make(std::string name, std::function<Mat(double)> f, const KreinStructure& K,
                  std::optional<RealStructure> R, OperatorKind kind, double a, double b) {
  OperatorPath p;
  p.name = std::move(name);
  p.sampler = std::move(f);
  p.K = K;
  p.R = std::move(R);
  p.kind = kind;
  p.t_begin = a;
  p.t_end = b;
  return p;
}

// z defaults to i; the library passes 2i where the hermitian path meets -i.
OperatorPath cayley_path(std::string name, const OperatorPath& h, cplx zeta, cplx z = cplx(0, 1)) {
  CayleyParams cp;
  cp.z = z;
  cp.zeta = zeta;
  auto f = h.sampler;
  KreinStructure K = h.K;
  return make(std::move(name), [f, K, cp](double t) { return cayley_op(f(t), K, cp); }, K, h.R,
              OperatorKind::Unitary, h.t_begin, h.t_end);
}

Scenario finish(OperatorPath p, std::vector<ExpectedEvent> expected) {
  Scenario s;
  s.group = classify_group(p.R ? &*p.R : nullptr, p.K).group;
  s.path = std::move(p);
  s.expected = std::move(expected);
  return s;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"finex", "kc2x2", "kc2x2h", "qkc", "tb", "mtb", "pd", "mpd"}; }

Scenario scenario_library(const std::string& name, const ScenarioParams& params) {
  const cplx zero(0.0, 0.0), one(1.0, 0.0), minus_one(-1.0, 0.0);
  if (name == "finex") {
    if (std::abs(params.sigma) != 1 || std::abs(params.sigma_prime) != 1)
      fail(ErrorCode::InvalidInput, "sigma and sigma' must be +-1");
    const double s = params.sigma, sp = params.sigma_prime;
    auto f = [s, sp](double t) {
      Mat m(2, 2);
      m << s * std::cosh(t), sp * std::sinh(t), -sp * std::sinh(t), -s * std::cosh(t);
      return m;
    };
    return finish(make("finex", f, make_standard(1, 1), make_real_structure({1, 1}, 1, 1), OperatorKind::Unitary, 0, 1),
                  {});
  }
  if (name == "kc2x2")
    return finish(make("kc2x2", kc_block, make_standard(1, 1), std::nullopt, OperatorKind::Hermitian, 0, 2),
                  {{EventKind::KC, 1.0, zero, 2}});
  if (name == "kc2x2h")
    return finish(make("kc2x2h", kc_block, make_standard(1, 1), make_real_structure({1, -1}, 1, 1),
                       OperatorKind::Hermitian, 0, 2),
                  {{EventKind::TB, 1.0, zero, 2}});
  if (name == "tb" || name == "pd") {
    OperatorPath h = make(name, kc_block, make_standard(1, 1), make_real_structure({1, -1}, 1, 1),
                          OperatorKind::Hermitian, 0, 2);
    const bool tb = name == "tb";
    return finish(cayley_path(name, h, tb ? minus_one : one, cplx(0, 2)),
                  {{tb ? EventKind::TB : EventKind::PD, 1.0, tb ? one : minus_one, 2}});
  }
  if (name == "mtb" || name == "mpd") {
    OperatorPath h = make(name, mediated_block, make_standard(2, 1), make_real_structure({1, 1}, 2, 1),
                          OperatorKind::Hermitian, 0, 2);
    const bool mtb = name == "mtb";
    return finish(cayley_path(name, h, mtb ? minus_one : one, cplx(0, 2)),
                  {{mtb ? EventKind::MTB : EventKind::MPD, 1.0, mtb ? one : minus_one, 3}});
  }
  if (name == "qkc") {
    const double l0 = params.lambda0;
    if (!(std::abs(l0) > 1e-3)) fail(ErrorCode::InvalidInput, "qkc needs a collision point away from 0");
    OperatorPath h = make("qkc", [l0](double s) { return quadruple_block(s, l0); }, make_standard(2, 2),
                          make_real_structure({1, 1}, 2, 2), OperatorKind::Hermitian, 0, 2);
    cplx c = cayley_scalar(CayleyParams{}, cplx(l0, 0.0));
    if (c.imag() < 0) c = std::conj(c);
    std::vector<ExpectedEvent> expected{{EventKind::QKC, 1.0, c, 4}};
    // The real pairs lambda0 +- r and -lambda0 -+ r cross at 0, which maps to -1.
    const double s_cross = std::sqrt(1.0 + l0 * l0);
    if (s_cross < 2.0) expected.push_back({EventKind::PassThrough, s_cross, minus_one, 2});
    return finish(cayley_path("qkc", h, one), std::move(expected));
  }
  fail(ErrorCode::UnknownScenario, "unknown scenario " + name);
}

}  // namespace kreinlab
