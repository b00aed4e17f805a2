#include "kreinlab/verify.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "kreinlab/cayley.hpp"
#include "kreinlab/errors.hpp"
#include "kreinlab/random.hpp"

namespace kreinlab {

void CheckResult::record(bool ok, double residual, const std::string& note) {
  ++runs;
  if (std::isfinite(residual)) max_residual = std::max(max_residual, residual);
  if (!ok) {
    ++failures;
    if (notes.size() < 5 && !note.empty()) notes.push_back(note);
  }
}

bool SuiteResult::passed() const {
  for (const auto& c : checks)
    if (c.failures > 0 || c.runs == 0) return false;
  return !checks.empty();
}

std::vector<std::string> suite_names() {
  return {"riesz",   "signature-law", "cayley",        "kramers", "constraints", "taxonomy",
          "library", "retraction",    "factorization", "index",   "finex"};
}

int svd_index(const Mat& a, double rank_tol) {
  if (a.size() == 0) return static_cast<int>(a.cols()) - static_cast<int>(a.rows());
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * std::max(1.0, s(0))) ++rank;
  return (static_cast<int>(a.cols()) - rank) - (static_cast<int>(a.rows()) - rank);
}

Mat random_rank_matrix(int m, int n, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_complex(m, rank, rng) * random_complex(rank, n, rng);
}

Mat random_class_unitary(int n, UnitaryClass cls, std::uint64_t seed) {
  Rng rng(seed);
  Mat h;
  if (cls == UnitaryClass::Symmetric) {
    Mat r = random_real(n, n, rng);
    h = 0.5 * (r + r.transpose());
  } else {
    const int k = n / 2;
    Mat s = Mat::Zero(n, n);
    s.topRightCorner(k, k) = -Mat::Identity(k, k);
    s.bottomLeftCorner(k, k) = Mat::Identity(k, k);
    Mat h0 = random_hermitian(n, rng);
    h = 0.5 * (h0 + s.adjoint() * h0.transpose() * s);
  }
  // Eigen-angles of h kept in (-(pi - 0.1), pi - 0.1) so -exp(ih) avoids 1.
  HermitianEigen he = herm_eig(0.5 * (h + h.adjoint()));
  double r = std::max(std::abs(he.values(0)), std::abs(he.values(he.values.size() - 1)));
  std::uniform_real_distribution<double> u(0.2, M_PI - 0.1);
  if (r > 0) h *= u(rng) / r;
  return -matrix_exp(cplx(0, 1) * h);
}

namespace {

using Clock = std::chrono::steady_clock;

struct KindCase {
  const char* label;
  std::optional<RealKind> kind;
  std::vector<std::pair<int, int>> dims;
};

std::vector<KindCase> real_kinds() {
  return {{"(1,1)", RealKind{1, 1}, {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}}},
          {"(1,-1)", RealKind{1, -1}, {{1, 1}, {2, 2}}},
          {"(-1,1)", RealKind{-1, 1}, {{2, 2}, {4, 2}, {2, 0}}},
          {"(-1,-1)", RealKind{-1, -1}, {{1, 1}, {2, 2}}}};
}

std::string what(const std::exception& e) { return e.what(); }

template <class F>
void guarded(CheckResult& c, const std::string& label, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    c.record(false, std::numeric_limits<double>::infinity(), label + ": " + error_name(e.code()) + " " + what(e));
  }
}

SuiteResult riesz_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  CheckResult idem{"idempotence"}, comm{"commutation"}, sum{"completeness"}, tr{"trace"};
  for (int k = 0; k < n; ++k) {
    Mat t = random_complex(10, 10, rng);
    guarded(idem, "instance " + std::to_string(k), [&] {
      ClusterPartition p = partition(t, tol);
      const double tn = norm(t);
      Mat total = Mat::Zero(10, 10);
      for (const auto& c : p.clusters) {
        double e1 = norm(c.projection * c.projection - c.projection);
        double e2 = norm(c.projection * t - t * c.projection);
        double trv = c.projection.trace().real();
        double e3 = std::abs(trv - std::round(trv));
        idem.record(e1 <= 1e-8, e1, "instance " + std::to_string(k));
        comm.record(e2 <= 1e-8 * tn, e2 / tn, "instance " + std::to_string(k));
        tr.record(e3 <= 1e-6 && std::lround(trv) == c.multiplicity, e3, "instance " + std::to_string(k));
        total += c.projection;
      }
      double e4 = norm(total - Mat::Identity(10, 10));
      sum.record(e4 <= 1e-7, e4, "instance " + std::to_string(k));
    });
  }
  r.checks = {idem, comm, sum, tr};
  return r;
}

SuiteResult signature_law_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  CheckResult law{"sig-equals-dimension-difference"};
  std::uniform_int_distribution<int> total(1, 16);
  for (int k = 0; k < n; ++k) {
    const int d = total(rng);
    const int np = std::uniform_int_distribution<int>(0, d)(rng);
    KreinStructure K = make_standard(np, d - np);
    Mat h = random_j_hermitian(K, rng());
    const std::string label = "(" + std::to_string(np) + "," + std::to_string(d - np) + ")";
    guarded(law, label, [&] {
      InvariantReport rep = global_signature(h, K, OperatorKind::Hermitian, tol);
      law.record(rep.global_sig == np - (d - np), std::abs(rep.global_sig - (2 * np - d)), label);
    });
  }
  r.checks = {law};
  return r;
}

SuiteResult cayley_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  CheckResult sig{"sig-preserved"}, inertia{"cluster-inertia-preserved"};
  std::uniform_int_distribution<int> total(1, 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    const int d = total(rng);
    const int np = std::uniform_int_distribution<int>(0, d)(rng);
    KreinStructure K = make_standard(np, d - np);
    Mat h = random_j_hermitian(K, rng());
    CayleyParams p;
    p.z = cplx(2.0 * u(rng) - 1.0, 0.5 + 1.5 * u(rng));
    p.zeta = std::polar(1.0, 2.0 * M_PI * u(rng));
    guarded(sig, "instance " + std::to_string(k), [&] {
      TransportReport tr = transport_report(h, K, p, tol);
      sig.record(tr.sig_equal, std::abs(tr.hermitian.global_sig - tr.unitary.global_sig),
                 "instance " + std::to_string(k));
      inertia.record(tr.inertia_equal, 0.0, "instance " + std::to_string(k));
    });
  }
  r.checks = {sig, inertia};
  return r;
}

SuiteResult kramers_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  for (const auto& kc : real_kinds()) {
    if (kc.kind->eta != -1) continue;
    CheckResult c{std::string("kramers ") + kc.label};
    CheckResult m{std::string("membership ") + kc.label};
    for (int k = 0; k < n; ++k) {
      auto [np, nm] = kc.dims[k % kc.dims.size()];
      RealStructure R = make_real_structure(*kc.kind, np, nm);
      for (OperatorKind ok : {OperatorKind::Unitary, OperatorKind::Hermitian}) {
        Mat a = random_member(R, ok, rng());
        const std::string label = std::string(kind_name(ok)) + " instance " + std::to_string(k);
        guarded(c, label, [&] {
          double res = is_member(a, R, ok, 1.0).residual;
          m.record(res <= tol.membership, res, label);
          KramersResult kr = kramers_check(a, R, ok, tol);
          c.record(kr.ok, 0.0, label + (kr.diagnostics.empty() ? "" : ": " + kr.diagnostics.front()));
        });
      }
    }
    r.checks.push_back(c);
    r.checks.push_back(m);
  }
  return r;
}

int sec_of(const Mat& t, const RealStructure& R, const ToleranceConfig& tol) {
  return *full_invariant_report(t, R, OperatorKind::Unitary, tol).sec;
}

SuiteResult constraints_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  for (const auto& kc : real_kinds()) {
    CheckResult c{std::string("kind constraint ") + kc.label};
    for (int k = 0; k < n; ++k) {
      auto [np, nm] = kc.dims[k % kc.dims.size()];
      RealStructure R = make_real_structure(*kc.kind, np, nm);
      Mat t = random_member(R, OperatorKind::Unitary, rng());
      const std::string label = "instance " + std::to_string(k);
      guarded(c, label, [&] {
        InvariantReport rep = full_invariant_report(t, R, OperatorKind::Unitary, tol);
        bool ok = true;
        const RealKind kd = *kc.kind;
        if (kd == RealKind{1, -1}) ok = rep.global_sig == 0;
        if (kd == RealKind{-1, 1}) ok = rep.global_sig % 2 == 0;
        if (kd == RealKind{-1, -1}) ok = rep.global_sig == 0 && rep.sig2 && (*rep.sig2 == 0 || *rep.sig2 == 1);
        if (kd == RealKind{1, 1}) ok = rep.sec.has_value();
        c.record(ok, 0.0, label);
      });
    }
    r.checks.push_back(c);
  }
  CheckResult pc{"sec path-constant (1,1)"};
  const std::vector<std::pair<int, int>> dims{{2, 1}, {1, 2}, {3, 2}, {2, 2}, {3, 0}};
  for (int k = 0; k < 20; ++k) {
    auto [np, nm] = dims[k % dims.size()];
    RealStructure R = make_real_structure({1, 1}, np, nm);
    OperatorPath p = random_member_path(R.K, &R, OperatorKind::Unitary, rng());
    const std::string label = "path " + std::to_string(k);
    guarded(pc, label, [&] {
      const int s0 = sec_of(p.at(0.0), R, tol);
      bool ok = true;
      for (int j = 1; j <= 40; ++j) ok = ok && sec_of(p.at(j / 40.0), R, tol) == s0;
      pc.record(ok, 0.0, label);
    });
  }
  r.checks.push_back(pc);
  return r;
}

bool allowed(EventKind e, const std::optional<RealKind>& kind) {
  if (e == EventKind::PassThrough) return true;
  if (!kind) return e == EventKind::KC;
  if (kind->eta == -1) return e == EventKind::QKC;
  if (kind->tau == 1) return e == EventKind::QKC || e == EventKind::MTB || e == EventKind::MPD;
  return e == EventKind::QKC || e == EventKind::TB || e == EventKind::PD;
}

SuiteResult taxonomy_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  std::vector<KindCase> cases = real_kinds();
  cases.insert(cases.begin(), KindCase{"none", std::nullopt, {{1, 1}, {2, 1}, {2, 2}}});
  for (const auto& kc : cases) {
    CheckResult c{std::string("allowed events ") + kc.label};
    CheckResult st{std::string("krein stability ") + kc.label};
    std::map<std::string, int> seen;
    for (int k = 0; k < n; ++k) {
      auto [np, nm] = kc.dims[k % kc.dims.size()];
      KreinStructure K = make_standard(np, nm);
      std::optional<RealStructure> R;
      if (kc.kind) R = make_real_structure(*kc.kind, np, nm);
      OperatorPath p = random_member_path(K, R ? &*R : nullptr, OperatorKind::Unitary, rng());
      const std::string label = "path " + std::to_string(k);
      guarded(c, label, [&] {
        TrackResult tr = track(p, 21, tol);
        auto events = detect_events(tr, p, tol);
        bool ok = true;
        std::string bad;
        for (const auto& e : events) {
          ++seen[event_name(e.kind)];
          if (!allowed(e.kind, kc.kind)) {
            ok = false;
            std::ostringstream os;
            os << event_name(e.kind) << " at t=" << e.t0 << " lambda0=" << e.lambda0 << " mult=" << e.multiplicity;
            bad = os.str();
          }
        }
        c.record(ok, 0.0, label + " " + bad);
        StabilityReport sr = verify_krein_stability(events);
        st.record(sr.ok, 0.0, label + (sr.violations.empty() ? "" : " " + sr.violations.front()));
      });
    }
    std::ostringstream os;
    for (const auto& [name, count] : seen) os << name << "=" << count << " ";
    c.notes.insert(c.notes.begin(), "observed: " + os.str());
    r.checks.push_back(c);
    r.checks.push_back(st);
  }
  return r;
}

SuiteResult library_suite(const ToleranceConfig& tol) {
  SuiteResult r;
  for (const auto& name : scenario_names()) {
    CheckResult c{"scenario " + name};
    guarded(c, name, [&] {
      Scenario s = scenario_library(name);
      TrackResult tr = track(s.path, 41, tol);
      auto events = detect_events(tr, s.path, tol);
      bool ok = events.size() == s.expected.size();
      double worst = 0.0;
      for (size_t i = 0; ok && i < events.size(); ++i) {
        const auto& e = events[i];
        const auto& x = s.expected[i];
        double dt = std::abs(e.t0 - x.t0), dl = std::abs(e.lambda0 - x.lambda0);
        worst = std::max({worst, dt, dl});
        ok = e.kind == x.kind && e.multiplicity == x.multiplicity && dt <= 1e-4 && dl <= 1e-4;
      }
      ok = ok && verify_krein_stability(events).ok;
      std::ostringstream os;
      os << name << ": " << events.size() << " events";
      for (const auto& e : events) os << " " << event_name(e.kind) << "@" << e.t0 << " m=" << e.multiplicity;
      c.record(ok, worst, os.str());
    });
    r.checks.push_back(c);
  }
  return r;
}

SuiteResult retraction_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  std::vector<KindCase> cases = {{"none", std::nullopt, {}},
                                 {"(1,1)", RealKind{1, 1}, {}},
                                 {"(1,-1)", RealKind{1, -1}, {}},
                                 {"(-1,1)", RealKind{-1, 1}, {}},
                                 {"(-1,-1)", RealKind{-1, -1}, {}}};
  for (const auto& kc : cases) {
    CheckResult mem{std::string("membership ") + kc.label}, sig{std::string("sig preserved ") + kc.label},
        spec{std::string("terminal spectrum ") + kc.label}, cls{std::string("terminal class ") + kc.label};
    for (int k = 0; k < n; ++k) {
      int m = 1 + k % 6;
      if (kc.kind && *kc.kind == RealKind{-1, 1}) m = 2 * (1 + k % 3);
      KreinStructure K = make_standard(m, m);
      std::optional<RealStructure> R;
      if (kc.kind) R = make_real_structure(*kc.kind, m, m);
      Mat h = R ? random_member(*R, OperatorKind::Hermitian, rng()) : random_j_hermitian(K, rng());
      const std::string label = "instance " + std::to_string(k) + " dims (" + std::to_string(m) + "," +
                                std::to_string(m) + ")";
      guarded(mem, label, [&] {
        RetractionTrace t = retract_to_model(h, K, R ? &*R : nullptr, tol);
        mem.record(t.max_membership <= 1e-7, t.max_membership, label);
        sig.record(t.sig_initial == t.sig_terminal, std::abs(t.sig_initial - t.sig_terminal), label);
        Vec ev = eigenvalues(t.terminal);
        double d = 0.0;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
          d = std::max(d, std::min({std::abs(ev(i)), std::abs(ev(i) - cplx(0, 1)), std::abs(ev(i) + cplx(0, 1))}));
        spec.record(d <= 1e-6, d, label);
        cls.record(t.a_residual <= 1e-8, t.a_residual, label);
      });
    }
    r.checks.insert(r.checks.end(), {mem, sig, spec, cls});
  }
  return r;
}

SuiteResult factorization_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  CheckResult sym{"symmetric w^t w"}, odd{"odd-symmetric s* w^t s w"};
  for (int k = 0; k < n; ++k) {
    const int d = 1 + k % 8;
    Mat v = random_class_unitary(d, UnitaryClass::Symmetric, rng());
    guarded(sym, "instance " + std::to_string(k), [&] {
      Factorization f = factorize_unitary(v, UnitaryClass::Symmetric, tol);
      sym.record(f.residual <= 1e-9, f.residual, "instance " + std::to_string(k));
    });
    const int e = 2 * (1 + k % 4);
    Mat w = random_class_unitary(e, UnitaryClass::OddSymmetric, rng());
    guarded(odd, "instance " + std::to_string(k), [&] {
      Factorization f = factorize_unitary(w, UnitaryClass::OddSymmetric, tol);
      odd.record(f.residual <= 1e-9, f.residual, "instance " + std::to_string(k));
    });
  }
  r.checks = {sym, odd};
  return r;
}

SuiteResult index_suite(int n, Rng& rng, const ToleranceConfig& tol) {
  SuiteResult r;
  CheckResult c{"sig equals index"}, o{"index equals svd rank oracle"};
  std::uniform_int_distribution<int> dim(1, 6);
  for (int k = 0; k < n; ++k) {
    const int m = dim(rng), nn = dim(rng);
    const int rank = std::uniform_int_distribution<int>(0, std::min(m, nn))(rng);
    Mat a = rank == 0 ? Mat(Mat::Zero(m, nn)) : random_rank_matrix(m, nn, rank, rng());
    const std::string label = std::to_string(m) + "x" + std::to_string(nn) + " rank " + std::to_string(rank);
    guarded(c, label, [&] {
      auto [h, K] = build_index_example(a);
      int sig = global_signature(h, K, OperatorKind::Hermitian, tol).global_sig;
      int ind = svd_index(a, 1e-10);
      c.record(sig == ind, std::abs(sig - ind), label);
      o.record(ind == (nn - rank) - (m - rank), 0.0, label);
    });
  }
  r.checks = {c, o};
  return r;
}

SuiteResult finex_suite(const ToleranceConfig& tol) {
  SuiteResult r;
  CheckResult c{"finex signatures"};
  for (int sigma : {-1, 1}) {
    Scenario s = scenario_library("finex", {sigma, 1, 0.5});
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      std::ostringstream label;
      label << "sigma=" << sigma << " t=" << t;
      guarded(c, label.str(), [&] {
        InvariantReport rep = full_invariant_report(s.path.at(t), *s.path.R, OperatorKind::Unitary, tol);
        const int at1 = rep.sig_at(cplx(1, 0), tol.special_point);
        const int atm1 = rep.sig_at(cplx(-1, 0), tol.special_point);
        bool ok = at1 == sigma && atm1 == -sigma && rep.global_sig == 0 && rep.sec && *rep.sec == 1;
        c.record(ok, 0.0, label.str());
      });
    }
  }
  r.checks = {c};
  return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, int n, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng(seed);
  auto start = Clock::now();
  SuiteResult r;
  if (name == "riesz") r = riesz_suite(n, rng, tol);
  else if (name == "signature-law") r = signature_law_suite(n, rng, tol);
  else if (name == "cayley") r = cayley_suite(n, rng, tol);
  else if (name == "kramers") r = kramers_suite(n, rng, tol);
  else if (name == "constraints") r = constraints_suite(n, rng, tol);
  else if (name == "taxonomy") r = taxonomy_suite(n, rng, tol);
  else if (name == "library") r = library_suite(tol);
  else if (name == "retraction") r = retraction_suite(n, rng, tol);
  else if (name == "factorization") r = factorization_suite(n, rng, tol);
  else if (name == "index") r = index_suite(n, rng, tol);
  else if (name == "finex") r = finex_suite(tol);
  else fail(ErrorCode::InvalidInput, "unknown suite " + name);
  r.suite = name;
  r.n = n;
  r.seed = seed;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

Json to_json(const SuiteResult& r) {
  Json out;
  out["suite"] = r.suite;
  out["n"] = r.n;
  out["seed"] = r.seed;
  out["passed"] = r.passed();
  out["seconds"] = r.seconds;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["runs"] = c.runs;
    j["failures"] = c.failures;
    j["max_residual"] = c.max_residual;
    j["notes"] = c.notes;
    checks.push_back(j);
  }
  out["checks"] = checks;
  return out;
}

}  // namespace kreinlab
