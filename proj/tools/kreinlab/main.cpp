#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "kreinlab/errors.hpp"
#include "kreinlab/io.hpp"
#include "kreinlab/verify.hpp"

using namespace kreinlab;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitTracking = 4;
constexpr int kExitRetraction = 5;

const char* kExitCodes =
    "Exit codes: 0 success, 1 verification failure, 2 invalid input or incompatible dimensions,\n"
    "3 degenerate form or ambiguous classification, 4 tracking failure, 5 retraction stage failure.\n"
    "KREINLAB_TOL=<factor> scales every tolerance uniformly.";

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::OddDimension:
    case ErrorCode::IncompatibleDimensions:
    case ErrorCode::UnknownScenario:
    case ErrorCode::NotHermitian:
      return true;
    default:
      return false;
  }
}

int exit_code(ErrorCode c, const std::string& command) {
  if (is_input_error(c)) return kExitInput;
  if (c == ErrorCode::StepUnderflow || c == ErrorCode::UnresolvedEvent) return kExitTracking;
  if (command == "retract") return kExitRetraction;
  return kExitDegenerate;
}

const std::map<std::string, std::optional<RealKind>>& classes() {
  static const std::map<std::string, std::optional<RealKind>> m{{"O", RealKind{1, 1}},
                                                                {"SO*", RealKind{-1, -1}},
                                                                {"SP-ind", RealKind{-1, 1}},
                                                                {"SP-R", RealKind{1, -1}},
                                                                {"U", std::nullopt},
                                                                {"hermitian", std::nullopt}};
  return m;
}

std::optional<OperatorKind> parse_operator(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "unitary") return OperatorKind::Unitary;
  if (s == "hermitian") return OperatorKind::Hermitian;
  fail(ErrorCode::InvalidInput, "--kind must be unitary or hermitian");
}

void print_json(const Json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << "\n";
  else
    write_json(out, j);
}

// Path file: {n_plus, n_minus, kind?, operator, ts: [...], samples: [entries, ...]}.
OperatorPath read_path_file(const std::string& path) {
  Json j = read_json(path);
  MatrixFile head;
  try {
    head.n_plus = j.at("n_plus").get<int>();
    head.n_minus = j.at("n_minus").get<int>();
    if (j.contains("kind")) head.kind = RealKind{j["kind"][0].get<int>(), j["kind"][1].get<int>()};
    auto op = parse_operator(j.value("operator", "unitary"));
    std::vector<double> ts = j.at("ts").get<std::vector<double>>();
    std::vector<Mat> samples;
    for (const auto& s : j.at("samples")) samples.push_back(entries_from_json(s, head.dim(), head.dim()));
    if (ts.size() != samples.size() || ts.size() < 2) fail(ErrorCode::InvalidInput, "ts and samples differ in length");
    return interpolated_path(path, ts, samples, head.krein(), head.real(), *op);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed path file: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kreinlab: Krein-space invariants, bifurcation tracking and retractions"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  std::string gen_class, out_path;
  int gen_np = 0, gen_nm = 0;
  std::uint64_t seed = 1;
  bool zero = false, algebra = false;
  auto* gen = app.add_subcommand("gen", "Random group (or algebra) element as a MatrixFile");
  gen->add_option("class", gen_class, "O, SO*, SP-ind, SP-R, U or hermitian")->required();
  gen->add_option("n_plus", gen_np)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("n_minus", gen_nm)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed, "random seed");
  gen->add_flag("--zero", zero, "emit the zero operator (hermitian)");
  gen->add_flag("--algebra", algebra, "emit a J-hermitian member of the class instead of a group element");
  gen->add_option("-o,--out", out_path, "output file (stdout when omitted)");

  std::string in_path, kind_flag;
  auto* inv = app.add_subcommand("invariants", "Invariant report of a MatrixFile as JSON");
  inv->add_option("input", in_path)->required();
  inv->add_option("--kind", kind_flag, "unitary or hermitian (default: the file's operator field)");

  std::string target, csv_path, events_path;
  int grid = 41;
  ScenarioParams params;
  auto* trk = app.add_subcommand("track", "Track eigenvalues along a library scenario or a path file");
  trk->add_option("target", target, "scenario name or path file")->required();
  trk->add_option("--grid", grid, "initial grid points")->check(CLI::PositiveNumber);
  trk->add_option("--csv", csv_path, "trajectory CSV output");
  trk->add_option("--events", events_path, "events JSON output (stdout when omitted)");
  trk->add_option("--sigma", params.sigma, "finex sign sigma");
  trk->add_option("--sigma-prime", params.sigma_prime, "finex sign sigma'");
  trk->add_option("--lambda0", params.lambda0, "qkc collision point");
  trk->footer(std::string("Path file: {n_plus, n_minus, kind?, operator, ts: [...], samples: [entries, ...]}\n\n") +
              kExitCodes);

  auto* ret = app.add_subcommand("retract", "Retract a J-hermitian MatrixFile to the model space");
  ret->add_option("input", in_path)->required();
  ret->add_option("-o,--out", out_path, "trace JSON output (stdout when omitted)");

  std::string suite;
  int n = 100;
  auto* ver = app.add_subcommand("verify", "Run a randomized verification suite");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--n", n, "instances (per kind where the suite has kinds)")->check(CLI::PositiveNumber);
  ver->add_option("--seed", seed, "random seed");
  ver->add_option("-o,--out", out_path, "JSON summary output (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  const ToleranceConfig tol = ToleranceConfig::from_env();
  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "gen") {
      auto it = classes().find(gen_class);
      if (it == classes().end()) fail(ErrorCode::InvalidInput, "unknown class " + gen_class);
      if (gen_np + gen_nm == 0) fail(ErrorCode::IncompatibleDimensions, "empty space");
      MatrixFile f;
      f.n_plus = gen_np;
      f.n_minus = gen_nm;
      f.kind = it->second;
      const bool herm = gen_class == "hermitian" || algebra || zero;
      f.op = herm ? OperatorKind::Hermitian : OperatorKind::Unitary;
      std::optional<RealStructure> R = f.real();
      if (zero)
        f.matrix = Mat::Zero(f.dim(), f.dim());
      else if (R)
        f.matrix = random_member(*R, *f.op, seed);
      else
        f.matrix = herm ? random_j_hermitian(f.krein(), seed) : random_j_unitary(f.krein(), seed);
      const double kr = herm ? is_j_hermitian(f.matrix, f.krein(), tol.membership).residual
                             : is_j_unitary(f.matrix, f.krein(), tol.membership).residual;
      std::cerr << "krein membership residual " << kr << "\n";
      if (R) std::cerr << "real membership residual " << is_member(f.matrix, *R, *f.op, 1.0).residual << "\n";
      if (out_path.empty())
        std::cout << to_json(f).dump(2) << "\n";
      else
        write_matrix_file(out_path, f);
      return 0;
    }
    if (command == "invariants") {
      MatrixFile f = read_matrix_file(in_path);
      OperatorKind op = parse_operator(kind_flag).value_or(f.op.value_or(OperatorKind::Hermitian));
      auto R = f.real();
      InvariantReport rep =
          R ? full_invariant_report(f.matrix, *R, op, tol) : global_signature(f.matrix, f.krein(), op, tol);
      print_json(to_json(rep), "");
      return 0;
    }
    if (command == "track") {
      const auto names = scenario_names();
      OperatorPath path;
      if (std::find(names.begin(), names.end(), target) != names.end())
        path = scenario_library(target, params).path;
      else
        path = read_path_file(target);
      TrackResult tr = track(path, grid, tol);
      auto events = detect_events(tr, path, tol);
      if (!csv_path.empty()) {
        std::ofstream os(csv_path);
        if (!os) fail(ErrorCode::InvalidInput, "cannot write " + csv_path);
        write_csv(os, tr, path.kind);
      }
      Json out;
      out["path"] = path.name;
      out["group"] = classify_group(path.R ? &*path.R : nullptr, path.K).group;
      out["bisections"] = tr.bisections;
      out["events"] = to_json(events);
      StabilityReport sr = verify_krein_stability(events);
      out["krein_stable"] = sr.ok;
      out["violations"] = sr.violations;
      print_json(out, events_path);
      return 0;
    }
    if (command == "retract") {
      MatrixFile f = read_matrix_file(in_path);
      if (f.op && *f.op != OperatorKind::Hermitian)
        fail(ErrorCode::InvalidInput, "retraction acts on J-hermitian operators");
      if (f.n_plus != f.n_minus)
        fail(ErrorCode::IncompatibleDimensions,
             "retraction needs n_plus == n_minus (a model space with both halves equal); got (" +
                 std::to_string(f.n_plus) + "," + std::to_string(f.n_minus) + ")");
      auto R = f.real();
      RetractionTrace t = retract_to_model(f.matrix, f.krein(), R ? &*R : nullptr, tol);
      print_json(to_json(t), out_path);
      return 0;
    }
    if (command == "verify") {
      SuiteResult r = run_suite(suite, n, seed, tol);
      print_json(to_json(r), out_path);
      for (const auto& c : r.checks)
        std::cerr << (c.failures == 0 && c.runs > 0 ? "PASS " : "FAIL ") << c.name << " (" << c.runs - c.failures
                  << "/" << c.runs << ", max residual " << c.max_residual << ")\n";
      return r.passed() ? 0 : kExitVerify;
    }
  } catch (const Error& e) {
    std::cerr << "kreinlab " << command << ": " << error_name(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code(), command);
  }
  return kExitInput;
}
