#include "kreinlab/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "kreinlab/errors.hpp"
#include "kreinlab/verify.hpp"

namespace kreinlab {

namespace {

OperatorKind operator_of(const Json& input, const MatrixFile& f) {
  if (input.contains("operator")) {
    const std::string s = input["operator"].get<std::string>();
    if (s == "unitary") return OperatorKind::Unitary;
    if (s == "hermitian") return OperatorKind::Hermitian;
    fail(ErrorCode::InvalidInput, "operator must be unitary or hermitian");
  }
  return f.op.value_or(OperatorKind::Hermitian);
}

std::string dump(const Json& j) {
  std::string s = j.dump();
  return s.size() > 120 ? s.substr(0, 117) + "..." : s;
}

}  // namespace

Json compute_fixture(const Json& input, const ToleranceConfig& tol) {
  const std::string task = input.value("task", "");
  if (task == "invariants") {
    MatrixFile f = matrix_file_from_json(input.at("matrix"));
    const OperatorKind op = operator_of(input, f);
    auto R = f.real();
    return to_json(R ? full_invariant_report(f.matrix, *R, op, tol) : global_signature(f.matrix, f.krein(), op, tol));
  }
  if (task == "track") {
    ScenarioParams params;
    if (input.contains("params")) {
      const Json& p = input["params"];
      params.sigma = p.value("sigma", params.sigma);
      params.sigma_prime = p.value("sigma_prime", params.sigma_prime);
      params.lambda0 = p.value("lambda0", params.lambda0);
    }
    Scenario s = scenario_library(input.at("scenario").get<std::string>(), params);
    TrackResult tr = track(s.path, input.value("grid", 41), tol);
    auto events = detect_events(tr, s.path, tol);
    Json out;
    out["group"] = s.group;
    out["events"] = to_json(events);
    out["krein_stable"] = verify_krein_stability(events).ok;
    return out;
  }
  if (task == "index") {
    Mat a = matrix_from_json(input.at("A"));
    auto [h, K] = build_index_example(a);
    Json out;
    out["sig"] = global_signature(h, K, OperatorKind::Hermitian, tol).global_sig;
    out["index"] = svd_index(a, tol.rank);
    return out;
  }
  if (task == "retract") {
    MatrixFile f = matrix_file_from_json(input.at("matrix"));
    auto R = f.real();
    return to_json(retract_to_model(f.matrix, f.krein(), R ? &*R : nullptr, tol));
  }
  fail(ErrorCode::InvalidInput, "unknown fixture task '" + task + "'");
}

std::vector<std::string> json_subset_diff(const Json& expected, const Json& actual, double rel_tol,
                                          const std::string& path) {
  std::vector<std::string> out;
  auto mismatch = [&] { out.push_back(path + ": expected " + dump(expected) + ", got " + dump(actual)); };
  if (expected.is_object()) {
    if (!actual.is_object()) return mismatch(), out;
    for (const auto& [key, value] : expected.items()) {
      if (!actual.contains(key)) {
        out.push_back(path + "." + key + ": missing");
        continue;
      }
      auto sub = json_subset_diff(value, actual[key], rel_tol, path + "." + key);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return mismatch(), out;
    bool objects = !expected.empty();
    for (const auto& e : expected) objects = objects && e.is_object();
    if (!objects) {
      for (size_t i = 0; i < expected.size(); ++i) {
        auto sub = json_subset_diff(expected[i], actual[i], rel_tol, path + "[" + std::to_string(i) + "]");
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    std::vector<bool> used(actual.size(), false);
    for (size_t i = 0; i < expected.size(); ++i) {
      bool found = false;
      for (size_t k = 0; k < actual.size() && !found; ++k) {
        if (used[k] || !json_subset_diff(expected[i], actual[k], rel_tol).empty()) continue;
        used[k] = found = true;
      }
      if (!found) out.push_back(path + "[" + std::to_string(i) + "]: no match for " + dump(expected[i]));
    }
    return out;
  }
  if (expected.is_number()) {
    if (!actual.is_number()) return mismatch(), out;
    if (expected.is_number_integer() && actual.is_number_integer()) {
      if (expected.get<long long>() != actual.get<long long>()) mismatch();
      return out;
    }
    const double e = expected.get<double>(), a = actual.get<double>();
    if (!(std::abs(a - e) <= rel_tol * (1.0 + std::abs(e)))) mismatch();
    return out;
  }
  if (expected != actual) mismatch();
  return out;
}

namespace {

Json load_input(const std::filesystem::path& dir) {
  Json input = read_json((dir / "input.json").string());
  const std::string basis = input.value("basis", "");
  if (basis != "published-example" && basis != "trivial" && basis != "derived")
    fail(ErrorCode::InvalidInput, dir.filename().string() + ": missing or unknown basis");
  if (basis == "derived" && input.value("oracle", "").empty())
    fail(ErrorCode::InvalidInput, dir.filename().string() + ": derived fixture without oracle");
  if (basis == "published-example" && input.value("construct", "").empty())
    fail(ErrorCode::InvalidInput, dir.filename().string() + ": published example without construct");
  if (!std::filesystem::exists(dir / "oracle.md"))
    fail(ErrorCode::InvalidInput, dir.filename().string() + ": oracle.md missing");
  return input;
}

}  // namespace

void run_fixture(const std::string& dir, const ToleranceConfig& tol) {
  const std::filesystem::path d(dir);
  Json input = load_input(d);
  Json expected = read_json((d / "expected.json").string());
  Json actual = compute_fixture(input, tol);
  auto diff = json_subset_diff(expected, actual, input.value("tolerance", 1e-6));
  if (diff.empty()) return;
  std::ostringstream os;
  os << d.filename().string() << ":";
  for (const auto& line : diff) os << "\n  " << line;
  fail(ErrorCode::FixtureMismatch, os.str());
}

void regenerate_fixture(const std::string& dir, const std::vector<std::string>& keep, const ToleranceConfig& tol) {
  const std::filesystem::path d(dir);
  Json actual = compute_fixture(load_input(d), tol);
  std::vector<std::string> keys = keep;
  if (keys.empty() && std::filesystem::exists(d / "expected.json"))
    for (const auto& [k, v] : read_json((d / "expected.json").string()).items()) keys.push_back(k);
  if (!keys.empty()) {
    Json trimmed;
    for (const auto& k : keys)
      if (actual.contains(k)) trimmed[k] = actual[k];
    actual = trimmed;
  }
  write_json((d / "expected.json").string(), actual);
}

}  // namespace kreinlab
