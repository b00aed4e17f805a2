#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "kreinlab/fixtures.hpp"
#include "kreinlab/io.hpp"
#include "kreinlab/realsym.hpp"
#include "test_util.hpp"

using namespace kt;

namespace {

Json file_json(int p, int q, std::vector<Json> entries) {
  Json j;
  j["dim"] = p + q;
  j["n_plus"] = p;
  j["n_minus"] = q;
  j["entries"] = entries;
  return j;
}

}  // namespace

TEST_CASE("matrix files round-trip bit for bit") {
  Rng rng(3);
  MatrixFile f;
  f.n_plus = 2;
  f.n_minus = 2;
  f.kind = RealKind{-1, -1};
  f.op = OperatorKind::Unitary;
  f.matrix = random_complex(4, 4, rng);
  f.matrix(0, 0) = cplx(1.0 / 3.0, -1e-300);
  const auto path = (std::filesystem::temp_directory_path() / "kreinlab_io_roundtrip.json").string();
  write_matrix_file(path, f);
  MatrixFile g = read_matrix_file(path);
  std::filesystem::remove(path);
  CHECK(g.n_plus == 2);
  CHECK(g.n_minus == 2);
  REQUIRE(g.kind.has_value());
  CHECK(g.kind->eta == -1);
  CHECK(g.kind->tau == -1);
  REQUIRE(g.op.has_value());
  CHECK(*g.op == OperatorKind::Unitary);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(g.matrix(i, k) == f.matrix(i, k));
  CHECK(g.real().has_value());
  CHECK(norm(matrix_from_json(matrix_to_json(f.matrix)) - f.matrix) == 0.0);
}

TEST_CASE("invalid matrix files are refused") {
  const Json one = Json::array({1.0, 0.0});
  CHECK_NOTHROW(matrix_file_from_json(file_json(1, 0, {one})));
  CHECK_THROWS_AS(matrix_file_from_json(file_json(1, 1, {one})), Error);
  Json bad_sum = file_json(1, 0, {one});
  bad_sum["dim"] = 2;
  CHECK_THROWS_AS(matrix_file_from_json(bad_sum), Error);
  CHECK_THROWS_AS(matrix_file_from_json(file_json(1, 0, {Json::array({1.0})})), Error);
  CHECK_THROWS_AS(matrix_file_from_json(file_json(1, 0, {Json("x")})), Error);
  Json bad_kind = file_json(1, 0, {one});
  bad_kind["kind"] = Json::array({1, 2});
  CHECK_THROWS_AS(matrix_file_from_json(bad_kind), Error);
  Json bad_op = file_json(1, 0, {one});
  bad_op["operator"] = "normal";
  CHECK_THROWS_AS(matrix_file_from_json(bad_op), Error);
  CHECK_THROWS_AS(matrix_file_from_json(Json::object()), Error);
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/kreinlab.json"), Error);
  CHECK(complex_from_json(Json(2.5)) == cplx(2.5, 0.0));
}

TEST_CASE("report JSON carries the invariants") {
  RealStructure R = make_real_structure({1, 1}, 1, 1);
  Json r = to_json(full_invariant_report(finex(0.3), R, OperatorKind::Unitary));
  for (const char* key : {"kind", "n_plus", "n_minus", "sig", "matches_dimension_law", "sec", "clusters"})
    CHECK(r.contains(key));
  CHECK(r["sig"] == 0);
  CHECK(r["sec"] == 1);
  CHECK(r["clusters"].size() == 2);
  RealStructure S = make_real_structure({-1, -1}, 2, 2);
  CHECK(to_json(full_invariant_report(identity(4), S, OperatorKind::Unitary))["sig2"] == 0);

  Scenario s = scenario_library("kc2x2");
  Json ev = to_json(detect_events(track(s.path, 41), s.path));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0]["kind"] == "KC");
  CHECK(ev[0]["multiplicity"] == 2);
  CHECK(ev[0]["inertia_after"] == Json::array({1, 1}));

  KreinStructure K = make_standard(1, 1);
  Json t = to_json(retract_to_model(K.J, K, nullptr));
  for (const char* key : {"stages", "sig_initial", "sig_terminal", "max_chain_gap", "A", "terminal"})
    CHECK(t.contains(key));
}

TEST_CASE("json_subset_diff") {
  Json actual = Json::parse(R"({"a": 1, "b": 0.5, "c": [1, 2, 3],
                               "d": [{"k": "x", "v": 1}, {"k": "y", "v": 2}], "e": "s"})");
  CHECK(json_subset_diff(Json::parse(R"({"a": 1})"), actual, 1e-6).empty());
  CHECK(json_subset_diff(Json::parse(R"({"b": 0.5000001})"), actual, 1e-6).empty());
  CHECK_FALSE(json_subset_diff(Json::parse(R"({"b": 0.51})"), actual, 1e-6).empty());
  CHECK_FALSE(json_subset_diff(Json::parse(R"({"a": 2})"), actual, 1e-6).empty());
  CHECK_FALSE(json_subset_diff(Json::parse(R"({"z": 1})"), actual, 1e-6).empty());
  CHECK_FALSE(json_subset_diff(Json::parse(R"({"c": [1, 3, 2]})"), actual, 1e-6).empty());
  CHECK(json_subset_diff(Json::parse(R"({"d": [{"k": "y"}, {"k": "x", "v": 1}]})"), actual, 1e-6).empty());
  CHECK_FALSE(json_subset_diff(Json::parse(R"({"d": [{"k": "y", "v": 1}]})"), actual, 1e-6).empty());
  CHECK_FALSE(json_subset_diff(Json::parse(R"({"e": "t"})"), actual, 1e-6).empty());
  auto diff = json_subset_diff(Json::parse(R"({"a": 2})"), actual, 1e-6);
  REQUIRE(diff.size() == 1);
  CHECK(diff[0].find("$.a") != std::string::npos);
}

TEST_CASE("compute_fixture tasks") {
  Json in = Json::parse(R"({"task": "track", "basis": "trivial", "scenario": "finex"})");
  Json out = compute_fixture(in);
  CHECK(out["events"].empty());
  CHECK(out["krein_stable"] == true);
  Json idx = Json::parse(R"({"task": "index", "basis": "trivial",
                             "A": {"rows": 2, "cols": 1, "entries": [[0, 0], [0, 0]]}})");
  Json r = compute_fixture(idx);
  CHECK(r["index"] == -1);
  CHECK(r["sig"] == -1);
  CHECK_THROWS_AS(compute_fixture(Json::parse(R"({"task": "nope", "basis": "trivial"})")), Error);
}
