#include "kreinlab/io.hpp"

#include <cmath>
#include <fstream>

#include "kreinlab/errors.hpp"
#include "kreinlab/realsym.hpp"

namespace kreinlab {

std::optional<RealStructure> MatrixFile::real() const {
  if (!kind) return std::nullopt;
  return make_real_structure(*kind, n_plus, n_minus);
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::InvalidInput, "complex entries are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json entries_to_json(const Mat& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) out.push_back(complex_to_json(a(i, k)));
  return out;
}

Mat entries_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<long>(j.size()) != static_cast<long>(rows) * cols)
    fail(ErrorCode::InvalidInput, "entries length must equal rows * cols");
  std::vector<cplx> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return make_matrix(rows, cols, v);
}

Json matrix_to_json(const Mat& a) {
  Json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["entries"] = entries_to_json(a);
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    fail(ErrorCode::InvalidInput, "matrix needs rows, cols and entries");
  return entries_from_json(j["entries"], j["rows"].get<int>(), j["cols"].get<int>());
}

Json to_json(const MatrixFile& f) {
  Json out;
  out["dim"] = f.dim();
  out["n_plus"] = f.n_plus;
  out["n_minus"] = f.n_minus;
  if (f.kind) out["kind"] = Json::array({f.kind->eta, f.kind->tau});
  if (f.op) out["operator"] = kind_name(*f.op);
  out["entries"] = entries_to_json(f.matrix);
  return out;
}

MatrixFile matrix_file_from_json(const Json& j) {
  try {
    MatrixFile f;
    const int dim = j.at("dim").get<int>();
    f.n_plus = j.at("n_plus").get<int>();
    f.n_minus = j.at("n_minus").get<int>();
    if (f.n_plus < 0 || f.n_minus < 0 || f.n_plus + f.n_minus != dim)
      fail(ErrorCode::InvalidInput, "n_plus + n_minus must equal dim");
    if (j.contains("kind")) {
      const auto& k = j["kind"];
      if (!k.is_array() || k.size() != 2) fail(ErrorCode::InvalidInput, "kind is [eta, tau]");
      f.kind = RealKind{k[0].get<int>(), k[1].get<int>()};
      if (std::abs(f.kind->eta) != 1 || std::abs(f.kind->tau) != 1)
        fail(ErrorCode::InvalidInput, "eta and tau must be +-1");
    }
    if (j.contains("operator")) {
      const std::string op = j["operator"].get<std::string>();
      if (op == "unitary") f.op = OperatorKind::Unitary;
      else if (op == "hermitian") f.op = OperatorKind::Hermitian;
      else fail(ErrorCode::InvalidInput, "operator is unitary or hermitian");
    }
    f.matrix = entries_from_json(j.at("entries"), dim, dim);
    return f;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed matrix file: ") + e.what());
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

MatrixFile read_matrix_file(const std::string& path) { return matrix_file_from_json(read_json(path)); }

void write_matrix_file(const std::string& path, const MatrixFile& f) { write_json(path, to_json(f)); }

Json to_json(const InvariantReport& r) {
  Json out;
  out["kind"] = kind_name(r.kind);
  out["n_plus"] = r.n_plus;
  out["n_minus"] = r.n_minus;
  out["sig"] = r.global_sig;
  out["matches_dimension_law"] = r.matches_dimension_law;
  if (r.sec) out["sec"] = *r.sec;
  if (r.sig2) out["sig2"] = *r.sig2;
  Json rows = Json::array();
  for (const auto& c : r.rows) {
    Json row;
    row["lambda"] = complex_to_json(c.eigenvalue);
    row["multiplicity"] = c.multiplicity;
    row["on_boundary"] = c.on_boundary;
    row["nu"] = Json::array({c.nu.nu_plus, c.nu.nu_minus});
    row["sig"] = c.sig;
    row["partner"] = c.partner;
    rows.push_back(row);
  }
  out["clusters"] = rows;
  return out;
}

Json to_json(const BifurcationEvent& e) {
  Json out;
  out["kind"] = event_name(e.kind);
  out["direction"] = direction_name(e.direction);
  out["t0"] = e.t0;
  out["bracket"] = Json::array({e.bracket_lo, e.bracket_hi});
  out["lambda0"] = complex_to_json(e.lambda0);
  out["multiplicity"] = e.multiplicity;
  out["inertia_before"] = Json::array({e.inertia_before.nu_plus, e.inertia_before.nu_minus});
  out["inertia_after"] = Json::array({e.inertia_after.nu_plus, e.inertia_after.nu_minus});
  out["inertia_defined"] = e.inertia_defined;
  return out;
}

Json to_json(const std::vector<BifurcationEvent>& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(to_json(e));
  return out;
}

Json to_json(const RetractionTrace& t) {
  Json out;
  Json stages = Json::array();
  for (const auto& s : t.segments) {
    Json st;
    st["stage"] = s.stage;
    st["membership_residual"] = s.membership_residual;
    stages.push_back(st);
  }
  out["stages"] = stages;
  out["sig_initial"] = t.sig_initial;
  out["sig_terminal"] = t.sig_terminal;
  out["kernel_dim_after_lift"] = t.kernel_dim_after_lift;
  out["kernel_inertia"] = Json::array({t.kernel_inertia.nu_plus, t.kernel_inertia.nu_minus});
  if (t.sig2) out["sig2"] = *t.sig2;
  out["max_chain_gap"] = t.max_chain_gap;
  out["max_membership"] = t.max_membership;
  out["a_class"] = t.a_class;
  out["a_residual"] = t.a_residual;
  if (t.factorization_residual) out["factorization_residual"] = *t.factorization_residual;
  out["A"] = matrix_to_json(t.A);
  out["u_plus"] = matrix_to_json(t.u_plus);
  out["initial"] = matrix_to_json(t.initial);
  out["terminal"] = matrix_to_json(t.terminal);
  return out;
}

}  // namespace kreinlab
