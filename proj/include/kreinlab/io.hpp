#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kreinlab/homotopy.hpp"
#include "kreinlab/retraction.hpp"

namespace kreinlab {

using Json = nlohmann::ordered_json;

/// {dim, n_plus, n_minus, kind?: [eta, tau], operator?: "unitary" | "hermitian", entries: [[re, im], ...]}
struct MatrixFile {
  int n_plus = 0;
  int n_minus = 0;
  std::optional<RealKind> kind;
  std::optional<OperatorKind> op;
  Mat matrix;

  int dim() const { return n_plus + n_minus; }
  KreinStructure krein() const { return make_standard(n_plus, n_minus); }
  /// Normal-form Real structure when `kind` is present.
  std::optional<RealStructure> real() const;
};

/// Row-major [[re, im], ...].
Json entries_to_json(const Mat& a);
Mat entries_from_json(const Json& j, int rows, int cols);

/// {rows, cols, entries}
Json matrix_to_json(const Mat& a);
Mat matrix_from_json(const Json& j);

Json to_json(const MatrixFile& f);
/// Enforces entries length = dim^2, inertia summing to dim and finite entries. Throws InvalidInput.
MatrixFile matrix_file_from_json(const Json& j);

MatrixFile read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const MatrixFile& f);

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j);

Json to_json(const InvariantReport& r);
Json to_json(const BifurcationEvent& e);
Json to_json(const std::vector<BifurcationEvent>& events);
Json to_json(const RetractionTrace& t);

}  // namespace kreinlab
