#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kreinlab/io.hpp"

namespace kreinlab {

struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  int runs = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<std::string> notes;  // first few failure messages

  void record(bool ok, double residual, const std::string& note = {});
};

struct SuiteResult {
  std::string suite;
  int n = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// riesz, signature-law, cayley, kramers, constraints, taxonomy, library, retraction,
/// factorization, index, finex. `n` is the instance count per kind where a suite has kinds.
SuiteResult run_suite(const std::string& name, int n, std::uint64_t seed, const ToleranceConfig& tol = {});
std::vector<std::string> suite_names();

Json to_json(const SuiteResult& r);

/// Index of A: dim ker A - dim ker A* from singular values at relative cutoff `rank_tol`.
int svd_index(const Mat& a, double rank_tol);

/// Random m x n matrix of prescribed rank.
Mat random_rank_matrix(int m, int n, int rank, std::uint64_t seed);

/// Gapped symmetric (or odd-symmetric) unitary -exp(i h).
Mat random_class_unitary(int n, UnitaryClass cls, std::uint64_t seed);

}  // namespace kreinlab
