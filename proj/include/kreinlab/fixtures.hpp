#pragma once

#include <string>
#include <vector>

#include "kreinlab/io.hpp"

namespace kreinlab {

/// input.json:
///   {"task": "invariants" | "track" | "index" | "retract",
///    "basis": "published-example" | "trivial" | "derived",
///    "oracle": text naming the oracle (required for "derived"),
///    "construct": the published construct reproduced (required for "published-example"),
///    "tolerance": relative tolerance for non-integer numbers (default 1e-6),
///    ... task fields}
/// Task fields:
///   invariants: "matrix" (MatrixFile), optional "operator"
///   track:      "scenario", optional "params" {sigma, sigma_prime, lambda0}, optional "grid"
///   index:      "A" ({rows, cols, entries})
///   retract:    "matrix" (MatrixFile)
/// expected.json is matched as a subset of the computed output.
Json compute_fixture(const Json& input, const ToleranceConfig& tol = {});

/// Differences between `expected` and `actual`; empty when `expected` is a subset of `actual`.
/// Integers compare exactly; other numbers within rel_tol * (1 + |expected|).
/// Arrays of objects match elementwise in any order; other arrays match positionally.
std::vector<std::string> json_subset_diff(const Json& expected, const Json& actual, double rel_tol,
                                          const std::string& path = "$");

/// Recomputes fixtures/<name> and diffs it. Throws FixtureMismatch with the diff, InvalidInput when
/// the fixture is malformed or lacks its basis.
void run_fixture(const std::string& dir, const ToleranceConfig& tol = {});

/// Rewrites expected.json from the current computation, keeping only the `keep` top-level keys
/// (default: the keys of the existing expected.json, or everything when there is none).
void regenerate_fixture(const std::string& dir, const std::vector<std::string>& keep = {},
                        const ToleranceConfig& tol = {});

}  // namespace kreinlab
