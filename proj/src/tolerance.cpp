#include "kreinlab/tolerance.hpp"

#include <cstdlib>
#include <string>

namespace kreinlab {

ToleranceConfig ToleranceConfig::scaled(double f) const {
  ToleranceConfig t = *this;
  for (double* p : {&t.solve_pivot, &t.hermitian_check, &t.riesz, &t.riesz_sum, &t.trace,
                    &t.contour_clearance, &t.cluster_rel, &t.eps_region, &t.zero_tol,
                    &t.membership, &t.path_membership, &t.rank, &t.match, &t.special_point,
                    &t.min_step, &t.event_bracket, &t.factorization, &t.gap})
    *p *= f;
  return t;
}

ToleranceConfig ToleranceConfig::from_env() {
  const char* v = std::getenv("KREINLAB_TOL");
  if (!v) return {};
  try {
    double f = std::stod(v);
    if (f > 0) return ToleranceConfig{}.scaled(f);
  } catch (...) {
  }
  return {};
}

}  // namespace kreinlab
