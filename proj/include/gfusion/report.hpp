#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace gfusion {

// One verified statement.  Two shapes share the struct:
//   identity   pass <=> residual <= tol;  margin = tol - residual (slack)
//   bound      pass <=> margin >= -tol;   residual = max(0, -margin)
// lhs/rhs carry the real parts of the compared quantities (value and nearest
// bound for the bound shape).  tol is the effective absolute tolerance after
// magnitude scaling.
struct IdentityReport {
  std::string name;
  std::string paper_ref;  // the mathematical statement being verified
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double margin = 0.0;
  bool pass = false;
  double tol = 0.0;
  int trials = 1;
};

inline IdentityReport make_identity_report(std::string name, std::string ref, double lhs,
                                           double rhs, double residual, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.paper_ref = std::move(ref);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = residual;
  r.tol = tol;
  r.margin = tol - residual;
  r.pass = residual <= tol;
  return r;
}

inline IdentityReport make_bound_report(std::string name, std::string ref, double value,
                                        std::optional<double> lo, std::optional<double> hi,
                                        double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.paper_ref = std::move(ref);
  r.lhs = value;
  double margin = std::numeric_limits<double>::infinity();
  double nearest = value;
  if (lo) {
    margin = value - *lo;
    nearest = *lo;
  }
  if (hi && (*hi - value) < margin) {
    margin = *hi - value;
    nearest = *hi;
  }
  r.rhs = nearest;
  r.margin = margin;
  r.residual = std::max(0.0, -margin);
  r.tol = tol;
  r.pass = margin >= -tol;
  return r;
}

}  // namespace gfusion
