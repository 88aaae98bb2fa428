#pragma once

#include <optional>
#include <string>

#include "gaussgeom/symcone.hpp"

namespace gaussgeom {

/// Outcome of a numerical check. `max_violation` is already normalized by the
/// check's scale, so `pass == (max_violation < tol)`.
struct Verdict {
  std::string check;
  int n = 0;
  std::optional<SymMat> point;
  double max_violation = 0.0;
  double tol = 0.0;
  bool pass = false;
};

inline Verdict make_verdict(std::string check, int n, std::optional<SymMat> point, double violation,
                            double tol) {
  return Verdict{std::move(check), n, std::move(point), violation, tol, violation < tol};
}

}  // namespace gaussgeom
