#pragma once

#include <algorithm>
#include <cmath>

#include "gaussgeom/symcone.hpp"

namespace gaussgeom::test {

inline double rel_err(double got, double want, double floor = 1.0) {
  return std::abs(got - want) / std::max(floor, std::abs(want));
}

// Rank of a matrix through its singular values.
inline int numeric_rank(const Matrix& m, double rel_tol = 1e-12) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

}  // namespace gaussgeom::test
