#pragma once

// The three-parameter family a*C1 + b*C2 + c*C3 of GL(n)-invariant symmetric
// cubic tensor fields on the SPD cone:
//   C1(X,Y,Z) = tr(XYZ)
//   C2(X,Y,Z) = (tr X tr YZ + tr Y tr XZ + tr Z tr XY) / 3
//   C3(X,Y,Z) = tr X tr Y tr Z
// written at the identity and transported to Sigma by whitening. C1 is the
// Amari-Chentsov tensor with alpha = 1.

#include <cstdint>

#include "gaussgeom/symcone.hpp"
#include "gaussgeom/tensor.hpp"
#include "gaussgeom/verdict.hpp"

namespace gaussgeom {

struct InvariantCubic {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  // Weight of the symmetrized C2 sum. Only the fault-injection harness changes it.
  double c2_weight = 1.0 / 3.0;

  static InvariantCubic amari_chentsov(int n, double alpha) { return {n, alpha, 0.0, 0.0}; }
};

/// Components of a cubic tensor at the identity, full d^3 array.
struct RawCubicTensor {
  int n = 1;
  ComponentArray components;

  /// T(X, Y, Z) through the vech coordinates of the arguments.
  double operator()(const SymMat& x, const SymMat& y, const SymMat& z) const;
};

double invariant_cubic_eval(const InvariantCubic& cubic, const SpdPoint& sigma, const SymMat& x,
                            const SymMat& y, const SymMat& z);

TensorField invariant_cubic_field(const InvariantCubic& cubic);

RawCubicTensor raw_components(const InvariantCubic& cubic);

/// Compares T(kXk^T, kYk^T, kZk^T) with T(X, Y, Z) for random orthogonal k and
/// random symmetric X, Y, Z. The error of each trial is measured against
/// ||T||_max * ||x||_1 ||y||_1 ||z||_1 (vech coordinates), a bound on |T(X,Y,Z)|.
Verdict on_invariance_check(const RawCubicTensor& t, int trials, std::uint64_t seed, double tol = 1e-10);

}  // namespace gaussgeom
