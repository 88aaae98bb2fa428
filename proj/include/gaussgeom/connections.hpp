#pragma once

// Levi-Civita connection of the Fisher metric in the vech chart, covariant
// derivatives of tensor fields, conjugate-symmetry / parallelism verdicts, and
// the canonical connection of the symmetric space GL(n)/O(n) at the identity.

#include "gaussgeom/symcone.hpp"
#include "gaussgeom/tensor.hpp"
#include "gaussgeom/verdict.hpp"

namespace gaussgeom {

/// Second-order central differences. The step actually used at Sigma is
/// step * lambda_min(Sigma), halved up to kMaxHalvings times if a stencil
/// point leaves the cone.
struct FdScheme {
  double step = 1e-5;

  static constexpr int kMaxHalvings = 8;
  double step_at(const SpdPoint& sigma) const;
};

/// Gamma^c_{ab} at `base`, stored as gamma.at({c, a, b}).
struct ChristoffelData {
  SpdPoint base;
  ComponentArray gamma;
};

enum class ChristoffelSource {
  Auto,              // closed form when the metric field supplies one, else finite differences
  FiniteDifference,
};

/// Gamma_Sigma(X, Y) = -(X S Y + Y S X) / 2, S = Sigma^{-1}.
SymMat christoffel_closed(const SpdPoint& sigma, const SymMat& x, const SymMat& y);

/// The closed form expanded on the vech basis.
ChristoffelData christoffel_closed_data(const SpdPoint& sigma);

/// Gamma^c_{ab} = g^{cd} (d_a g_{bd} + d_b g_{ad} - d_d g_{ab}) / 2 from central
/// differences of `g`. The differences are taken in the linear chart
/// Y -> Sigma + L Y L^T (L the Cholesky factor of Sigma), where the metric is well
/// conditioned, and the symbols are carried back to the vech chart by the linear
/// change of coordinates, with chart step sqrt(scheme.step). The lower pair is
/// exactly symmetric.
ChristoffelData christoffel_fd(const TensorField& g, const SpdPoint& sigma, const FdScheme& scheme);

/// Partials d_w T_{i...}, returned with w as the first index. Central differences
/// at steps h and h/2 with one Richardson extrapolation.
ComponentArray partial_derivatives(const TensorField& field, const SpdPoint& sigma, const FdScheme& scheme);

/// (nabla T)_{w; i1..ik} = d_w T_{i1..ik} - sum_slots Gamma^e_{w i_s} T_{..e..}.
ComponentArray cov_deriv(const TensorField& field, const TensorField& g, const SpdPoint& sigma,
                         const FdScheme& scheme, ChristoffelSource source = ChristoffelSource::Auto);

/// max(1, ||C||_max at Sigma, ||C||_max at the identity).
double field_scale(const TensorField& field, const SpdPoint& sigma);

/// Symmetry of nabla C in its first two slots, relative to max(1, ||nabla C||_max, field scale).
Verdict conjugate_symmetry_check(const TensorField& c, const TensorField& g, const SpdPoint& sigma,
                                 const FdScheme& scheme, double tol,
                                 ChristoffelSource source = ChristoffelSource::Auto);

/// ||nabla C||_max relative to the field scale.
Verdict parallel_check(const TensorField& c, const TensorField& g, const SpdPoint& sigma,
                       const FdScheme& scheme, double tol, ChristoffelSource source = ChristoffelSource::Auto);

/// ||nabla g||_max relative to the field scale of g.
Verdict metric_compatibility_check(const TensorField& g, const SpdPoint& sigma, const FdScheme& scheme,
                                   double tol, ChristoffelSource source = ChristoffelSource::Auto);

/// Lie derivative of `field` at the identity along the fundamental vector field
/// of X^v = -v/2, by central differences of the pullback under the flow
/// q -> exp(tv/2) q exp(tv/2).
ComponentArray canonical_deriv(const TensorField& field, const SymMat& v, const FdScheme& scheme);

/// sum_w v^w (nabla T)_{w; ...}
ComponentArray contract_direction(const ComponentArray& nabla, const SymMat& v);

/// max | (f(t) - f(-t)) / 2t + 2A | for f(t) = Exp(-tA) Exp(-tA)^T.
double phi_eta_check(const SymMat& a, double t);

}  // namespace gaussgeom
