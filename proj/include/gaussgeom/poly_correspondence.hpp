#pragma once

// Invariant cubic tensors <-> homogeneous cubic symmetric polynomials.
//
// A K-invariant cubic tensor T is determined by its cubic form q_T(X) = T(X,X,X),
// and q_T is determined by its restriction to diagonal matrices, which is a
// symmetric polynomial in the eigenvalues. That polynomial is expressed in the
// power-sum basis {p3, p2 p1, p1^3}; for n = 2 only {p3, p2 p1} are independent
// and for n = 1 only p3.

#include <functional>
#include <optional>
#include <vector>

#include "gaussgeom/invariant_family.hpp"
#include "gaussgeom/symcone.hpp"

namespace gaussgeom {

/// Coefficients on the monomial types sum x_i^3, sum_{i!=j} x_i^2 x_j, sum_{i<j<k} x_i x_j x_k.
struct MonomialCoeffs {
  double c300 = 0.0;
  std::optional<double> c210;  // n >= 2
  std::optional<double> c111;  // n >= 3
};

/// u p3 + v p2 p1 + w p1^3, keeping only the coordinates independent at n.
class SymCubicPoly {
 public:
  SymCubicPoly() = default;
  /// `coeffs` must have exactly min(n, 3) entries.
  SymCubicPoly(int n, std::vector<double> coeffs);
  static SymCubicPoly zero(int n);

  int n() const { return n_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double p3() const { return coeffs_[0]; }
  std::optional<double> p2p1() const;
  std::optional<double> p1_cubed() const;

  /// Value at the eigenvalue vector x.
  double operator()(const std::vector<double>& x) const;

 private:
  int n_ = 1;
  std::vector<double> coeffs_{0.0};
};

/// Number of independent power-sum coordinates at n.
constexpr int poly_dim_upper(int n) { return n >= 3 ? 3 : n; }

using CubicFormFn = std::function<double(const SymMat&)>;

/// q_T(X) = T(X, X, X)
double cubic_form(const RawCubicTensor& t, const SymMat& x);

/// Symmetric trilinear form with cubic form q, by polarization on basis triples.
RawCubicTensor polarize(const CubicFormFn& q, int n);

/// Probe q(2X) = 8 q(X) on a few random X; false if q is not cubic-homogeneous.
bool is_cubic_homogeneous(const CubicFormFn& q, int n, std::uint64_t seed, int probes = 8, double tol = 1e-10);

/// Monomial coefficients of lambda -> q(diag(lambda)) from the exact evaluations
/// f(e1), f(e1+e2), f(e1+e2+e3).
MonomialCoeffs diag_restrict(const RawCubicTensor& t);
MonomialCoeffs diag_restrict(const std::function<double(const std::vector<double>&)>& f, int n);

SymCubicPoly to_power_sums(const MonomialCoeffs& m, int n);

/// diag_restrict o raw_components, in power-sum coordinates.
SymCubicPoly phi(const InvariantCubic& cubic);
/// Canonical preimage: (u, v, w) for n >= 3, (u, v, 0) for n = 2, (u, 0, 0) for n = 1.
InvariantCubic phi_inverse(const SymCubicPoly& p);

/// Tensor-level decomposition of an arbitrary raw tensor (assumed O(n)-invariant).
SymCubicPoly decompose(const RawCubicTensor& t);

/// Rank of the monomial coefficient vectors of p3, p2 p1, p1^3 at n.
int dimension(int n);

/// Basis of linear relations a p3 + b p2 p1 + c p1^3 = 0 among the power sums at n,
/// each normalized so its last nonzero entry is 1. Empty for n >= 3.
std::vector<Eigen::Vector3d> power_sum_relations(int n);

}  // namespace gaussgeom
