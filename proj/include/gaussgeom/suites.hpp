#pragma once

// Verification suites behind the command-line tool.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "gaussgeom/connections.hpp"
#include "gaussgeom/gaussian_geometry.hpp"
#include "gaussgeom/invariant_family.hpp"
#include "gaussgeom/poly_correspondence.hpp"
#include "gaussgeom/report.hpp"

namespace gaussgeom {

struct RunConfig {
  int n = 2;
  double alpha = 1.0;
  std::array<double, 3> abc{1.0, -0.5, 0.25};
  std::uint64_t seed = 0;
  double tol_geom = 1e-5;
  double tol_exact = 1e-10;
  std::int64_t samples = 1'000'000;
  std::optional<double> fd_step;  // unset: FdScheme default
  int trials = 100;
  int threads = 1;
  // Fault-injection harness. "c2-weight" sets the C2 symmetrization weight to 1/2.
  std::string fault;

  /// Throws std::invalid_argument on a bad configuration.
  void validate() const;
  FdScheme scheme() const;
  Json to_json() const;
};

// splitmix64 of (seed, tag); sub-seeds for independent sub-steps.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// |g(h.Sigma; h_*X, h_*Y) - g(Sigma; X, Y)| over the Cauchy-Schwarz bound sqrt(g(X,X) g(Y,Y)).
/// Both sides are evaluated with the long double instantiation of the closed-form
/// kernels: rounding h Sigma h^T to double alone costs about cond(h Sigma h^T) * eps.
double fisher_invariance_error(const GroupElement& h, const SpdPoint& sigma, const SymMat& x, const SymMat& y);

/// Same for a cubic family member, against sum_i |coef_i| * (bound of generator i).
double cubic_invariance_error(const InvariantCubic& cubic, const GroupElement& h, const SpdPoint& sigma,
                              const SymMat& x, const SymMat& y, const SymMat& z);

Report run_verify(const RunConfig& cfg);

struct DecomposeResult {
  Report report;
  std::optional<SymCubicPoly> polynomial;
};
DecomposeResult run_decompose(const RawCubicTensor& input, const RunConfig& cfg);

Report run_dims(int max_n);

Report run_mc_check(const RunConfig& cfg);

}  // namespace gaussgeom
