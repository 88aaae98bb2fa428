#pragma once

// Fisher metric and Amari-Chentsov tensor of the zero-mean Gaussian family
// N(0, Sigma), the GL(n) action on it, and Monte-Carlo score-moment oracles.

#include <cstdint>
#include <functional>
#include <vector>

#include "gaussgeom/kernels.hpp"
#include "gaussgeom/symcone.hpp"
#include "gaussgeom/tensor.hpp"

namespace gaussgeom {

/// Pulls symmetric matrices back to the identity: X -> L^{-1} X L^{-T} with
/// L the Cholesky factor of Sigma. Every invariant trace expression at Sigma
/// equals the identity-point expression on whitened arguments.
class Whitener {
 public:
  explicit Whitener(const SpdPoint& sigma) : n_(sigma.n()), whiten_(sigma.full()) {}
  int n() const { return n_; }
  Matrix operator()(const SymMat& x) const;

 private:
  int n_;
  kernels::Whiten<double> whiten_;
};

// tr(AB) and tr(ABC) for symmetric A, B, C.
inline double trace_product(const Matrix& a, const Matrix& b) { return kernels::trace2(a, b); }
inline double trace_product(const Matrix& a, const Matrix& b, const Matrix& c) { return kernels::trace3(a, b, c); }

struct AlphaParam {
  double alpha = 0.0;
};

/// (1/2) tr(S X S Y) with S = Sigma^{-1}.
double fisher_at(const SpdPoint& sigma, const SymMat& x, const SymMat& y);

/// alpha * tr(S X S Y S Z).
double ac_alpha_at(AlphaParam alpha, const SpdPoint& sigma, const SymMat& x, const SymMat& y,
                   const SymMat& z);

/// Directional derivative of log N(x | 0, Sigma) along X.
double directional_score(const SpdPoint& sigma, const SymMat& dir, const Vector& x);

/// The Fisher metric as a valence-2 field in the vech basis.
TensorField fisher_field(int n);

/// h Sigma h^T
SpdPoint act(const GroupElement& h, const SpdPoint& sigma);
/// h X h^T
SymMat pushforward(const GroupElement& h, const SymMat& x);

struct McConfig {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::int64_t chunk = 65'536;
  // Worker threads; results do not depend on it.
  int threads = 1;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Sample mean and standard error of f(x) over x ~ N(0, Sigma). Chunk c of
/// cfg.chunk samples draws from an RNG stream keyed by (seed, c); chunk
/// statistics are merged in chunk order. `f` must be safe to call concurrently.
McEstimate mc_mean(const SpdPoint& sigma, const std::function<double(const Vector&)>& f,
                   const McConfig& cfg);

/// E[prod_i D_{dirs[i]} log N(x | 0, Sigma)] for two or three directions.
McEstimate mc_moment(const SpdPoint& sigma, const std::vector<SymMat>& dirs, const McConfig& cfg);

}  // namespace gaussgeom
