#pragma once

// Symmetric matrices in half-vectorized coordinates, the SPD cone, GL(n)
// elements and the deterministic generators used throughout the test suites.

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gaussgeom/errors.hpp"

namespace gaussgeom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultSpdTol = 1e-10;
inline constexpr double kDefaultDetTol = 1e-10;
inline constexpr double kSpdJitter = 1e-3;

// d = n(n+1)/2
constexpr int vech_size(int n) { return n * (n + 1) / 2; }

/// A real symmetric n x n matrix stored by its vech coordinates, ordered
/// lexicographically over (i, j) with i <= j. Off-diagonal coordinates are the
/// raw entries (no sqrt(2) weighting).
class SymMat {
 public:
  SymMat() = default;

  static SymMat zero(int n);
  static SymMat identity(int n);
  static SymMat diagonal(const std::vector<double>& diag);
  static SymMat from_vech(int n, Vector vech);
  /// Takes the upper triangle of `full`; the strictly lower part is ignored.
  static SymMat from_upper(const Matrix& full);
  /// Symmetrizes (M + M^T)/2 before storing.
  static SymMat symmetrized(const Matrix& full);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(vech_.size()); }
  const Vector& vech() const { return vech_; }
  double operator()(int i, int j) const;
  Matrix full() const;
  double max_abs() const { return vech_.size() == 0 ? 0.0 : vech_.cwiseAbs().maxCoeff(); }
  double trace() const;

  SymMat operator+(const SymMat& o) const;
  SymMat operator-(const SymMat& o) const;
  SymMat operator*(double s) const;
  friend SymMat operator*(double s, const SymMat& m) { return m * s; }
  bool operator==(const SymMat& o) const { return n_ == o.n_ && vech_ == o.vech_; }

 private:
  SymMat(int n, Vector vech) : n_(n), vech_(std::move(vech)) {}
  int n_ = 0;
  Vector vech_;
};

// Position of (i, j), i <= j, in the vech vector.
int vech_index(int n, int i, int j);
// Inverse of vech_index.
std::pair<int, int> vech_pair(int n, int a);

struct VechBasis {
  int n = 0;
  std::vector<SymMat> elements;

  int dim() const { return static_cast<int>(elements.size()); }
  const SymMat& operator[](int a) const { return elements[static_cast<std::size_t>(a)]; }
};

VechBasis sym_basis(int n);

/// A point of the open cone Sym+(n). Caches its extreme eigenvalues.
class SpdPoint {
 public:
  /// Throws DomainError unless lambda_min > spd_tol * max(1, lambda_max).
  explicit SpdPoint(SymMat mat, double spd_tol = kDefaultSpdTol);
  static SpdPoint identity(int n) { return SpdPoint(SymMat::identity(n)); }
  /// Non-throwing variant used by the finite-difference stencils.
  static bool is_spd(const SymMat& mat, double spd_tol = kDefaultSpdTol);

  int n() const { return mat_.n(); }
  const SymMat& mat() const { return mat_; }
  Matrix full() const { return mat_.full(); }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

 private:
  SymMat mat_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

/// An invertible n x n matrix.
class GroupElement {
 public:
  explicit GroupElement(Matrix mat, double det_tol = kDefaultDetTol);
  static GroupElement identity(int n) { return GroupElement(Matrix::Identity(n, n)); }

  int n() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

enum class SampleKind { Spd, Sym, GeneralLinear, Orthogonal };

SymMat sample_spd(int n, std::uint64_t seed);
SymMat sample_sym(int n, std::uint64_t seed);
GroupElement sample_general_linear(int n, std::uint64_t seed, double det_tol = kDefaultDetTol);
GroupElement sample_orthogonal(int n, std::uint64_t seed);
std::variant<SymMat, GroupElement> sample(SampleKind kind, int n, std::uint64_t seed);

/// The symmetric positive-definite square root Q diag(sqrt(lambda)) Q^T.
GroupElement sym_sqrt(const SpdPoint& sigma);
/// Same, for a raw symmetric matrix; throws DomainError if it is not SPD.
GroupElement sym_sqrt(const SymMat& sigma);

/// exp(A) for symmetric A via eigendecomposition.
Matrix sym_exp(const SymMat& a);

// Element-wise max |A - B|.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace gaussgeom
