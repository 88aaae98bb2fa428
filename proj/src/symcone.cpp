#include "gaussgeom/symcone.hpp"

#include <cmath>
#include <random>
#include <string>

namespace gaussgeom {

namespace {

void require_order(int n) {
  if (n < 1) throw InvalidOrder("matrix order must be >= 1, got " + std::to_string(n));
}

// Each sample kind draws from its own stream so that e.g. sample_sym(n, s)
// and sample_spd(n, s) are not trivially related.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return std::mt19937_64(seq);
}

Matrix standard_normal(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

}  // namespace

int vech_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  // Rows 0..i-1 contribute n, n-1, ..., n-i+1 entries.
  return i * n - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> vech_pair(int n, int a) {
  int i = 0;
  while (a >= n - i) {
    a -= n - i;
    ++i;
  }
  return {i, i + a};
}

SymMat SymMat::zero(int n) {
  require_order(n);
  return SymMat(n, Vector::Zero(vech_size(n)));
}

SymMat SymMat::identity(int n) {
  SymMat m = zero(n);
  for (int i = 0; i < n; ++i) m.vech_[vech_index(n, i, i)] = 1.0;
  return m;
}

SymMat SymMat::diagonal(const std::vector<double>& diag) {
  const int n = static_cast<int>(diag.size());
  SymMat m = zero(n);
  for (int i = 0; i < n; ++i) m.vech_[vech_index(n, i, i)] = diag[static_cast<std::size_t>(i)];
  return m;
}

SymMat SymMat::from_vech(int n, Vector vech) {
  require_order(n);
  if (vech.size() != vech_size(n))
    throw ShapeError("vech of length " + std::to_string(vech.size()) + " does not match order " +
                     std::to_string(n));
  return SymMat(n, std::move(vech));
}

SymMat SymMat::from_upper(const Matrix& full) {
  if (full.rows() != full.cols()) throw ShapeError("matrix is not square");
  const int n = static_cast<int>(full.rows());
  require_order(n);
  Vector v(vech_size(n));
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v[a++] = full(i, j);
  return SymMat(n, std::move(v));
}

SymMat SymMat::symmetrized(const Matrix& full) {
  if (full.rows() != full.cols()) throw ShapeError("matrix is not square");
  const int n = static_cast<int>(full.rows());
  require_order(n);
  Vector v(vech_size(n));
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v[a++] = i == j ? full(i, i) : 0.5 * (full(i, j) + full(j, i));
  return SymMat(n, std::move(v));
}

double SymMat::operator()(int i, int j) const { return vech_[vech_index(n_, i, j)]; }

Matrix SymMat::full() const {
  Matrix m(n_, n_);
  int a = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      m(i, j) = vech_[a];
      m(j, i) = vech_[a];
      ++a;
    }
  return m;
}

double SymMat::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += vech_[vech_index(n_, i, i)];
  return t;
}

SymMat SymMat::operator+(const SymMat& o) const {
  if (o.n_ != n_) throw ShapeError("order mismatch in SymMat addition");
  return SymMat(n_, vech_ + o.vech_);
}

SymMat SymMat::operator-(const SymMat& o) const {
  if (o.n_ != n_) throw ShapeError("order mismatch in SymMat subtraction");
  return SymMat(n_, vech_ - o.vech_);
}

SymMat SymMat::operator*(double s) const { return SymMat(n_, vech_ * s); }

VechBasis sym_basis(int n) {
  require_order(n);
  VechBasis basis;
  basis.n = n;
  const int d = vech_size(n);
  basis.elements.reserve(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    Vector v = Vector::Zero(d);
    v[a] = 1.0;
    basis.elements.push_back(SymMat::from_vech(n, std::move(v)));
  }
  return basis;
}

SpdPoint::SpdPoint(SymMat mat, double spd_tol) : mat_(std::move(mat)) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_.full(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
  lambda_min_ = es.eigenvalues().minCoeff();
  lambda_max_ = es.eigenvalues().maxCoeff();
  if (!(lambda_min_ > spd_tol * std::max(1.0, lambda_max_)))
    throw DomainError("matrix is not positive definite (lambda_min = " +
                      std::to_string(lambda_min_) + ")");
}

bool SpdPoint::is_spd(const SymMat& mat, double spd_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat.full(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  return es.eigenvalues().minCoeff() > spd_tol * std::max(1.0, es.eigenvalues().maxCoeff());
}

GroupElement::GroupElement(Matrix mat, double det_tol) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols()) throw ShapeError("group element must be square");
  require_order(static_cast<int>(mat_.rows()));
  if (!(std::abs(mat_.determinant()) > det_tol)) throw DomainError("group element is singular");
}

SymMat sample_spd(int n, std::uint64_t seed) {
  require_order(n);
  auto rng = make_rng(seed, 1);
  const Matrix a = standard_normal(n, n, rng);
  return SymMat::symmetrized(a * a.transpose() + kSpdJitter * Matrix::Identity(n, n));
}

SymMat sample_sym(int n, std::uint64_t seed) {
  require_order(n);
  auto rng = make_rng(seed, 2);
  return SymMat::symmetrized(standard_normal(n, n, rng));
}

GroupElement sample_general_linear(int n, std::uint64_t seed, double det_tol) {
  require_order(n);
  auto rng = make_rng(seed, 3);
  for (;;) {
    Matrix a = standard_normal(n, n, rng);
    if (std::abs(a.determinant()) > det_tol) return GroupElement(std::move(a), det_tol);
  }
}

GroupElement sample_orthogonal(int n, std::uint64_t seed) {
  require_order(n);
  auto rng = make_rng(seed, 4);
  const Matrix a = standard_normal(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  // Make diag(R) positive: A = (Q D)(D R) with D = sign(diag R).
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return GroupElement(std::move(q));
}

std::variant<SymMat, GroupElement> sample(SampleKind kind, int n, std::uint64_t seed) {
  switch (kind) {
    case SampleKind::Spd: return sample_spd(n, seed);
    case SampleKind::Sym: return sample_sym(n, seed);
    case SampleKind::GeneralLinear: return sample_general_linear(n, seed);
    case SampleKind::Orthogonal: return sample_orthogonal(n, seed);
  }
  throw std::logic_error("unknown sample kind");
}

GroupElement sym_sqrt(const SpdPoint& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.full());
  if (es.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
  const Matrix& q = es.eigenvectors();
  const Matrix h = q * es.eigenvalues().cwiseSqrt().asDiagonal() * q.transpose();
  return GroupElement(SymMat::symmetrized(h).full(), 0.0);
}

GroupElement sym_sqrt(const SymMat& sigma) { return sym_sqrt(SpdPoint(sigma)); }

Matrix sym_exp(const SymMat& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.full());
  if (es.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
  const Matrix& q = es.eigenvectors();
  return q * es.eigenvalues().array().exp().matrix().asDiagonal() * q.transpose();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("size mismatch");
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace gaussgeom
