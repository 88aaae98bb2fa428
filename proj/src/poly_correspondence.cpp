#include "gaussgeom/poly_correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace gaussgeom {

namespace {

std::vector<double> ones_prefix(int n, int k) {
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = 1.0;
  return x;
}

double power_sum(const std::vector<double>& x, int k) {
  double s = 0.0;
  for (double v : x) s += std::pow(v, k);
  return s;
}

// Rows: monomial-type coefficients of p3, p2 p1, p1^3 at n.
Matrix power_sum_monomials(int n) {
  const int m = poly_dim_upper(n);
  const std::vector<std::function<double(const std::vector<double>&)>> gens = {
      [](const std::vector<double>& x) { return power_sum(x, 3); },
      [](const std::vector<double>& x) { return power_sum(x, 2) * power_sum(x, 1); },
      [](const std::vector<double>& x) { return std::pow(power_sum(x, 1), 3); },
  };
  Matrix rows(3, m);
  for (int g = 0; g < 3; ++g) {
    const MonomialCoeffs mc = diag_restrict(gens[static_cast<std::size_t>(g)], n);
    rows(g, 0) = mc.c300;
    if (m > 1) rows(g, 1) = *mc.c210;
    if (m > 2) rows(g, 2) = *mc.c111;
  }
  return rows;
}

}  // namespace

SymCubicPoly::SymCubicPoly(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n < 1) throw InvalidOrder("polynomial needs n >= 1");
  if (static_cast<int>(coeffs_.size()) != poly_dim_upper(n))
    throw ShapeError("expected " + std::to_string(poly_dim_upper(n)) + " power-sum coefficients for n = " +
                     std::to_string(n));
}

SymCubicPoly SymCubicPoly::zero(int n) {
  return SymCubicPoly(n, std::vector<double>(static_cast<std::size_t>(poly_dim_upper(n)), 0.0));
}

std::optional<double> SymCubicPoly::p2p1() const {
  if (coeffs_.size() < 2) return std::nullopt;
  return coeffs_[1];
}

std::optional<double> SymCubicPoly::p1_cubed() const {
  if (coeffs_.size() < 3) return std::nullopt;
  return coeffs_[2];
}

double SymCubicPoly::operator()(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw ShapeError("polynomial evaluated at a point of the wrong size");
  const double p1 = power_sum(x, 1);
  double v = coeffs_[0] * power_sum(x, 3);
  if (coeffs_.size() > 1) v += coeffs_[1] * power_sum(x, 2) * p1;
  if (coeffs_.size() > 2) v += coeffs_[2] * p1 * p1 * p1;
  return v;
}

double cubic_form(const RawCubicTensor& t, const SymMat& x) { return t(x, x, x); }

RawCubicTensor polarize(const CubicFormFn& q, int n) {
  const VechBasis basis = sym_basis(n);
  ComponentArray comps(3, basis.dim());
  for_each_sorted_index(3, basis.dim(), [&](const std::vector<int>& idx) {
    const SymMat& x = basis[idx[0]];
    const SymMat& y = basis[idx[1]];
    const SymMat& z = basis[idx[2]];
    const double v = q(x + y + z) - q(x + y) - q(y + z) - q(x + z) + q(x) + q(y) + q(z);
    comps[comps.offset(idx)] = v / 6.0;
  });
  fill_symmetric(comps);
  return RawCubicTensor{n, std::move(comps)};
}

bool is_cubic_homogeneous(const CubicFormFn& q, int n, std::uint64_t seed, int probes, double tol) {
  for (int p = 0; p < probes; ++p) {
    const SymMat x = sample_sym(n, seed + static_cast<std::uint64_t>(p));
    const double base = q(x);
    const double scaled = q(x * 2.0);
    if (std::abs(scaled - 8.0 * base) > tol * std::max({1.0, std::abs(scaled), std::abs(base)})) return false;
  }
  return true;
}

MonomialCoeffs diag_restrict(const std::function<double(const std::vector<double>&)>& f, int n) {
  if (n < 1) throw InvalidOrder("diag_restrict needs n >= 1");
  MonomialCoeffs m;
  m.c300 = f(ones_prefix(n, 1));
  if (n >= 2) m.c210 = (f(ones_prefix(n, 2)) - 2.0 * m.c300) / 2.0;
  if (n >= 3) m.c111 = f(ones_prefix(n, 3)) - 3.0 * m.c300 - 6.0 * *m.c210;
  return m;
}

MonomialCoeffs diag_restrict(const RawCubicTensor& t) {
  return diag_restrict([&](const std::vector<double>& lambda) { return cubic_form(t, SymMat::diagonal(lambda)); },
                       t.n);
}

SymCubicPoly to_power_sums(const MonomialCoeffs& m, int n) {
  if (n >= 3) {
    if (!m.c210 || !m.c111) throw ShapeError("monomial coefficients incomplete for n >= 3");
    const double w = *m.c111 / 6.0;
    const double v = *m.c210 - 3.0 * w;
    return SymCubicPoly(n, {m.c300 - v - w, v, w});
  }
  if (n == 2) {
    if (!m.c210) throw ShapeError("monomial coefficients incomplete for n = 2");
    const double v = *m.c210;
    return SymCubicPoly(n, {m.c300 - v, v});
  }
  return SymCubicPoly(n, {m.c300});
}

SymCubicPoly decompose(const RawCubicTensor& t) { return to_power_sums(diag_restrict(t), t.n); }

SymCubicPoly phi(const InvariantCubic& cubic) { return decompose(raw_components(cubic)); }

InvariantCubic phi_inverse(const SymCubicPoly& p) {
  InvariantCubic c{p.n(), p.p3(), 0.0, 0.0};
  if (auto v = p.p2p1()) c.b = *v;
  if (auto w = p.p1_cubed()) c.c = *w;
  return c;
}

int dimension(int n) {
  if (n < 1) throw InvalidOrder("dimension needs n >= 1");
  const Matrix rows = power_sum_monomials(n);
  const Eigen::JacobiSVD<Matrix> svd(rows);
  const Vector& s = svd.singularValues();
  const double threshold = 1e-9 * s.maxCoeff();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > threshold) ++rank;
  return rank;
}

std::vector<Eigen::Vector3d> power_sum_relations(int n) {
  if (n < 1) throw InvalidOrder("power_sum_relations needs n >= 1");
  // Columns of rows^T are the generators; its kernel holds the relations.
  const Matrix cols = power_sum_monomials(n).transpose();
  Eigen::FullPivLU<Matrix> lu(cols);
  lu.setThreshold(1e-9);
  const Matrix kernel = lu.kernel();
  std::vector<Eigen::Vector3d> out;
  if (lu.rank() == 3) return out;
  for (int j = 0; j < kernel.cols(); ++j) {
    Eigen::Vector3d v = kernel.col(j);
    for (int i = 2; i >= 0; --i)
      if (std::abs(v[i]) > 1e-12) {
        v /= v[i];
        break;
      }
    out.push_back(v);
  }
  return out;
}

}  // namespace gaussgeom
