#include "gaussgeom/invariant_family.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gaussgeom/gaussian_geometry.hpp"

namespace gaussgeom {

namespace {

// Generator values on whitened arguments.
double combine(const InvariantCubic& cubic, const Matrix& x, const Matrix& y, const Matrix& z, double tx,
               double ty, double tz) {
  return kernels::cubic_whitened(cubic.a, cubic.b, cubic.c, cubic.c2_weight, x, y, z, tx, ty, tz);
}

void require_order(const InvariantCubic& cubic) {
  if (cubic.n < 1) throw InvalidOrder("invariant cubic needs n >= 1");
}

ComponentArray components_at(const InvariantCubic& cubic, const VechBasis& basis, const SpdPoint& sigma) {
  if (sigma.n() != cubic.n) throw ShapeError("order mismatch between cubic field and point");
  // Extended precision for the same reason as the Fisher field: these
  // components feed finite differences.
  using LD = long double;
  const kernels::Whiten<LD> w(sigma.full().cast<LD>());
  const int d = basis.dim();
  std::vector<kernels::Mat<LD>> wb;
  std::vector<LD> tr;
  for (const auto& e : basis.elements) {
    wb.push_back(w(e.full().cast<LD>()));
    tr.push_back(wb.back().trace());
  }
  ComponentArray t(3, d);
  for_each_sorted_index(3, d, [&](const std::vector<int>& idx) {
    const auto a = static_cast<std::size_t>(idx[0]);
    const auto b = static_cast<std::size_t>(idx[1]);
    const auto c = static_cast<std::size_t>(idx[2]);
    t[t.offset(idx)] = static_cast<double>(kernels::cubic_whitened<LD>(
        cubic.a, cubic.b, cubic.c, cubic.c2_weight, wb[a], wb[b], wb[c], tr[a], tr[b], tr[c]));
  });
  fill_symmetric(t);
  return t;
}

}  // namespace

double RawCubicTensor::operator()(const SymMat& x, const SymMat& y, const SymMat& z) const {
  if (x.n() != n || y.n() != n || z.n() != n) throw ShapeError("order mismatch in cubic tensor evaluation");
  return components.contract({&x.vech(), &y.vech(), &z.vech()});
}

double invariant_cubic_eval(const InvariantCubic& cubic, const SpdPoint& sigma, const SymMat& x,
                            const SymMat& y, const SymMat& z) {
  require_order(cubic);
  if (sigma.n() != cubic.n) throw ShapeError("order mismatch between cubic field and point");
  const Whitener w(sigma);
  const Matrix wx = w(x);
  const Matrix wy = w(y);
  const Matrix wz = w(z);
  return combine(cubic, wx, wy, wz, wx.trace(), wy.trace(), wz.trace());
}

TensorField invariant_cubic_field(const InvariantCubic& cubic) {
  require_order(cubic);
  TensorField f;
  f.valence = 3;
  f.n = cubic.n;
  f.eval = [cubic, basis = sym_basis(cubic.n)](const SpdPoint& sigma) {
    return components_at(cubic, basis, sigma);
  };
  return f;
}

RawCubicTensor raw_components(const InvariantCubic& cubic) {
  require_order(cubic);
  return RawCubicTensor{cubic.n, components_at(cubic, sym_basis(cubic.n), SpdPoint::identity(cubic.n))};
}

Verdict on_invariance_check(const RawCubicTensor& t, int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("on_invariance_check needs trials >= 1");
  const int n = t.n;
  const double t_max = t.components.max_abs();
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = seed + 7919ULL * static_cast<std::uint64_t>(trial);
    const GroupElement k = sample_orthogonal(n, s);
    const std::array<SymMat, 3> args{sample_sym(n, s + 1), sample_sym(n, s + 2), sample_sym(n, s + 3)};
    std::array<SymMat, 3> rotated;
    double bound = t_max;
    double bound_rot = t_max;
    for (std::size_t i = 0; i < 3; ++i) {
      rotated[i] = pushforward(k, args[i]);
      bound *= args[i].vech().lpNorm<1>();
      bound_rot *= rotated[i].vech().lpNorm<1>();
    }
    const double diff = std::abs(t(rotated[0], rotated[1], rotated[2]) - t(args[0], args[1], args[2]));
    const double scale = std::max(bound, bound_rot);
    if (diff > 0.0) worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return make_verdict("on-invariance", n, std::nullopt, worst, tol);
}

}  // namespace gaussgeom
