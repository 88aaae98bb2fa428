#include "gaussgeom/connections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussgeom {

namespace {

void require_field(const TensorField& f, int n) {
  if (!f.eval) throw std::invalid_argument("tensor field has no evaluator");
  if (f.n != n) throw ShapeError("order mismatch between tensor field and point");
}

std::size_t pow_size(int d, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(d);
  return r;
}

// T'_{a1..ak} = sum T_{d1..dk} M_{d1 a1} ... M_{dk ak}
ComponentArray transform_slots(const ComponentArray& t, const Matrix& m) {
  const int d = t.dim();
  const int k = t.valence();
  ComponentArray cur = t;
  for (int slot = 0; slot < k; ++slot) {
    ComponentArray next(k, d);
    const std::size_t inner = pow_size(d, k - slot - 1);
    const std::size_t outer = pow_size(d, slot);
    for (std::size_t o = 0; o < outer; ++o)
      for (int a = 0; a < d; ++a)
        for (std::size_t i = 0; i < inner; ++i) {
          double s = 0.0;
          for (int e = 0; e < d; ++e)
            s += cur[(o * static_cast<std::size_t>(d) + static_cast<std::size_t>(e)) * inner + i] * m(e, a);
          next[(o * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)) * inner + i] = s;
        }
    cur = std::move(next);
  }
  return cur;
}

ComponentArray christoffel_for(const TensorField& g, const SpdPoint& sigma, const FdScheme& scheme,
                               ChristoffelSource source) {
  if (source == ChristoffelSource::Auto && g.christoffel) return g.christoffel(sigma);
  return christoffel_fd(g, sigma, scheme).gamma;
}

}  // namespace

double FdScheme::step_at(const SpdPoint& sigma) const {
  if (!(step >= 1e-8 && step <= 1e-2))
    throw std::invalid_argument("finite-difference step must lie in [1e-8, 1e-2], got " + std::to_string(step));
  return step * sigma.lambda_min();
}

SymMat christoffel_closed(const SpdPoint& sigma, const SymMat& x, const SymMat& y) {
  if (x.n() != sigma.n() || y.n() != sigma.n()) throw ShapeError("order mismatch in christoffel_closed");
  Eigen::LLT<Matrix> llt(sigma.full());
  const Matrix xf = x.full();
  const Matrix yf = y.full();
  // Both products formed separately, so swapping X and Y gives bitwise the same result.
  const Matrix xsy = xf * llt.solve(yf);
  const Matrix ysx = yf * llt.solve(xf);
  return SymMat::symmetrized(-0.5 * (xsy + ysx));
}

ChristoffelData christoffel_closed_data(const SpdPoint& sigma) {
  const VechBasis basis = sym_basis(sigma.n());
  const int d = basis.dim();
  ComponentArray gamma(3, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const SymMat g = christoffel_closed(sigma, basis[a], basis[b]);
      for (int c = 0; c < d; ++c) {
        gamma.at({c, a, b}) = g.vech()[c];
        gamma.at({c, b, a}) = g.vech()[c];
      }
    }
  return {sigma, std::move(gamma)};
}

namespace {

// Central differences of `field` along each of `dirs` with steps h and h/2,
// combined by one Richardson step (fourth order). h is halved while a stencil
// point leaves the cone. Result index 0 is the direction.
ComponentArray directional_partials(const TensorField& field, const SpdPoint& sigma, const std::vector<SymMat>& dirs,
                                    double h) {
  const int d = static_cast<int>(dirs.size());
  for (int attempt = 0;; ++attempt) {
    bool inside = true;
    for (int w = 0; w < d && inside; ++w) {
      const SymMat& dir = dirs[static_cast<std::size_t>(w)];
      inside = SpdPoint::is_spd(sigma.mat() + h * dir) && SpdPoint::is_spd(sigma.mat() - h * dir);
    }
    if (inside) break;
    if (attempt == FdScheme::kMaxHalvings)
      throw StepTooLarge("finite-difference stencil leaves the SPD cone after " +
                         std::to_string(FdScheme::kMaxHalvings) + " halvings");
    h *= 0.5;
  }

  const int k = field.valence;
  const std::size_t block = pow_size(d, k);
  auto eval = [&](const SymMat& at) {
    ComponentArray t = field.eval(SpdPoint(at));
    if (t.size() != block) throw ShapeError("field returned an array of the wrong size");
    return t;
  };
  // Divide by the displacement actually realized after rounding Sigma + t dir,
  // projected on dir. Exact for basis directions.
  auto realized = [&](const SymMat& at, const SymMat& dir) {
    const Matrix dm = dir.full();
    return (at.full() - sigma.full()).cwiseProduct(dm).sum() / dm.squaredNorm();
  };
  ComponentArray out(k + 1, d);
  for (int w = 0; w < d; ++w) {
    const SymMat& dir = dirs[static_cast<std::size_t>(w)];
    const SymMat p1 = sigma.mat() + h * dir;
    const SymMat m1 = sigma.mat() - h * dir;
    const SymMat p2 = sigma.mat() + (0.5 * h) * dir;
    const SymMat m2 = sigma.mat() - (0.5 * h) * dir;
    const double span1 = realized(p1, dir) - realized(m1, dir);
    const double span2 = realized(p2, dir) - realized(m2, dir);
    const ComponentArray tp1 = eval(p1);
    const ComponentArray tm1 = eval(m1);
    const ComponentArray tp2 = eval(p2);
    const ComponentArray tm2 = eval(m2);
    for (std::size_t i = 0; i < block; ++i) {
      const double wide = (tp1[i] - tm1[i]) / span1;
      const double narrow = (tp2[i] - tm2[i]) / span2;
      out[static_cast<std::size_t>(w) * block + i] = (4.0 * narrow - wide) / 3.0;
    }
  }
  return out;
}

}  // namespace

ComponentArray partial_derivatives(const TensorField& field, const SpdPoint& sigma, const FdScheme& scheme) {
  require_field(field, sigma.n());
  return directional_partials(field, sigma, sym_basis(sigma.n()).elements, scheme.step_at(sigma));
}

ChristoffelData christoffel_fd(const TensorField& g, const SpdPoint& sigma, const FdScheme& scheme) {
  if (g.valence != 2) throw ShapeError("christoffel_fd needs a valence-2 metric field");
  require_field(g, sigma.n());
  const int n = sigma.n();
  const VechBasis basis = sym_basis(n);
  const int d = basis.dim();

  // Chart y -> Sigma + L Y(y) L^T. Column i of m is vech(L E_i L^T).
  Eigen::LLT<Matrix> chol(sigma.full());
  if (chol.info() != Eigen::Success) throw DomainError("Cholesky factorization failed");
  const Matrix l = chol.matrixL();
  std::vector<SymMat> dirs;
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    dirs.push_back(SymMat::symmetrized(l * basis[i].full() * l.transpose()));
    m.col(i) = dirs.back().vech();
  }
  const Matrix m_inv = m.fullPivLu().inverse();

  // The chart is whitened at the base point, so the step is not rescaled by
  // Sigma. The change back to vech coordinates amplifies the truncation error by
  // up to cond(Sigma), so the wider step sqrt(step) trades it against rounding.
  const ComponentArray dg = directional_partials(g, sigma, dirs, std::sqrt(scheme.step_at(SpdPoint::identity(1))));
  const ComponentArray g0 = g.eval(sigma);
  auto as_matrix = [d](const ComponentArray& t, std::size_t offset) {
    Matrix out(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out(a, b) = t[offset + static_cast<std::size_t>(a * d + b)];
    return out;
  };
  const std::size_t block = static_cast<std::size_t>(d * d);
  const Matrix gt = m.transpose() * as_matrix(g0, 0) * m;
  std::vector<Matrix> dgt;  // dgt[k](i, j) = d_k of the chart metric
  for (int k = 0; k < d; ++k) dgt.push_back(m.transpose() * as_matrix(dg, static_cast<std::size_t>(k) * block) * m);

  Eigen::LLT<Matrix> llt(gt);
  if (llt.info() != Eigen::Success) throw DomainError("metric is not positive definite at the base point");

  // Chart symbols, then the linear change back to vech coordinates:
  // Gamma^c_{ab} = m_{ck} Gamma~^k_{ij} m_inv_{ia} m_inv_{jb}.
  std::vector<Matrix> chart_gamma(static_cast<std::size_t>(d), Matrix(d, d));  // [k](i, j)
  Vector first_kind(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      for (int e = 0; e < d; ++e)
        first_kind[e] = 0.5 * (dgt[static_cast<std::size_t>(i)](j, e) + dgt[static_cast<std::size_t>(j)](i, e) -
                               dgt[static_cast<std::size_t>(e)](i, j));
      const Vector second_kind = llt.solve(first_kind);
      for (int k = 0; k < d; ++k) {
        chart_gamma[static_cast<std::size_t>(k)](i, j) = second_kind[k];
        chart_gamma[static_cast<std::size_t>(k)](j, i) = second_kind[k];
      }
    }

  ComponentArray gamma(3, d);
  for (int k = 0; k < d; ++k) {
    const Matrix lowered = m_inv.transpose() * chart_gamma[static_cast<std::size_t>(k)] * m_inv;  // (a, b)
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        const double v = 0.5 * (lowered(a, b) + lowered(b, a));
        for (int c = 0; c < d; ++c) gamma.at({c, a, b}) += m(c, k) * v;
      }
  }
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < a; ++b) gamma.at({c, a, b}) = gamma.at({c, b, a});
  return {sigma, std::move(gamma)};
}

ComponentArray cov_deriv(const TensorField& field, const TensorField& g, const SpdPoint& sigma,
                         const FdScheme& scheme, ChristoffelSource source) {
  require_field(field, sigma.n());
  require_field(g, sigma.n());
  const ComponentArray t = field.eval(sigma);
  ComponentArray out = partial_derivatives(field, sigma, scheme);
  const ComponentArray gamma = christoffel_for(g, sigma, scheme, source);
  const int d = t.dim();
  const int k = t.valence();

  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::vector<int> idx = out.unflatten(flat);  // idx[0] = w, idx[1..k] = slots
    const int w = idx[0];
    std::vector<int> slots(idx.begin() + 1, idx.end());
    double correction = 0.0;
    for (int s = 0; s < k; ++s) {
      const int original = slots[static_cast<std::size_t>(s)];
      for (int e = 0; e < d; ++e) {
        const double ge = gamma.at({e, w, original});
        if (ge == 0.0) continue;
        slots[static_cast<std::size_t>(s)] = e;
        correction += ge * t[t.offset(slots)];
      }
      slots[static_cast<std::size_t>(s)] = original;
    }
    out[flat] -= correction;
  }
  return out;
}

double field_scale(const TensorField& field, const SpdPoint& sigma) {
  require_field(field, sigma.n());
  return std::max({1.0, field.eval(sigma).max_abs(), field.eval(SpdPoint::identity(sigma.n())).max_abs()});
}

Verdict conjugate_symmetry_check(const TensorField& c, const TensorField& g, const SpdPoint& sigma,
                                 const FdScheme& scheme, double tol, ChristoffelSource source) {
  const ComponentArray nabla = cov_deriv(c, g, sigma, scheme, source);
  double asym = 0.0;
  for (std::size_t flat = 0; flat < nabla.size(); ++flat) {
    std::vector<int> idx = nabla.unflatten(flat);
    std::swap(idx[0], idx[1]);
    asym = std::max(asym, std::abs(nabla[flat] - nabla[nabla.offset(idx)]));
  }
  const double scale = std::max(nabla.max_abs(), field_scale(c, sigma));
  return make_verdict("conjugate-symmetry", sigma.n(), sigma.mat(), asym / scale, tol);
}

Verdict parallel_check(const TensorField& c, const TensorField& g, const SpdPoint& sigma,
                       const FdScheme& scheme, double tol, ChristoffelSource source) {
  const ComponentArray nabla = cov_deriv(c, g, sigma, scheme, source);
  return make_verdict("parallel", sigma.n(), sigma.mat(), nabla.max_abs() / field_scale(c, sigma), tol);
}

Verdict metric_compatibility_check(const TensorField& g, const SpdPoint& sigma, const FdScheme& scheme,
                                   double tol, ChristoffelSource source) {
  const ComponentArray nabla = cov_deriv(g, g, sigma, scheme, source);
  return make_verdict("metric-compatibility", sigma.n(), sigma.mat(), nabla.max_abs() / field_scale(g, sigma),
                      tol);
}

ComponentArray canonical_deriv(const TensorField& field, const SymMat& v, const FdScheme& scheme) {
  const int n = v.n();
  require_field(field, n);
  const SpdPoint identity = SpdPoint::identity(n);
  const double t = scheme.step_at(identity) / std::max(1.0, v.max_abs());
  const VechBasis basis = sym_basis(n);
  const int d = basis.dim();

  // Pullback at the identity of the field along the flow of (X^v)^M, X^v = -v/2:
  // phi_s(q) = exp(-s X^v) q exp(-s X^v)^T, d phi_s(Y) = exp(sv/2) Y exp(sv/2).
  auto pullback = [&](double s) {
    const Matrix u = sym_exp(v * (0.5 * s));
    const SpdPoint moved(SymMat::symmetrized(u * u.transpose()));
    Matrix coords(d, d);  // column a = vech of d phi_s(E_a)
    for (int a = 0; a < d; ++a)
      coords.col(a) = SymMat::symmetrized(u * basis[a].full() * u.transpose()).vech();
    return transform_slots(field.eval(moved), coords);
  };

  const ComponentArray fwd = pullback(t);
  const ComponentArray bwd = pullback(-t);
  ComponentArray out(fwd.valence(), d);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (fwd[i] - bwd[i]) / (2.0 * t);
  return out;
}

ComponentArray contract_direction(const ComponentArray& nabla, const SymMat& v) {
  const int d = nabla.dim();
  if (v.dim() != d) throw ShapeError("direction does not match the tensor's dimension");
  if (nabla.valence() < 2) throw ShapeError("nothing left after contracting a valence-1 array");
  ComponentArray out(nabla.valence() - 1, d);
  const std::size_t block = out.size();
  for (int w = 0; w < d; ++w)
    for (std::size_t i = 0; i < block; ++i) out[i] += v.vech()[w] * nabla[static_cast<std::size_t>(w) * block + i];
  return out;
}

double phi_eta_check(const SymMat& a, double t) {
  if (!(t > 0.0 && t <= 1e-2)) throw std::invalid_argument("phi_eta_check needs t in (0, 1e-2]");
  auto orbit = [&](double s) {
    const Matrix e = sym_exp(a * (-s));
    return Matrix(e * e.transpose());
  };
  const Matrix diff = (orbit(t) - orbit(-t)) / (2.0 * t);
  return max_abs_diff(diff, -2.0 * a.full());
}

}  // namespace gaussgeom
