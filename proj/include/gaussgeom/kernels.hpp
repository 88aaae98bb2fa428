#pragma once

// Closed-form trace kernels shared by the double-precision API and the
// extended-precision invariance measurements. Arguments are full symmetric
// matrices; Sigma must be SPD.

#include <Eigen/Dense>

#include "gaussgeom/errors.hpp"

namespace gaussgeom::kernels {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// X -> L^{-1} X L^{-T} for the Cholesky factor L of Sigma.
template <typename T>
class Whiten {
 public:
  explicit Whiten(const Mat<T>& sigma) {
    Eigen::LLT<Mat<T>> llt(sigma);
    if (llt.info() != Eigen::Success) throw DomainError("Cholesky factorization failed");
    chol_ = llt.matrixL();
  }

  Mat<T> operator()(const Mat<T>& x) const {
    const auto l = chol_.template triangularView<Eigen::Lower>();
    const Mat<T> half = l.solve(x);                // L^{-1} X
    const Mat<T> w = l.solve(half.transpose());    // L^{-1} X L^{-T}, X symmetric
    return T(0.5) * (w + w.transpose());
  }

 private:
  Mat<T> chol_;
};

// tr(AB), tr(ABC) for symmetric arguments.
template <typename T>
T trace2(const Mat<T>& a, const Mat<T>& b) {
  return a.cwiseProduct(b).sum();
}

template <typename T>
T trace3(const Mat<T>& a, const Mat<T>& b, const Mat<T>& c) {
  return (a * b).cwiseProduct(c).sum();
}

/// a C1 + b C2 + c C3 on already-whitened arguments with traces tx, ty, tz.
template <typename T>
T cubic_whitened(T a, T b, T c, T c2_weight, const Mat<T>& x, const Mat<T>& y, const Mat<T>& z, T tx, T ty,
                 T tz) {
  const T c1 = trace3(x, y, z);
  const T c2 = c2_weight * (tx * trace2(y, z) + ty * trace2(x, z) + tz * trace2(x, y));
  const T c3 = tx * ty * tz;
  return a * c1 + b * c2 + c * c3;
}

template <typename T>
T fisher(const Mat<T>& sigma, const Mat<T>& x, const Mat<T>& y) {
  const Whiten<T> w(sigma);
  return T(0.5) * trace2(w(x), w(y));
}

template <typename T>
T cubic(T a, T b, T c, T c2_weight, const Mat<T>& sigma, const Mat<T>& x, const Mat<T>& y, const Mat<T>& z) {
  const Whiten<T> w(sigma);
  const Mat<T> wx = w(x);
  const Mat<T> wy = w(y);
  const Mat<T> wz = w(z);
  return cubic_whitened(a, b, c, c2_weight, wx, wy, wz, wx.trace(), wy.trace(), wz.trace());
}

}  // namespace gaussgeom::kernels
