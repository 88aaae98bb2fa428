#include <doctest.h>

#include <array>
#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

#include "gaussgeom/gaussian_geometry.hpp"
#include "gaussgeom/suites.hpp"
#include "test_util.hpp"

using namespace gaussgeom;
using gaussgeom::test::rel_err;

namespace {

// E[f(x)] for x ~ N(0,1) by composite Simpson on [-12, 12].
template <typename F>
double gauss_expect(F f) {
  const int m = 24000;
  const double a = -12.0, h = 24.0 / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double x = a + i * h;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f(x) * std::exp(-0.5 * x * x);
  }
  return s * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
}

SymMat s1(double v) { return SymMat::diagonal({v}); }

double cond(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

}  // namespace

TEST_SUITE("gaussian-geometry") {

TEST_CASE("fisher_at examples") {
  const SymMat i2 = SymMat::identity(2);
  CHECK(fisher_at(SpdPoint::identity(2), i2, i2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fisher_at(SpdPoint(s1(2.0)), s1(1.0), s1(1.0)) == doctest::Approx(0.125).epsilon(1e-15));
  // Same value transported from the identity with h = sqrt(2).
  CHECK(fisher_at(SpdPoint::identity(1), s1(0.5), s1(0.5)) == doctest::Approx(0.125).epsilon(1e-15));

  const double moment = gauss_expect([](double x) { return std::pow(0.5 * (x * x - 1.0), 2); });
  CHECK(moment == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fisher_at(SpdPoint::identity(1), s1(1.0), s1(1.0)) == doctest::Approx(moment).epsilon(1e-10));
}

TEST_CASE("ac_alpha_at examples") {
  for (int n = 1; n <= 5; ++n) {
    const SymMat i = SymMat::identity(n);
    CHECK(ac_alpha_at({1.0}, SpdPoint::identity(n), i, i, i) == doctest::Approx(n).epsilon(1e-15));
  }
  const SpdPoint sigma(sample_spd(3, 4));
  CHECK(ac_alpha_at({0.0}, sigma, sample_sym(3, 1), sample_sym(3, 2), sample_sym(3, 3)) == 0.0);

  const double moment = gauss_expect([](double x) { return std::pow(0.5 * (x * x - 1.0), 3); });
  CHECK(moment == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ac_alpha_at({1.0}, SpdPoint::identity(1), s1(1), s1(1), s1(1)) == doctest::Approx(moment).epsilon(1e-10));
}

TEST_CASE("order mismatch is a shape error") {
  CHECK_THROWS_AS(fisher_at(SpdPoint::identity(2), SymMat::identity(3), SymMat::identity(2)), ShapeError);
  CHECK_THROWS_AS(ac_alpha_at({1.0}, SpdPoint::identity(2), SymMat::identity(2), SymMat::identity(2),
                              SymMat::identity(1)),
                  ShapeError);
  CHECK_THROWS_AS(act(GroupElement::identity(3), SpdPoint::identity(2)), ShapeError);
}

TEST_CASE("directional_score examples") {
  CHECK(directional_score(SpdPoint::identity(1), s1(1.0), Vector::Constant(1, 2.0)) == doctest::Approx(1.5));
  for (int n = 1; n <= 4; ++n)
    CHECK(directional_score(SpdPoint::identity(n), SymMat::identity(n), Vector::Zero(n)) ==
          doctest::Approx(-0.5 * n));
}

TEST_CASE("the score has zero mean") {
  const SpdPoint sigma(sample_spd(2, 8));
  const SymMat x = sample_sym(2, 9);
  const McEstimate e =
      mc_mean(sigma, [&](const Vector& v) { return directional_score(sigma, x, v); }, {200'000, 3, 65'536, 2});
  CHECK(std::abs(e.mean) < 5.0 * e.std_error);
}

TEST_CASE("mc_moment examples at n=1") {
  const McConfig cfg{1'000'000, 42, 65'536, 4};
  const McEstimate pair = mc_moment(SpdPoint::identity(1), {s1(1), s1(1)}, cfg);
  const McEstimate triple = mc_moment(SpdPoint::identity(1), {s1(1), s1(1), s1(1)}, cfg);
  CHECK(pair.samples == 1'000'000);
  CHECK(std::abs(pair.mean - 0.5) < 5.0 * pair.std_error);
  CHECK(std::abs(triple.mean - 1.0) < 5.0 * triple.std_error);
  CHECK(pair.std_error > 0.0);
}

TEST_CASE("mc_moment is deterministic and independent of thread count") {
  const SpdPoint sigma(sample_spd(2, 5));
  const std::vector<SymMat> dirs{sample_sym(2, 6), sample_sym(2, 7), sample_sym(2, 8)};
  const McEstimate a = mc_moment(sigma, dirs, {100'000, 9, 4096, 1});
  const McEstimate b = mc_moment(sigma, dirs, {100'000, 9, 4096, 1});
  const McEstimate c = mc_moment(sigma, dirs, {100'000, 9, 4096, 5});
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == c.std_error);
  const McEstimate d = mc_moment(sigma, dirs, {100'000, 10, 4096, 1});
  CHECK(a.mean != d.mean);
}

TEST_CASE("mc_moment arity") {
  const McConfig cfg{10, 0, 10, 1};
  CHECK_THROWS_AS(mc_moment(SpdPoint::identity(1), {s1(1)}, cfg), ArityError);
  CHECK_THROWS_AS(mc_moment(SpdPoint::identity(1), {s1(1), s1(1), s1(1), s1(1)}, cfg), ArityError);
}

TEST_CASE("Monte-Carlo agrees with the closed forms") {
  const McConfig cfg{200'000, 17, 65'536, 4};
  for (int n = 1; n <= 3; ++n)
    for (const SpdPoint& sigma : {SpdPoint::identity(n), SpdPoint(sample_spd(n, 70 + n))}) {
      const SymMat x = sample_sym(n, 80 + n), y = sample_sym(n, 90 + n), z = sample_sym(n, 100 + n);
      const McEstimate p = mc_moment(sigma, {x, y}, cfg);
      const McEstimate t = mc_moment(sigma, {x, y, z}, cfg);
      CHECK(std::abs(p.mean - fisher_at(sigma, x, y)) < 5.0 * p.std_error);
      CHECK(std::abs(t.mean - ac_alpha_at({1.0}, sigma, x, y, z)) < 5.0 * t.std_error);
    }
}

TEST_CASE("act and pushforward examples") {
  for (int n : {1, 2, 3}) {
    const GroupElement h = sample_general_linear(n, 3);
    const Matrix hht = h.mat() * h.mat().transpose();
    CHECK(max_abs_diff(act(h, SpdPoint::identity(n)).full(), hht) < 1e-14 * hht.cwiseAbs().maxCoeff());
    const GroupElement k = sample_orthogonal(n, 3);
    CHECK(max_abs_diff(act(k, SpdPoint::identity(n)).full(), Matrix::Identity(n, n)) < 1e-14);
    const SymMat x = sample_sym(n, 4);
    const SymMat px = pushforward(h, x);
    CHECK(max_abs_diff(px.full(), h.mat() * x.full() * h.mat().transpose()) < 1e-13);
  }
}

TEST_CASE("identity-point formulas") {
  for (int n : {1, 2, 3, 5})
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Matrix x = sample_sym(n, s).full(), y = sample_sym(n, s + 50).full(), z = sample_sym(n, s + 99).full();
      const double scale = x.norm() * y.norm() * (1.0 + z.norm());
      const SpdPoint id = SpdPoint::identity(n);
      CHECK(std::abs(fisher_at(id, SymMat::from_upper(x), SymMat::from_upper(y)) - 0.5 * (x * y).trace()) <
            1e-14 * scale);
      CHECK(std::abs(ac_alpha_at({-0.7}, id, SymMat::from_upper(x), SymMat::from_upper(y), SymMat::from_upper(z)) -
                     -0.7 * (x * y * z).trace()) < 1e-14 * scale);
    }
}

TEST_CASE("closed forms at a general point") {
  for (int n : {2, 3})
    for (std::uint64_t s = 0; s < 10; ++s) {
      const SpdPoint sigma(sample_spd(n, s));
      const Matrix si = sigma.full().inverse();
      const SymMat x = sample_sym(n, s + 1), y = sample_sym(n, s + 2), z = sample_sym(n, s + 3);
      const double g = 0.5 * (si * x.full() * si * y.full()).trace();
      const double c = (si * x.full() * si * y.full() * si * z.full()).trace();
      CHECK(rel_err(fisher_at(sigma, x, y), g) < 1e-9);
      CHECK(rel_err(ac_alpha_at({1.0}, sigma, x, y, z), c) < 1e-9);
    }
}

TEST_CASE("multilinearity") {
  for (int n : {1, 2, 3})
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SpdPoint sigma(sample_spd(n, s));
      const SymMat x1 = sample_sym(n, s + 1), x2 = sample_sym(n, s + 2), y = sample_sym(n, s + 3),
                   z = sample_sym(n, s + 4);
      const double a = 0.37 + static_cast<double>(s);
      const double g_lhs = fisher_at(sigma, a * x1 + x2, y);
      const double g_rhs = a * fisher_at(sigma, x1, y) + fisher_at(sigma, x2, y);
      const double g_scale = std::abs(a) * std::sqrt(fisher_at(sigma, x1, x1) * fisher_at(sigma, y, y)) +
                             std::sqrt(fisher_at(sigma, x2, x2) * fisher_at(sigma, y, y));
      CHECK(std::abs(g_lhs - g_rhs) < 1e-12 * g_scale);

      for (int slot = 0; slot < 3; ++slot) {
        std::array<SymMat, 3> lhs{y, z, y}, one{y, z, y}, two{y, z, y};
        lhs[slot] = a * x1 + x2;
        one[slot] = x1;
        two[slot] = x2;
        auto c = [&](const std::array<SymMat, 3>& v) { return ac_alpha_at({1.3}, sigma, v[0], v[1], v[2]); };
        const double scale = std::abs(a) * std::abs(c(one)) + std::abs(c(two)) + std::abs(c(lhs));
        CHECK(std::abs(c(lhs) - (a * c(one) + c(two))) < 1e-12 * std::max(scale, 1e-300));
      }
    }
}

TEST_CASE("ac_alpha_at is fully symmetric") {
  for (int n : {2, 3, 4})
    for (std::uint64_t s = 0; s < 10; ++s) {
      const SpdPoint sigma(sample_spd(n, s));
      std::array<SymMat, 3> v{sample_sym(n, s + 1), sample_sym(n, s + 2), sample_sym(n, s + 3)};
      const double ref = ac_alpha_at({1.0}, sigma, v[0], v[1], v[2]);
      std::array<int, 3> p{0, 1, 2};
      do {
        CHECK(std::abs(ac_alpha_at({1.0}, sigma, v[p[0]], v[p[1]], v[p[2]]) - ref) <=
              1e-13 * std::max(1.0, std::abs(ref)));
      } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("G-invariance, extended-precision measurement") {
  for (int n : {1, 2, 3, 5}) {
    double worst_g = 0.0, worst_c = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      const GroupElement h = sample_general_linear(n, 10 * t);
      const SpdPoint sigma(sample_spd(n, 10 * t + 1));
      const SymMat x = sample_sym(n, 10 * t + 2), y = sample_sym(n, 10 * t + 3), z = sample_sym(n, 10 * t + 4);
      worst_g = std::max(worst_g, fisher_invariance_error(h, sigma, x, y));
      worst_c = std::max(worst_c, cubic_invariance_error(InvariantCubic::amari_chentsov(n, 1.0), h, sigma, x, y, z));
    }
    CAPTURE(n);
    CHECK(worst_g < 1e-10);
    CHECK(worst_c < 1e-10);
  }
}

TEST_CASE("G-invariance in double precision, bounded by conditioning") {
  // Forming h Sigma h^T in double already perturbs the point by about
  // cond(h Sigma h^T) * eps, so the bound scales with it.
  const double eps = std::numeric_limits<double>::epsilon();
  for (int n : {1, 2, 3, 5})
    for (std::uint64_t t = 0; t < 100; ++t) {
      const GroupElement h = sample_general_linear(n, 10 * t);
      const SpdPoint sigma(sample_spd(n, 10 * t + 1));
      const SymMat x = sample_sym(n, 10 * t + 2), y = sample_sym(n, 10 * t + 3);
      const SpdPoint moved = act(h, sigma);
      const double lhs = fisher_at(moved, pushforward(h, x), pushforward(h, y));
      const double rhs = fisher_at(sigma, x, y);
      const double bound = std::sqrt(fisher_at(sigma, x, x) * fisher_at(sigma, y, y));
      const double k = cond(moved.full()) + cond(sigma.full()) + cond(h.mat() * h.mat().transpose());
      CAPTURE(n);
      CAPTURE(t);
      CHECK(std::abs(lhs - rhs) <= 100.0 * eps * k * bound);
    }
}

TEST_CASE("Fisher Gram matrix is positive definite") {
  for (int n : {1, 2, 3, 5})
    for (std::uint64_t s = 0; s < 5; ++s) {
      const SpdPoint sigma(sample_spd(n, s));
      const ComponentArray g = fisher_field(n).eval(sigma);
      const int d = vech_size(n);
      Matrix gram(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) gram(a, b) = g.at({a, b});
      CHECK(gram.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > 0.0);
    }
}

}
