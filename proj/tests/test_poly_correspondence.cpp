#include <doctest.h>

#include <cmath>
#include <vector>

#include "gaussgeom/poly_correspondence.hpp"
#include "test_util.hpp"

using namespace gaussgeom;

namespace {

InvariantCubic random_cubic(int n, std::uint64_t s) {
  const Vector abc = sample_sym(2, s).vech();
  return {n, abc[0], abc[1], abc[2]};
}

double max_rel_diff(const ComponentArray& a, const ComponentArray& b) {
  return (a - b).max_abs() / std::max(1.0, std::max(a.max_abs(), b.max_abs()));
}

// Power-sum image of (a, b, c) at small n, worked out by hand from the relations
// p1^3 = 3 p2 p1 - 2 p3 (n = 2) and p3 = p2 p1 = p1^3 (n = 1).
std::vector<double> expected_phi(const InvariantCubic& c) {
  if (c.n >= 3) return {c.a, c.b, c.c};
  if (c.n == 2) return {c.a - 2.0 * c.c, c.b + 3.0 * c.c};
  return {c.a + c.b + c.c};
}

}  // namespace

TEST_SUITE("poly-correspondence") {

TEST_CASE("cubic_form examples") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(cubic_form(raw_components({n, 1, 0, 0}), SymMat::identity(n)) == doctest::Approx(n).epsilon(1e-14));
    SymMat x = sample_sym(n, 3);
    x = x - SymMat::identity(n) * (x.trace() / n);
    CHECK(std::abs(cubic_form(raw_components({n, 0, 0, 1}), x)) < 1e-12);
  }
  CHECK(cubic_form(raw_components({2, 0, 1, 0}), SymMat::diagonal({1, 2})) == doctest::Approx(15.0).epsilon(1e-14));
}

TEST_CASE("cubic forms of the generators") {
  for (int n = 1; n <= 4; ++n) {
    const RawCubicTensor t1 = raw_components({n, 1, 0, 0});
    const RawCubicTensor t2 = raw_components({n, 0, 1, 0});
    const RawCubicTensor t3 = raw_components({n, 0, 0, 1});
    for (std::uint64_t s = 0; s < 100; ++s) {
      const SymMat x = sample_sym(n, 1000 + s);
      const Matrix m = x.full();
      const double tr = m.trace();
      const double scale = std::pow(m.norm() * std::sqrt(n), 3);
      CHECK(std::abs(cubic_form(t1, x) - (m * m * m).trace()) < 1e-12 * scale);
      CHECK(std::abs(cubic_form(t2, x) - (m * m).trace() * tr) < 1e-12 * scale);
      CHECK(std::abs(cubic_form(t3, x) - tr * tr * tr) < 1e-12 * scale);
    }
  }
}

TEST_CASE("polarize examples") {
  for (int n = 1; n <= 3; ++n) {
    const RawCubicTensor p = polarize([](const SymMat& x) { const Matrix m = x.full(); return (m * m * m).trace(); }, n);
    const RawCubicTensor ref = raw_components({n, 1, 0, 0});
    CHECK(max_rel_diff(p.components, ref.components) < 1e-12);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const SymMat x = sample_sym(n, s), y = sample_sym(n, s + 200), z = sample_sym(n, s + 400);
      const double want = ref(x, y, z);
      CHECK(std::abs(p(x, y, z) - want) < 1e-12 * std::max(1.0, std::abs(want)) * 10.0);
    }
    CHECK(polarize([](const SymMat&) { return 0.0; }, n).components.max_abs() == 0.0);
  }
}

TEST_CASE("polarization round trip") {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const RawCubicTensor t = raw_components(random_cubic(n, s));
      const RawCubicTensor back = polarize([&](const SymMat& x) { return cubic_form(t, x); }, n);
      CHECK(max_rel_diff(back.components, t.components) < 1e-12);
    }
}

TEST_CASE("homogeneity probe") {
  const RawCubicTensor t = raw_components({3, 1, 2, 3});
  CHECK(is_cubic_homogeneous([&](const SymMat& x) { return cubic_form(t, x); }, 3, 1));
  CHECK_FALSE(is_cubic_homogeneous([](const SymMat& x) { const Matrix m = x.full(); return (m * m).trace(); }, 3, 1));
}

TEST_CASE("diag_restrict examples") {
  for (int n : {1, 2, 3, 5})
    for (double alpha : {-1.0, 0.5, 2.0}) {
      const MonomialCoeffs m = diag_restrict(raw_components(InvariantCubic::amari_chentsov(n, alpha)));
      CHECK(m.c300 == doctest::Approx(alpha).epsilon(1e-14));
      CHECK(m.c210.has_value() == (n >= 2));
      CHECK(m.c111.has_value() == (n >= 3));
      if (m.c210) CHECK(std::abs(*m.c210) < 1e-14);
      if (m.c111) CHECK(std::abs(*m.c111) < 1e-14);
    }
  const MonomialCoeffs c3 = diag_restrict(raw_components({4, 0, 0, 1}));
  CHECK(c3.c300 == doctest::Approx(1.0));
  CHECK(*c3.c210 == doctest::Approx(3.0));
  CHECK(*c3.c111 == doctest::Approx(6.0));
  const MonomialCoeffs z = diag_restrict(raw_components({3, 0, 0, 0}));
  CHECK(z.c300 == 0.0);
  CHECK(*z.c210 == 0.0);
  CHECK(*z.c111 == 0.0);
}

TEST_CASE("diag_restrict of an explicit polynomial") {
  // 2 sum x^3 - sum_{i!=j} x_i^2 x_j + 5 x1 x2 x3 at n = 3
  auto f = [](const std::vector<double>& x) {
    double s3 = 0, s21 = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      s3 += x[i] * x[i] * x[i];
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) s21 += x[i] * x[i] * x[j];
    }
    return 2 * s3 - s21 + 5 * x[0] * x[1] * x[2];
  };
  const MonomialCoeffs m = diag_restrict(f, 3);
  CHECK(m.c300 == 2.0);
  CHECK(*m.c210 == -1.0);
  CHECK(*m.c111 == 5.0);
}

TEST_CASE("to_power_sums examples") {
  auto coeffs = [](double a, double b, double c) { return to_power_sums({a, b, c}, 3).coeffs(); };
  CHECK(coeffs(1, 0, 0) == std::vector<double>{1, 0, 0});
  CHECK(coeffs(1, 3, 6) == std::vector<double>{0, 0, 1});
  CHECK(coeffs(1, 1, 0) == std::vector<double>{0, 1, 0});
  CHECK_THROWS_AS(to_power_sums({1.0, std::nullopt, std::nullopt}, 3), ShapeError);
}

TEST_CASE("phi examples") {
  for (int n : {1, 2, 3, 5}) {
    const SymCubicPoly p = phi(InvariantCubic::amari_chentsov(n, -1.5));
    CHECK(p.p3() == doctest::Approx(-1.5).epsilon(1e-14));
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) CHECK(std::abs(p.coeffs()[i]) < 1e-13);
    CHECK(static_cast<int>(p.coeffs().size()) == poly_dim_upper(n));
  }
  const SymCubicPoly c2 = phi({3, 0, 1, 0});
  CHECK(std::abs(c2.p3()) < 1e-14);
  CHECK(*c2.p2p1() == doctest::Approx(1.0));
  CHECK(std::abs(*c2.p1_cubed()) < 1e-14);
  const SymCubicPoly rel = phi({2, 2, -3, 1});
  CHECK(std::abs(rel.p3()) < 1e-12);
  CHECK(std::abs(*rel.p2p1()) < 1e-12);
}

TEST_CASE("phi matches the hand-derived image") {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const InvariantCubic c = random_cubic(n, s);
      const std::vector<double> want = expected_phi(c);
      const std::vector<double> got = phi(c).coeffs();
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("phi is linear") {
  for (int n = 1; n <= 4; ++n) {
    const InvariantCubic c = random_cubic(n, 1), d = random_cubic(n, 2);
    const double k = -2.25;
    const InvariantCubic comb{n, k * c.a + d.a, k * c.b + d.b, k * c.c + d.c};
    const auto lhs = phi(comb).coeffs();
    const auto pc = phi(c).coeffs();
    const auto pd = phi(d).coeffs();
    for (std::size_t i = 0; i < lhs.size(); ++i)
      CHECK(std::abs(lhs[i] - (k * pc[i] + pd[i])) < 1e-12 * std::max(1.0, std::abs(lhs[i])));
  }
}

TEST_CASE("phi_inverse") {
  const InvariantCubic a = phi_inverse(SymCubicPoly(4, {0.7, 0, 0}));
  CHECK((a.a == 0.7 && a.b == 0 && a.c == 0));
  const InvariantCubic c3 = phi_inverse(SymCubicPoly(3, {0, 0, 1}));
  CHECK((c3.a == 0 && c3.b == 0 && c3.c == 1));
  for (int n = 1; n <= 4; ++n) {
    const InvariantCubic z = phi_inverse(SymCubicPoly::zero(n));
    CHECK((z.n == n && z.a == 0 && z.b == 0 && z.c == 0));
  }
  const InvariantCubic two = phi_inverse(SymCubicPoly(2, {1, 2}));
  CHECK((two.a == 1 && two.b == 2 && two.c == 0));
}

TEST_CASE("phi and phi_inverse are mutually inverse") {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      std::vector<double> coeffs;
      for (int i = 0; i < poly_dim_upper(n); ++i) coeffs.push_back(sample_sym(1, 50 * s + i).vech()[0]);
      const SymCubicPoly p(n, coeffs);
      const auto back = phi(phi_inverse(p)).coeffs();
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        CHECK(back[i] == doctest::Approx(coeffs[i]).epsilon(1e-12));
      if (n >= 3) {
        const InvariantCubic c = random_cubic(n, s);
        const InvariantCubic r = phi_inverse(phi(c));
        CHECK(r.a == doctest::Approx(c.a).epsilon(1e-12));
        CHECK(r.b == doctest::Approx(c.b).epsilon(1e-12));
        CHECK(r.c == doctest::Approx(c.c).epsilon(1e-12));
      }
    }
}

TEST_CASE("reconstruction through the restriction is injective") {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const RawCubicTensor t = raw_components(random_cubic(n, 300 + s));
      const RawCubicTensor back = raw_components(phi_inverse(decompose(t)));
      CAPTURE(n);
      CHECK(max_rel_diff(back.components, t.components) < 1e-12);
    }
}

TEST_CASE("polynomial evaluation agrees with the cubic form on diagonals") {
  for (int n = 1; n <= 4; ++n) {
    const InvariantCubic c = random_cubic(n, 5);
    const SymCubicPoly p = phi(c);
    const RawCubicTensor t = raw_components(c);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Vector lam = sample_sym(n, s).full().diagonal();
      const std::vector<double> x(lam.data(), lam.data() + n);
      CHECK(p(x) == doctest::Approx(cubic_form(t, SymMat::diagonal(x))).epsilon(1e-12));
    }
  }
}

TEST_CASE("SymCubicPoly shape rules") {
  CHECK_THROWS_AS(SymCubicPoly(2, {1, 2, 3}), ShapeError);
  CHECK_THROWS_AS(SymCubicPoly(3, {1}), ShapeError);
  CHECK_THROWS_AS(SymCubicPoly(0, {}), InvalidOrder);
  CHECK_FALSE(SymCubicPoly(1, {1}).p2p1().has_value());
  CHECK_FALSE(SymCubicPoly(2, {1, 2}).p1_cubed().has_value());
  CHECK_THROWS_AS(SymCubicPoly(2, {1, 2})({1.0}), ShapeError);
}

TEST_CASE("dimension") {
  const int want[] = {1, 2, 3, 3, 3, 3, 3, 3};
  for (int n = 1; n <= 8; ++n) CHECK(dimension(n) == want[n - 1]);
  CHECK(dimension(40) == 3);
  CHECK_THROWS_AS(dimension(0), InvalidOrder);
}

TEST_CASE("power-sum relations") {
  const auto r2 = power_sum_relations(2);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0][0] == doctest::Approx(2.0));
  CHECK(r2[0][1] == doctest::Approx(-3.0));
  CHECK(r2[0][2] == doctest::Approx(1.0));
  const auto r1 = power_sum_relations(1);
  CHECK(r1.size() == 2);
  for (const auto& r : r1) CHECK(std::abs(r.sum()) < 1e-12);
  CHECK(power_sum_relations(3).empty());
  CHECK(power_sum_relations(6).empty());
}

}
