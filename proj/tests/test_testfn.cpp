#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dsqft/specfun.hpp"
#include "dsqft/testfn.hpp"

using namespace dsqft;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("bump support and smoothness") {
  const TestFunction f = make_bump(-0.3, 0.3, 0, unit_vector(4, 3));
  const TauProfile& a = f.terms[0].a;
  CHECK(a(-0.31) == 0.0);
  CHECK(a(0.3) == 0.0);
  CHECK(a(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(a(0.1) > 0.0);
  // derivative oracle: central differences
  for (const double t : {-0.25, -0.1, 0.07, 0.2}) {
    const double h = 1e-6;
    CHECK(a.d1(t) == doctest::Approx((a(t + h) - a(t - h)) / (2 * h)).epsilon(1e-6));
    CHECK(a.d2(t) ==
          doctest::Approx((a(t + h) - 2 * a(t) + a(t - h)) / (h * h)).epsilon(1e-3));
  }
  CHECK_THROWS_AS(make_bump(0.3, -0.3, 0, unit_vector(4, 3)), std::domain_error);
  CHECK_THROWS_AS(make_bump(-2.0, 0.3, 0, unit_vector(4, 3)), std::domain_error);
}

TEST_CASE("s=0 zonal profile integrates to nonzero over the sphere") {
  // s=0 zonal is the constant 1/|S^{d-1}|
  const ModelParams p = ModelParams::with_frak_m(3, 1.0);
  const TestFunction f = make_bump(-0.3, 0.3, 0, unit_vector(3, 2));
  const cplx v = evaluate(f, make_point(0.0, unit_vector(3, 0), 3), p);
  CHECK(v.real() == doctest::Approx(std::exp(-1.0) / sphere_area(3)).epsilon(1e-12));
}

TEST_CASE("zonal example: s=1, d=3 gives (3/4pi) cos(theta)") {
  const ModelParams p = ModelParams::with_frak_m(3, 1.0);
  const TestFunction f = make_bump(-0.3, 0.3, 1, unit_vector(3, 2));
  for (const double theta : {0.0, 0.4, 1.2, 2.7}) {
    std::vector<double> alpha{std::sin(theta), 0.0, std::cos(theta)};
    const cplx v = evaluate(f, make_point(0.0, alpha, 3), p);
    CHECK(v.real() ==
          doctest::Approx(std::exp(-1.0) * 3.0 / (4.0 * kPi) * std::cos(theta)).epsilon(1e-12));
  }
}

TEST_CASE("conjugation involution and reality") {
  TestFunction f = make_bump(-0.4, 0.1, 2, unit_vector(4, 1), cplx(0.3, -1.2));
  CHECK(!f.is_real());
  const TestFunction g = conjugate(conjugate(f));
  CHECK(g.terms[0].coef == f.terms[0].coef);
  CHECK(conjugate(f).terms[0].coef == std::conj(f.terms[0].coef));
}

TEST_CASE("rotation: identity, equivariance, composition") {
  const int d = 4;
  const ModelParams p = ModelParams::with_frak_m(d, 1.0);
  TestFunction f = make_bump(-0.4, 0.4, 2, unit_vector(d, 3));

  std::vector<double> eye(d * d, 0.0);
  for (int i = 0; i < d; ++i) eye[i * d + i] = 1.0;
  CHECK(rotate(f, eye).terms[0].pole == f.terms[0].pole);

  // rotation in the (0,3)-plane by angle
  auto plane_rot = [&](double ang) {
    std::vector<double> R = eye;
    R[0 * d + 0] = std::cos(ang);
    R[0 * d + 3] = -std::sin(ang);
    R[3 * d + 0] = std::sin(ang);
    R[3 * d + 3] = std::cos(ang);
    return R;
  };
  const auto R1 = plane_rot(0.7);
  const auto R2 = plane_rot(-0.2);

  // evaluate(rotate(f,R), (tau, R alpha)) = evaluate(f, (tau, alpha))
  Rng64 rng(3);
  for (int it = 0; it < 20; ++it) {
    std::vector<double> alpha(d);
    double n2 = 0;
    for (int i = 0; i < d; ++i) {
      alpha[i] = rng.next_gaussian();
      n2 += alpha[i] * alpha[i];
    }
    for (double& c : alpha) c /= std::sqrt(n2);
    std::vector<double> ra(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ra[i] += R1[i * d + j] * alpha[j];
    const cplx lhs = evaluate(rotate(f, R1), make_point(0.1, ra, d), p);
    const cplx rhs = evaluate(f, make_point(0.1, alpha, d), p);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }

  // composition: rotate(rotate(f,R1),R2) = rotate(f, R2 R1)
  std::vector<double> R21(d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) R21[i * d + j] += R2[i * d + k] * R1[k * d + j];
  const auto lhs = rotate(rotate(f, R1), R2).terms[0].pole;
  const auto rhs = rotate(f, R21).terms[0].pole;
  for (int i = 0; i < d; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));

  // non-rotations rejected
  std::vector<double> refl = eye;
  refl[0] = -1.0;  // det -1
  CHECK_THROWS_AS(rotate(f, refl), std::invalid_argument);
  std::vector<double> skew = eye;
  skew[1] = 0.5;
  CHECK_THROWS_AS(rotate(f, skew), std::invalid_argument);
}

TEST_CASE("apply_kg: locality of support, linearity, FD oracle") {
  const ModelParams p = ModelParams::with_frak_m(4, 1.3);
  const TestFunction f = make_bump(-0.5, 0.2, 1, unit_vector(4, 3), cplx(1.0, 0.5));
  const TestFunction kf = apply_kg(f, p);
  CHECK(kf.terms[0].a.lo == f.terms[0].a.lo);
  CHECK(kf.terms[0].a.hi == f.terms[0].a.hi);
  CHECK(kf.terms[0].a(-0.55) == 0.0);
  CHECK(kf.terms[0].a(0.25) == 0.0);

  // 5-point stencil oracle for the Klein-Gordon tau-operator
  const TauProfile& a = f.terms[0].a;
  const double kappa2 = 1.0 * (1.0 + 4 - 2);
  const double m2 = p.frak_m2();
  for (const double t : {-0.4, -0.15, 0.05, 0.15}) {
    const double h = 1e-3;
    auto cs = [&](double x) { return std::pow(std::cos(x), 2.0 - 4.0) * a.d1(x); };
    // cos^d d/dtau(cos^{2-d} a') + (kappa^2 cos^2 + m^2) a, 5-point first derivative
    const double dd =
        (-cs(t + 2 * h) + 8 * cs(t + h) - 8 * cs(t - h) + cs(t - 2 * h)) / (12 * h);
    const double expect =
        (std::pow(std::cos(t), 4.0) * dd + (kappa2 * std::cos(t) * std::cos(t) + m2) * a(t)) /
        (p.r * p.r);
    CHECK(kf.terms[0].a(t) == doctest::Approx(expect).epsilon(1e-5));
  }

  // linearity
  const TestFunction g = make_bump(-0.1, 0.45, 1, unit_vector(4, 2), cplx(0.7, 0.0));
  const TestFunction ks = apply_kg(sum(f, g), p);
  const TestFunction kfg = sum(apply_kg(f, p), apply_kg(g, p));
  for (const double t : {-0.3, 0.0, 0.3}) {
    CHECK(ks.terms[0].a(t) == doctest::Approx(kfg.terms[0].a(t)).epsilon(1e-14));
    CHECK(ks.terms[1].a(t) == doctest::Approx(kfg.terms[1].a(t)).epsilon(1e-14));
  }
}

TEST_CASE("json round trip") {
  TestFunction f = make_bump(-0.25, 0.35, 3, unit_vector(5, 4), cplx(1.5, -0.5));
  f = sum(f, make_bump(0.0, 0.2, 0, unit_vector(5, 0), cplx(0.0, 2.0)));
  const TestFunction g = testfn_from_json(to_json(f));
  REQUIRE(g.terms.size() == 2);
  CHECK(g.terms[0].a.lo == f.terms[0].a.lo);
  CHECK(g.terms[0].a.hi == f.terms[0].a.hi);
  CHECK(g.terms[0].s == 3);
  CHECK(g.terms[0].coef == f.terms[0].coef);
  CHECK(g.terms[1].pole == f.terms[1].pole);
  const ModelParams p = ModelParams::with_frak_m(5, 1.0);
  const auto x = make_point(0.1, unit_vector(5, 4), 5);
  CHECK(std::abs(evaluate(f, x, p) - evaluate(g, x, p)) < 1e-15);
  // derived profiles are not serializable
  CHECK_THROWS_AS(to_json(apply_kg(f, p)), std::invalid_argument);
}
