#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dsqft/kernels.hpp"
#include "dsqft/specfun.hpp"

using namespace dsqft;
namespace {
constexpr double kPi = std::numbers::pi;

struct Setup {
  ModelParams params;
  ModeSet modes;
  Setup(int d, double frak_m, int s_max = 8, double eps = 1e-3)
      : params(ModelParams::with_frak_m(d, frak_m)), modes(params, s_max, eps) {}
};
}  // namespace

TEST_CASE("green identity: G_r((box+m^2)f, h) = int f h dV") {
  // complementary (mu=0), small-mass complementary and principal masses
  struct Case {
    int d;
    double fm;
  };
  for (const Case c : {Case{4, std::sqrt(2.0)}, Case{4, 1.1}, Case{6, 3.0}}) {
    Setup su(c.d, c.fm);
    for (const int s : {0, 1, 2}) {
      // poles at a generic angle (odd-degree zonal factors vanish at right angles)
      std::vector<double> mixed(c.d, 0.0);
      mixed[0] = 0.6;
      mixed[c.d - 1] = 0.8;
      const TestFunction f = make_bump(-0.35, 0.15, s, unit_vector(c.d, c.d - 1));
      const TestFunction h = make_bump(-0.10, 0.40, s, mixed);
      const ValErr lhs = G_ret(apply_kg(f, su.params), h, su.params, su.modes);
      const ValErr rhs = overlap_integral(f, h, su.params);
      REQUIRE(std::abs(rhs.value) > 1e-12);
      CHECK(std::abs(lhs.value - rhs.value) <= 1e-4 * std::abs(rhs.value));
    }
  }
}

TEST_CASE("green identity in the second slot: G_r(f, (box+m^2)h) = int f h dV") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.3, 0.2, 1, unit_vector(4, 3));
  const TestFunction h = make_bump(-0.15, 0.35, 1, unit_vector(4, 1));
  const ValErr lhs = G_ret(f, apply_kg(h, su.params), su.params, su.modes);
  const ValErr rhs = overlap_integral(f, h, su.params);
  CHECK(std::abs(lhs.value - rhs.value) <= 1e-4 * std::abs(rhs.value));
}

TEST_CASE("adjoint symmetry G_r(f,h) = G_a(h,f)") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.45, 0.1, 1, unit_vector(4, 3), cplx(0.8, 0.1));
  const TestFunction h = make_bump(-0.2, 0.5, 1, unit_vector(4, 0), cplx(1.0, -0.4));
  const ValErr a = G_ret(f, h, su.params, su.modes);
  const ValErr b = G_adv(h, f, su.params, su.modes);
  CHECK(std::abs(a.value - b.value) <= 2.0 * (a.error + b.error) + 1e-12 * std::abs(a.value));
}

TEST_CASE("commutator kernel: D = G_r - G_a = Im D+ (real smearing)") {
  Setup su(6, 3.0);
  const TestFunction f = make_bump(-0.4, 0.0, 2, unit_vector(6, 5));
  const TestFunction h = make_bump(-0.1, 0.45, 2, unit_vector(6, 0));
  const ValErr dc = D_comm(f, h, su.params, su.modes);
  const ValErr gr = G_ret(f, h, su.params, su.modes);
  const ValErr ga = G_adv(f, h, su.params, su.modes);
  CHECK(std::abs(dc.value - (gr.value - ga.value)) <=
        2.0 * (dc.error + gr.error + ga.error) + 1e-12);
  const ValErr dp = D_plus(f, h, su.params, su.modes);
  CHECK(std::abs(dc.value.real() - dp.value.imag()) <=
        1e-10 * std::abs(dp.value) + dc.error + dp.error);
  CHECK(std::abs(dc.value.imag()) <= 1e-10 * std::abs(dp.value) + dc.error);
}

TEST_CASE("pointwise invariant: Dcomm evaluation equals Im of Dplus for real f") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.3, 0.25, 1, unit_vector(4, 3), cplx(1.7, 0.0));
  const SmearedKernel kc(KernelKind::Dcomm, f, su.params, su.modes);
  const SmearedKernel kp(KernelKind::Dplus, f, su.params, su.modes);
  Rng64 rng(5);
  for (int it = 0; it < 25; ++it) {
    std::vector<double> alpha(4);
    double n2 = 0;
    for (int i = 0; i < 4; ++i) {
      alpha[i] = rng.next_gaussian();
      n2 += alpha[i] * alpha[i];
    }
    for (double& c : alpha) c /= std::sqrt(n2);
    const DeSitterPoint y{(rng.next_double() - 0.5) * 2.8, alpha};
    const cplx vc = kc.eval(y);
    const cplx vp = kp.eval(y);
    CHECK(vc.real() == vp.imag());  // exact by construction for real f
    CHECK(vc.imag() == 0.0);
  }
}

TEST_CASE("antisymmetry D(f,h) = -D(h,f)") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.5, -0.1, 2, unit_vector(4, 3));
  const TestFunction h = make_bump(0.05, 0.5, 2, unit_vector(4, 3));
  const ValErr a = D_comm(f, h, su.params, su.modes);
  const ValErr b = D_comm(h, f, su.params, su.modes);
  REQUIRE(std::abs(a.value) > 1e-10);
  CHECK(std::abs(a.value + b.value) <= 2.0 * (a.error + b.error) + 1e-13 * std::abs(a.value));
}

TEST_CASE("klein-gordon in both slots kills D and D+") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.4, 0.1, 1, unit_vector(4, 3));
  const TestFunction h = make_bump(-0.1, 0.35, 1, unit_vector(4, 0));
  const ValErr scale = D_plus(f, h, su.params, su.modes);
  for (const auto& v : {D_plus(apply_kg(f, su.params), h, su.params, su.modes),
                        D_comm(apply_kg(f, su.params), h, su.params, su.modes),
                        D_plus(f, apply_kg(h, su.params), su.params, su.modes),
                        D_comm(f, apply_kg(h, su.params), su.params, su.modes)}) {
    CHECK(std::abs(v.value) <= std::max(v.error * 3.0, 1e-8 * std::abs(scale.value)));
  }
}

TEST_CASE("positivity D+(conj f, f) >= 0") {
  Setup su(4, std::sqrt(2.0), 6);
  Rng64 rng(17);
  for (int it = 0; it < 30; ++it) {
    TestFunction f;
    const int nterms = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int t = 0; t < nterms; ++t) {
      const double lo = -0.6 + 0.8 * rng.next_double();
      const double hi = lo + 0.05 + 0.5 * rng.next_double();
      const int s = static_cast<int>(rng.next_u64() % 4);
      std::vector<double> pole(4);
      double n2 = 0;
      for (int i = 0; i < 4; ++i) {
        pole[i] = rng.next_gaussian();
        n2 += pole[i] * pole[i];
      }
      for (double& c : pole) c /= std::sqrt(n2);
      const cplx coef(rng.next_gaussian(), rng.next_gaussian());
      f = t == 0 ? make_bump(lo, std::min(hi, 0.7), s, pole, coef)
                 : sum(f, make_bump(lo, std::min(hi, 0.7), s, pole, coef));
    }
    const ValErr v = D_plus(conjugate(f), f, su.params, su.modes);
    const double scale = std::abs(v.value) + v.error + 1e-300;
    CHECK(v.value.real() >= -1e-9 * scale);
    // the imaginary part is pure quadrature residue
    CHECK(std::abs(v.value.imag()) <= 1e-8 * scale + 10.0 * v.error);
  }
}

TEST_CASE("sibling relation D-(f,y) = conj(D+(conj f, y))") {
  Setup su(6, 3.0);
  const TestFunction f = make_bump(-0.3, 0.3, 1, unit_vector(6, 5), cplx(0.4, 1.1));
  const SmearedKernel dm(KernelKind::Dminus, f, su.params, su.modes);
  const SmearedKernel dp(KernelKind::Dplus, conjugate(f), su.params, su.modes);
  const DeSitterPoint y{0.8, unit_vector(6, 0)};
  CHECK(std::abs(dm.eval(y) - std::conj(dp.eval(y))) <= 1e-14 * std::abs(dm.eval(y)));
}

TEST_CASE("degree exactness: partial sums beyond s0 change nothing") {
  const ModelParams params = ModelParams::with_frak_m(4, std::sqrt(2.0));
  ModeSet small(params, 2, 1e-3);
  ModeSet large(params, 12, 1e-3);
  const TestFunction f = make_bump(-0.3, 0.3, 2, unit_vector(4, 3));
  const SmearedKernel a(KernelKind::Dplus, f, params, small);
  const SmearedKernel b(KernelKind::Dplus, f, params, large);
  const DeSitterPoint y{0.4, unit_vector(4, 1)};
  CHECK(a.eval(y) == b.eval(y));  // bit-identical: only the s0 mode enters
}

TEST_CASE("retarded support: exact zero in the future of supp f") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.3, 0.2, 1, unit_vector(4, 3));
  const SmearedKernel gr(KernelKind::Gret, f, su.params, su.modes);
  CHECK(gr.eval(DeSitterPoint{0.25, unit_vector(4, 0)}) == cplx(0.0, 0.0));
  CHECK(std::abs(gr.eval(DeSitterPoint{-0.5, unit_vector(4, 3)})) > 1e-12);
  const SmearedKernel ga(KernelKind::Gadv, f, su.params, su.modes);
  CHECK(ga.eval(DeSitterPoint{-0.35, unit_vector(4, 0)}) == cplx(0.0, 0.0));
  CHECK(std::abs(ga.eval(DeSitterPoint{0.5, unit_vector(4, 3)})) > 1e-12);
}

TEST_CASE("equal-time commutator vanishing for symmetric profiles") {
  // symmetric real bump around tau=0: D(f, (0, alpha)) = 0 by parity, within
  // the evaluator error; off-axis tau gives a clearly nonzero value
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.2, 0.2, 1, unit_vector(4, 3));
  const SmearedKernel dc(KernelKind::Dcomm, f, su.params, su.modes);
  std::vector<double> anti = unit_vector(4, 3);
  for (double& c : anti) c = -c;
  const cplx at_equal_time = dc.eval(DeSitterPoint{0.0, anti});
  CHECK(std::abs(at_equal_time) <= 10.0 * dc.error_estimate() + 1e-14);
  const cplx above = dc.eval(DeSitterPoint{0.45, unit_vector(4, 3)});
  CHECK(std::abs(above) > 1e-6);
}

TEST_CASE("envelope constant is finite and bounds the kernel") {
  Setup su(4, std::sqrt(2.0));
  const TestFunction f = make_bump(-0.3, 0.3, 1, unit_vector(4, 3));
  const SmearedKernel dp(KernelKind::Dplus, f, su.params, su.modes);
  std::vector<double> taus;
  for (int j = -20; j <= 20; ++j) taus.push_back(1.45 * j / 20.0);
  const double c_env = dp.envelope_constant(taus);
  CHECK(c_env > 0.0);
  Rng64 rng(23);
  for (int it = 0; it < 50; ++it) {
    std::vector<double> alpha(4);
    double n2 = 0;
    for (int i = 0; i < 4; ++i) {
      alpha[i] = rng.next_gaussian();
      n2 += alpha[i] * alpha[i];
    }
    for (double& c : alpha) c /= std::sqrt(n2);
    const double tau = 1.45 * (2.0 * rng.next_double() - 1.0);
    const cplx v = dp.eval(DeSitterPoint{tau, alpha});
    CHECK(std::abs(v) <= c_env * std::pow(std::cos(tau), 1.0) * (1.0 + 1e-9) + 1e-15);
  }
}

TEST_CASE("kernel_point: diagonal positivity, swap conjugation, tail oracle") {
  ModelParams params = ModelParams::with_frak_m(4, std::sqrt(2.0));
  ModeSet modes(params, 0, 1e-3);
  const DeSitterPoint x1{0.0, unit_vector(4, 3)};
  const DeSitterPoint x2{0.35, unit_vector(4, 0)};

  const auto diag = kernel_point(params, modes, x1, x1, 0.8, 40);
  CHECK(diag.value.real() > 0.0);
  CHECK(std::abs(diag.value.imag()) <= 1e-12 * diag.value.real());

  const auto ab = kernel_point(params, modes, x1, x2, 0.8, 40);
  const auto ba = kernel_point(params, modes, x2, x1, 0.8, 40);
  CHECK(std::abs(ab.value - std::conj(ba.value)) <= 1e-12 * std::abs(ab.value));

  // independent-summation oracle: doubling s_max stays within the tail bound
  // and within 1e-8 relative at this damping
  const auto deep = kernel_point(params, modes, x1, x2, 0.8, 80);
  CHECK(std::abs(deep.value - ab.value) <= ab.tail_bound + 1e-12 * std::abs(ab.value));
  CHECK(std::abs(deep.value - ab.value) <= 1e-8 * std::abs(ab.value));

  CHECK_THROWS_AS(kernel_point(params, modes, x1, x2, 0.0, 10), std::domain_error);
}

TEST_CASE("d=4 mu=0 closed-form cross-check of the damped diagonal sum") {
  // sum_s e^{-p eta} (1/p) A(s,4) C_s^1(1) at tau=0, alpha1=alpha2
  ModelParams params = ModelParams::with_frak_m(4, std::sqrt(2.0));
  ModeSet modes(params, 0, 1e-3);
  const DeSitterPoint x{0.0, unit_vector(4, 3)};
  const double eta = 0.9;
  const int s_max = 60;
  const auto got = kernel_point(params, modes, x, x, eta, s_max);
  double expect = 0.0;
  for (int s = 0; s <= s_max; ++s) {
    const double p = s + 1.0;
    expect += std::exp(-p * eta) / p * harmonic_data(s, 4).A * gegenbauer(s, 1.0, 1.0);
  }
  CHECK(got.value.real() == doctest::Approx(expect).epsilon(1e-8));
}
