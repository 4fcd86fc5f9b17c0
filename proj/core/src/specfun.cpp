#include "dsqft/specfun.hpp"

#include <cmath>
#include <numbers>

namespace dsqft {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 607/128 (Godfrey's 15-term set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool is_nonpositive_integer(cplx z) {
  if (std::abs(z.imag()) > 1e-12) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < 1e-12;
}

cplx gamma_pos(cplx z) {
  // valid for Re z >= 0.5
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 15; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

cplx gamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma_complex: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // reflection Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (std::sin(kPi * z) * gamma_pos(1.0 - z));
  }
  return gamma_pos(z);
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx z) {
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a nonpositive integer");
  if (std::abs(z) >= 1.0) throw std::domain_error("hyp2f1: series contract requires |z| < 1");
  cplx sum = 1.0;
  cplx term = 1.0;
  int quiet = 0;
  for (int k = 0; k < 100000; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / (c + kk) * z / (kk + 1.0);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++quiet >= 3) return sum;
    } else {
      quiet = 0;
    }
  }
  return sum;  // |z| close to 1: best effort after hard cap
}

double gegenbauer(int s, double lambda, double t) {
  if (s < 0) throw std::invalid_argument("gegenbauer: degree must be >= 0");
  if (s == 0) return 1.0;
  double cm2 = 1.0;
  double cm1 = 2.0 * lambda * t;
  if (s == 1) return cm1;
  double cur = 0.0;
  for (int k = 2; k <= s; ++k) {
    cur = (2.0 * t * (k + lambda - 1.0) * cm1 - (k + 2.0 * lambda - 2.0) * cm2) / k;
    cm2 = cm1;
    cm1 = cur;
  }
  return cur;
}

double gegenbauer(const GegenbauerIndex& idx, double t) {
  return gegenbauer(idx.s, idx.lambda, t);
}

HarmonicData harmonic_data(int s, int d) {
  if (s < 0 || d < 3) throw std::invalid_argument("harmonic_data: need s >= 0, d >= 3");
  HarmonicData hd;
  hd.s = s;
  hd.d = d;
  if (s == 0) {
    hd.h = 1.0;
  } else {
    // (2s+d-2) (s+d-3)!/s! (d-2)!^{-1} with (s+d-3)!/s! as a short product
    double num = 2.0 * s + d - 2.0;
    for (int j = 1; j <= d - 3; ++j) num *= static_cast<double>(s + j);
    double den = 1.0;
    for (int j = 1; j <= d - 2; ++j) den *= static_cast<double>(j);
    hd.h = std::round(num / den);
  }
  const double half = 0.5 * (d - 2.0);
  hd.A = (2.0 * s + d - 2.0) * std::tgamma(1.0 + half) /
         (2.0 * std::pow(kPi, 1.0 + half) * (d - 2.0));
  return hd;
}

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere_area: d >= 1");
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace dsqft
