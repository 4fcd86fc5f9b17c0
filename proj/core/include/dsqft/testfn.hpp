#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dsqft/geometry.hpp"

namespace dsqft {

// Smooth profile on tau with compact support [lo,hi] and analytic first and
// second derivatives. Profiles are real; complex structure lives in the
// term coefficients.
struct TauProfile {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> f;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  bool is_bump = false;  // serializable iff backed by the standard bump

  double operator()(double t) const { return (t <= lo || t >= hi) ? 0.0 : f(t); }
};

// exp(-1/(1-u^2)) rescaled to [lo,hi], closed-form derivatives
TauProfile bump_profile(double lo, double hi);

// One separable term coef * a(tau) * Z_{s,pole}(alpha) with the zonal kernel
// Z_{s,beta}(alpha) = A(s,d) C_s^{(d-2)/2}(alpha . beta).
struct TfTerm {
  cplx coef{1.0, 0.0};
  TauProfile a;
  int s = 0;
  std::vector<double> pole;
};

struct TestFunction {
  std::vector<TfTerm> terms;

  bool single_harmonic() const { return terms.size() == 1; }
  bool is_real(double tol = 0.0) const;
  double tau_lo() const;  // support hull in tau
  double tau_hi() const;
};

TestFunction make_bump(double tau_minus, double tau_plus, int s,
                       std::vector<double> pole, cplx coef = cplx(1, 0));

TestFunction conjugate(const TestFunction& f);
TestFunction scaled(const TestFunction& f, cplx c);
TestFunction sum(const TestFunction& f, const TestFunction& g);

// poles replaced by R*pole; R must be orthogonal with det +1 (row-major d x d)
TestFunction rotate(const TestFunction& f, const std::vector<double>& R);

// (box + m^2) f, term by term; sphere factor is a Delta eigenfunction, the
// tau part uses the analytic profile derivatives. Result profiles are not
// serializable and their own derivatives fall back to finite differences.
TestFunction apply_kg(const TestFunction& f, const ModelParams& params);

double zonal_factor(int s, int d, double cos_angle);
cplx evaluate(const TestFunction& f, const DeSitterPoint& x, const ModelParams& params);

std::string to_json(const TestFunction& f);
TestFunction testfn_from_json(const std::string& text);

}  // namespace dsqft
