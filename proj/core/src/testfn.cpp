#include "dsqft/testfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsqft/specfun.hpp"
#include "json.hpp"

namespace dsqft {

namespace {
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void check_pole(const std::vector<double>& pole) {
  double n2 = 0.0;
  for (double c : pole) n2 += c * c;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw std::invalid_argument("TestFunction: pole must be a unit vector");
}

void check_orthogonal(const std::vector<double>& R, int d) {
  if (static_cast<int>(R.size()) != d * d)
    throw std::invalid_argument("rotate: R must be d x d row-major");
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += R[k * d + i] * R[k * d + j];
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(dot - want) > 1e-10)
        throw std::invalid_argument("rotate: matrix is not orthogonal");
    }
  }
  // det must be +1 (LU with partial pivoting)
  std::vector<double> a = R;
  double det = 1.0;
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a[i * d + k]) > std::abs(a[piv * d + k])) piv = i;
    if (piv != k) {
      for (int j = 0; j < d; ++j) std::swap(a[k * d + j], a[piv * d + j]);
      det = -det;
    }
    det *= a[k * d + k];
    for (int i = k + 1; i < d; ++i) {
      const double f = a[i * d + k] / a[k * d + k];
      for (int j = k; j < d; ++j) a[i * d + j] -= f * a[k * d + j];
    }
  }
  if (det < 0.0) throw std::invalid_argument("rotate: det R must be +1");
}
}  // namespace

TauProfile bump_profile(double lo, double hi) {
  if (!(lo < hi)) throw std::domain_error("bump_profile: need lo < hi");
  if (!(lo > -kHalfPi && hi < kHalfPi))
    throw std::domain_error("bump_profile: support must lie strictly inside (-pi/2, pi/2)");
  TauProfile prof;
  prof.lo = lo;
  prof.hi = hi;
  prof.is_bump = true;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto u_of = [mid, half](double t) { return (t - mid) / half; };
  prof.f = [u_of](double t) {
    const double u = u_of(t);
    const double q = 1.0 - u * u;
    if (q < 1e-3) return 0.0;
    return std::exp(-1.0 / q);
  };
  prof.d1 = [u_of, half](double t) {
    const double u = u_of(t);
    const double q = 1.0 - u * u;
    if (q < 1e-3) return 0.0;
    return std::exp(-1.0 / q) * (-2.0 * u / (q * q)) / half;
  };
  prof.d2 = [u_of, half](double t) {
    const double u = u_of(t);
    const double q = 1.0 - u * u;
    if (q < 1e-3) return 0.0;
    const double phi = std::exp(-1.0 / q);
    const double dlog = -2.0 * u / (q * q);
    const double ddlog = -2.0 / (q * q) - 8.0 * u * u / (q * q * q);
    return phi * (dlog * dlog + ddlog) / (half * half);
  };
  return prof;
}

bool TestFunction::is_real(double tol) const {
  for (const TfTerm& t : terms)
    if (std::abs(t.coef.imag()) > tol) return false;
  return true;
}

double TestFunction::tau_lo() const {
  double lo = kHalfPi;
  for (const TfTerm& t : terms) lo = std::min(lo, t.a.lo);
  return lo;
}

double TestFunction::tau_hi() const {
  double hi = -kHalfPi;
  for (const TfTerm& t : terms) hi = std::max(hi, t.a.hi);
  return hi;
}

TestFunction make_bump(double tau_minus, double tau_plus, int s,
                       std::vector<double> pole, cplx coef) {
  if (s < 0) throw std::invalid_argument("make_bump: s >= 0");
  check_pole(pole);
  TestFunction f;
  f.terms.push_back(TfTerm{coef, bump_profile(tau_minus, tau_plus), s, std::move(pole)});
  return f;
}

TestFunction conjugate(const TestFunction& f) {
  TestFunction g = f;
  for (TfTerm& t : g.terms) t.coef = std::conj(t.coef);
  return g;
}

TestFunction scaled(const TestFunction& f, cplx c) {
  TestFunction g = f;
  for (TfTerm& t : g.terms) t.coef *= c;
  return g;
}

TestFunction sum(const TestFunction& f, const TestFunction& g) {
  TestFunction h = f;
  h.terms.insert(h.terms.end(), g.terms.begin(), g.terms.end());
  return h;
}

TestFunction rotate(const TestFunction& f, const std::vector<double>& R) {
  if (f.terms.empty()) return f;
  const int d = static_cast<int>(f.terms.front().pole.size());
  check_orthogonal(R, d);
  TestFunction g = f;
  for (TfTerm& t : g.terms) {
    std::vector<double> out(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[i] += R[i * d + j] * t.pole[j];
    t.pole = std::move(out);
  }
  return g;
}

TestFunction apply_kg(const TestFunction& f, const ModelParams& params) {
  params.validate();
  TestFunction g;
  g.terms.reserve(f.terms.size());
  for (const TfTerm& t : f.terms) {
    const double kappa2 = static_cast<double>(t.s) * (t.s + params.d - 2.0);
    const double m2 = params.frak_m2();
    const double r2 = params.r * params.r;
    const int d = params.d;
    const TauProfile a = t.a;  // copy keeps the closure alive
    TauProfile out;
    out.lo = a.lo;
    out.hi = a.hi;
    out.is_bump = false;
    out.f = [a, kappa2, m2, r2, d](double tau) {
      if (tau <= a.lo || tau >= a.hi) return 0.0;
      const double c = std::cos(tau);
      const double s = std::sin(tau);
      return (c * c * a.d2(tau) + (d - 2.0) * s * c * a.d1(tau) +
              (kappa2 * c * c + m2) * a.f(tau)) /
             r2;
    };
    // derivatives of the transformed profile: finite differences (only used
    // if the operator is applied twice)
    const auto base = out.f;
    const double h = 1e-6 * (a.hi - a.lo);
    out.d1 = [base, h](double tau) { return (base(tau + h) - base(tau - h)) / (2.0 * h); };
    out.d2 = [base, h](double tau) {
      return (base(tau + h) - 2.0 * base(tau) + base(tau - h)) / (h * h);
    };
    g.terms.push_back(TfTerm{t.coef, std::move(out), t.s, t.pole});
  }
  return g;
}

double zonal_factor(int s, int d, double cos_angle) {
  const HarmonicData hd = harmonic_data(s, d);
  return hd.A * gegenbauer(s, 0.5 * (d - 2.0), cos_angle);
}

cplx evaluate(const TestFunction& f, const DeSitterPoint& x, const ModelParams& params) {
  x.validate(params.d);
  cplx acc(0.0, 0.0);
  for (const TfTerm& t : f.terms) {
    double dot = 0.0;
    for (int i = 0; i < params.d; ++i) dot += x.alpha[i] * t.pole[i];
    dot = std::max(-1.0, std::min(1.0, dot));
    acc += t.coef * t.a(x.tau) * zonal_factor(t.s, params.d, dot);
  }
  return acc;
}

std::string to_json(const TestFunction& f) {
  nlohmann::json j;
  j["terms"] = nlohmann::json::array();
  for (const TfTerm& t : f.terms) {
    if (!t.a.is_bump)
      throw std::invalid_argument("to_json: only bump-backed test functions are serializable");
    nlohmann::json e;
    e["interval"] = {t.a.lo, t.a.hi};
    e["degree"] = t.s;
    e["pole"] = t.pole;
    e["coef"] = {t.coef.real(), t.coef.imag()};
    j["terms"].push_back(std::move(e));
  }
  return j.dump();
}

TestFunction testfn_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  TestFunction f;
  for (const auto& e : j.at("terms")) {
    const double lo = e.at("interval").at(0).get<double>();
    const double hi = e.at("interval").at(1).get<double>();
    const int s = e.at("degree").get<int>();
    std::vector<double> pole = e.at("pole").get<std::vector<double>>();
    const cplx coef(e.at("coef").at(0).get<double>(), e.at("coef").at(1).get<double>());
    check_pole(pole);
    f.terms.push_back(TfTerm{coef, bump_profile(lo, hi), s, std::move(pole)});
  }
  return f;
}

}  // namespace dsqft
