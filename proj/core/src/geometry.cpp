#include "dsqft/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dsqft {

namespace {
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

void ModelParams::validate() const {
  if (d < 3) throw std::invalid_argument("ModelParams: d >= 3 required");
  if (!(r > 0.0)) throw std::invalid_argument("ModelParams: r > 0 required");
  if (!(m > 0.0)) throw std::invalid_argument("ModelParams: m > 0 required");
  if (!(b > 0.0)) throw std::invalid_argument("ModelParams: b > 0 required");
}

ModelParams ModelParams::with_frak_m(int d, double frak_m, double r) {
  ModelParams p;
  p.d = d;
  p.r = r;
  p.m = frak_m / r;
  p.b = p.m;  // unit-normalized CCR, b = m
  p.validate();
  return p;
}

ModelParams ModelParams::with_frak_m2(int d, double frak_m2, double r) {
  if (!(frak_m2 > 0.0)) throw std::invalid_argument("with_frak_m2: frak_m2 > 0");
  return with_frak_m(d, std::sqrt(frak_m2), r);
}

void DeSitterPoint::validate(int d) const {
  if (static_cast<int>(alpha.size()) != d)
    throw std::invalid_argument("DeSitterPoint: alpha must have d components");
  if (!(std::abs(tau) < kHalfPi))
    throw std::domain_error("DeSitterPoint: tau must lie strictly inside (-pi/2, pi/2)");
  double n2 = 0.0;
  for (double a : alpha) n2 += a * a;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw std::invalid_argument("DeSitterPoint: |alpha| = 1 within 1e-12 required");
}

DeSitterPoint make_point(double tau, std::vector<double> alpha, int d) {
  DeSitterPoint x{tau, std::move(alpha)};
  x.validate(d);
  return x;
}

std::vector<double> unit_vector(int d, int k) {
  if (k < 0 || k >= d) throw std::invalid_argument("unit_vector: index out of range");
  std::vector<double> e(d, 0.0);
  e[k] = 1.0;
  return e;
}

std::vector<double> embed(const DeSitterPoint& x, const ModelParams& params) {
  x.validate(params.d);
  if (!(std::abs(x.tau) < kHalfPi)) throw std::domain_error("embed: |tau| >= pi/2");
  std::vector<double> X(params.d + 1);
  const double c = std::cos(x.tau);
  X[0] = params.r * std::tan(x.tau);
  for (int i = 0; i < params.d; ++i) X[i + 1] = params.r * x.alpha[i] / c;
  return X;
}

const char* to_string(CausalRelation rel) {
  switch (rel) {
    case CausalRelation::Spacelike: return "Spacelike";
    case CausalRelation::LightlikeFuture: return "LightlikeFuture";
    case CausalRelation::LightlikePast: return "LightlikePast";
    case CausalRelation::TimelikeFuture: return "TimelikeFuture";
    case CausalRelation::TimelikePast: return "TimelikePast";
    case CausalRelation::Coincident: return "Coincident";
  }
  return "?";
}

CausalResult causal_classify(const DeSitterPoint& x, const DeSitterPoint& y,
                             const ModelParams& params) {
  const std::vector<double> X = embed(x, params);
  const std::vector<double> Y = embed(y, params);
  const double dt = Y[0] - X[0];
  double ds = 0.0;
  for (int i = 1; i <= params.d; ++i) ds += (Y[i] - X[i]) * (Y[i] - X[i]);
  const double s2 = dt * dt - ds;

  const double band = 1e-9 * params.r * params.r;
  CausalResult res;
  res.s2 = s2;
  res.in_tolerance_band = std::abs(s2) <= band;

  // coincidence: identical coordinates up to the band scale
  double chord2 = dt * dt + ds;
  if (chord2 <= band) {
    res.rel = CausalRelation::Coincident;
    return res;
  }
  const bool future = y.tau > x.tau;  // second argument later
  if (res.in_tolerance_band) {
    res.rel = future ? CausalRelation::LightlikeFuture : CausalRelation::LightlikePast;
  } else if (s2 > 0.0) {
    res.rel = future ? CausalRelation::TimelikeFuture : CausalRelation::TimelikePast;
  } else {
    res.rel = CausalRelation::Spacelike;
  }
  return res;
}

double volume_weight(double tau, const ModelParams& params) {
  if (!(std::abs(tau) < kHalfPi)) throw std::domain_error("volume_weight: |tau| >= pi/2");
  return std::pow(params.r, params.d) * std::pow(std::cos(tau), -params.d);
}

double sphere_angle(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sphere_angle: dimension mismatch");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  dot = std::max(-1.0, std::min(1.0, dot));
  return std::acos(dot);
}

}  // namespace dsqft
