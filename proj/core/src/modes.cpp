#include "dsqft/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "dsqft/specfun.hpp"

namespace dsqft {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct OdeState {
  cplx u;
  cplx v;
};

// u'' = -(p^2 + c / cos^2 tau) u
struct ModeOde {
  double p2;
  double c;
  OdeState rhs(double t, const OdeState& y) const {
    const double ct = std::cos(t);
    return {y.v, -(p2 + c / (ct * ct)) * y.u};
  }
};

// Dormand-Prince 5(4) step; returns embedded error estimate.
double dp45_step(const ModeOde& ode, double t, double h, const OdeState& y, OdeState& out) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  auto ax = [&](const OdeState& base, std::initializer_list<std::pair<double, const OdeState*>> terms) {
    OdeState r = base;
    for (auto& [cc, k] : terms) {
      r.u += h * cc * k->u;
      r.v += h * cc * k->v;
    }
    return r;
  };

  const OdeState k1 = ode.rhs(t, y);
  const OdeState k2 = ode.rhs(t + h / 5, ax(y, {{a21, &k1}}));
  const OdeState k3 = ode.rhs(t + 3 * h / 10, ax(y, {{a31, &k1}, {a32, &k2}}));
  const OdeState k4 = ode.rhs(t + 4 * h / 5, ax(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const OdeState k5 = ode.rhs(t + 8 * h / 9, ax(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const OdeState k6 =
      ode.rhs(t + h, ax(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));

  out.u = y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u);
  out.v = y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v);
  const OdeState k7 = ode.rhs(t + h, out);

  const cplx eu = h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
  const cplx ev = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
  const double su = std::abs(out.u) + std::abs(y.u);
  const double sv = std::abs(out.v) + std::abs(y.v);
  const double tol_u = 1e-13 * (su + 1e-30);
  const double tol_v = 1e-13 * (sv + 1e-30);
  return std::max(std::abs(eu) / tol_u, std::abs(ev) / tol_v);
}

OdeState integrate_to(const ModeOde& ode, double t0, double t1, OdeState y,
                      double& achieved) {
  // adaptive stepping from t0 to t1 (either direction); `achieved` records
  // the exact floating-point time of the last accepted step, which is the
  // coordinate the returned state belongs to (a label mismatch of one ulp of
  // tau is amplified near the boundary by |u'| ~ sqrt(q) |u|)
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(1e-3, std::abs(t1 - t0));
  achieved = t0;
  if (h == 0.0) return y;
  int guard = 0;
  while (dir * (t1 - t) > 1e-300) {
    if (dir * (t + h) > dir * t1) h = t1 - t;
    OdeState ynew;
    const double err = dp45_step(ode, t, h, y, ynew);
    if (err <= 1.0) {
      t += h;
      y = ynew;
      h *= std::min(5.0, std::max(0.3, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (++guard > 2000000) throw std::runtime_error("mode integration failed to converge");
    if (std::abs(h) < 1e-16) throw std::runtime_error("mode integration step underflow");
  }
  achieved = t;
  return y;
}

// graded node ladder on [0, L_pad]; spacing min(h0, x/56) with x the distance
// to the coordinate singularity at pi/2
// Node spacing: uniform 0.024/p in the interior (6th-order stencils on the
// oscillation), graded 0.0045 x / sqrt(|c|) against the boundary singularity
// of q = p^2 + c/cos^2. No grading when c = 0 (mu = 0 masses): the solution
// is regular there and over-refinement only amplifies rounding noise through
// the 1/dx^2 of the second difference.
std::vector<double> half_ladder(double p, double c, double l_pad) {
  const double h0 = std::min(4e-3, 0.024 / std::max(p, 1.0));
  // the +1 keeps dx/x small enough for the near-power-law solutions of
  // weakly singular q (small |c|), whose derivatives scale like k!/x^k
  // rather than (sqrt|c|/x)^k
  const double sqc = (std::abs(c) > 1e-14) ? std::sqrt(std::abs(c) + 1.0) : 0.0;
  std::vector<double> ts{0.0};
  double t = 0.0;
  while (t < l_pad) {
    const double x = kHalfPi - t;
    double dt = h0;
    if (sqc > 0.0) dt = std::min(dt, 0.0045 * x / sqc);
    if (t + 1.5 * dt >= l_pad) {
      // avoid a degenerate final interval: absorb the remainder
      ts.push_back(l_pad);
      break;
    }
    t += dt;
    ts.push_back(t);
  }
  return ts;
}

struct InitData {
  cplx u0;
  cplx v0;
};

InitData initial_data(const ModelParams& params, double p) {
  const MuParameter mu = compute_mu(params);
  const cplx g1 = gamma_complex(p + mu.mu);
  const cplx g2 = gamma_complex(p - mu.mu + 1.0);
  const cplx gp = gamma_complex(cplx(p + 1.0, 0.0));
  const double prod = (g1 * g2).real();  // = |Gamma(p+mu)|^2 in the principal case
  const double n_p = std::sqrt(prod) / gp.real();
  const cplx f0 = hyp2f1(mu.mu, 1.0 - mu.mu, p + 1.0, 0.5);
  const cplx f1 = hyp2f1(mu.mu + 1.0, 2.0 - mu.mu, p + 2.0, 0.5);
  const double c = (mu.mu * (1.0 - mu.mu)).real();
  // u(0) = N F(1/2);  u'(0) = N [ i p F + F'(1/2) * z'(0) ], z'(0) = i/2
  const double u0 = n_p * f0.real();
  const double v0_im = n_p * (p * f0.real() + 0.5 * c / (p + 1.0) * f1.real());
  return {cplx(u0, 0.0), cplx(0.0, v0_im)};
}

}  // namespace

MuParameter compute_mu(const ModelParams& params) {
  params.validate();
  const double a = (params.d - 1.0) * (params.d - 1.0) - 4.0 * params.frak_m2();
  MuParameter out;
  if (a >= 0.0) {
    out.mu = cplx(0.5 * (1.0 - std::sqrt(a)), 0.0);
    out.series = MuParameter::Series::Complementary;
  } else {
    out.mu = cplx(0.5, -0.5 * std::sqrt(-a));
    out.series = MuParameter::Series::Principal;
  }
  return out;
}

double ModeFunction::tau_min() const { return -(kHalfPi - domain_eps); }
double ModeFunction::tau_max() const { return kHalfPi - domain_eps; }

std::size_t ModeFunction::locate(double t) const {
  if (t < tau.front() || t > tau.back())
    throw std::domain_error("ModeFunction: tau outside sampled domain");
  auto it = std::upper_bound(tau.begin(), tau.end(), t);
  std::size_t k = static_cast<std::size_t>(std::distance(tau.begin(), it));
  if (k == 0) k = 1;
  if (k >= tau.size()) k = tau.size() - 1;
  return k - 1;
}

cplx ModeFunction::u_plus(double t) const {
  const std::size_t k = locate(t);
  const double t0 = tau[k], t1 = tau[k + 1];
  const double h = t1 - t0;
  const double xi = (t - t0) / h;
  auto q = [&](double tt) {
    const double ct = std::cos(tt);
    return p * p + coef_c / (ct * ct);
  };
  const cplx f0 = u[k], f1 = u[k + 1];
  const cplx d0 = du[k] * h, d1 = du[k + 1] * h;
  const cplx s0 = -q(t0) * u[k] * h * h, s1 = -q(t1) * u[k + 1] * h * h;
  // two-point quintic Hermite in xi
  const cplx A = f1 - f0 - d0 - 0.5 * s0;
  const cplx B = d1 - d0 - s0;
  const cplx C = s1 - s0;
  const cplx a3 = 10.0 * A - 4.0 * B + 0.5 * C;
  const cplx a4 = -15.0 * A + 7.0 * B - C;
  const cplx a5 = 6.0 * A - 3.0 * B + 0.5 * C;
  return f0 + xi * (d0 + xi * (0.5 * s0 + xi * (a3 + xi * (a4 + xi * a5))));
}

cplx ModeFunction::du_plus(double t) const {
  const std::size_t k = locate(t);
  const double t0 = tau[k], t1 = tau[k + 1];
  const double h = t1 - t0;
  const double xi = (t - t0) / h;
  auto q = [&](double tt) {
    const double ct = std::cos(tt);
    return p * p + coef_c / (ct * ct);
  };
  const cplx f0 = u[k], f1 = u[k + 1];
  const cplx d0 = du[k] * h, d1 = du[k + 1] * h;
  const cplx s0 = -q(t0) * u[k] * h * h, s1 = -q(t1) * u[k + 1] * h * h;
  const cplx A = f1 - f0 - d0 - 0.5 * s0;
  const cplx B = d1 - d0 - s0;
  const cplx C = s1 - s0;
  const cplx a3 = 10.0 * A - 4.0 * B + 0.5 * C;
  const cplx a4 = -15.0 * A + 7.0 * B - C;
  const cplx a5 = 6.0 * A - 3.0 * B + 0.5 * C;
  const cplx dp_xi = d0 + xi * (s0 + xi * (3.0 * a3 + xi * (4.0 * a4 + xi * 5.0 * a5)));
  return dp_xi / h;
}

cplx ModeFunction::T_plus(double t) const {
  return std::pow(std::cos(t), nu) * u_plus(t);
}

cplx ModeFunction::dT_plus(double t) const {
  const double cn = std::pow(std::cos(t), nu);
  return cn * (du_plus(t) - nu * std::tan(t) * u_plus(t));
}

ModeFunction build_mode(const ModelParams& params, int s, double domain_eps,
                        double residual_tol) {
  params.validate();
  if (s < 0) throw std::invalid_argument("build_mode: s >= 0");
  if (!(domain_eps > 0.0) || !(domain_eps < 1.0))
    throw std::invalid_argument("build_mode: domain_eps out of range");

  ModeFunction mode;
  mode.s = s;
  mode.nu = 0.5 * (params.d - 2.0);
  mode.p = s + mode.nu;
  mode.kappa2 = static_cast<double>(s) * (s + params.d - 2.0);
  mode.frak_m2 = params.frak_m2();
  mode.coef_c = mode.frak_m2 - mode.nu * (mode.nu + 1.0);
  mode.domain_eps = domain_eps;

  const double l_pad = kHalfPi - 0.8 * domain_eps;
  const std::vector<double> right = half_ladder(mode.p, mode.coef_c, l_pad);

  // symmetric grid; index of tau=0 is right.size()-1 counted from the left
  std::vector<double> ts;
  ts.reserve(2 * right.size() - 1);
  for (auto it = right.rbegin(); it != right.rend(); ++it) ts.push_back(-*it);
  for (std::size_t i = 1; i < right.size(); ++i) ts.push_back(right[i]);
  const std::size_t zero_idx = right.size() - 1;

  const InitData init = initial_data(params, mode.p);
  const ModeOde ode{mode.p * mode.p, mode.coef_c};

  mode.tau = ts;
  mode.u.assign(ts.size(), cplx(0.0, 0.0));
  mode.du.assign(ts.size(), cplx(0.0, 0.0));
  mode.u[zero_idx] = init.u0;
  mode.du[zero_idx] = init.v0;

  OdeState y{init.u0, init.v0};
  double t_at = 0.0;
  for (std::size_t i = zero_idx + 1; i < ts.size(); ++i) {
    y = integrate_to(ode, mode.tau[i - 1], ts[i], y, t_at);
    mode.tau[i] = t_at;
    mode.u[i] = y.u;
    mode.du[i] = y.v;
  }
  y = {init.u0, init.v0};
  for (std::size_t i = zero_idx; i-- > 0;) {
    y = integrate_to(ode, mode.tau[i + 1], ts[i], y, t_at);
    mode.tau[i] = t_at;
    mode.u[i] = y.u;
    mode.du[i] = y.v;
  }

  // Wronskian W = -2i Im(conj(u) u'), constant along the domain (Abel)
  auto wr = [&](std::size_t i) {
    return cplx(0.0, -2.0) * std::imag(std::conj(mode.u[i]) * mode.du[i]);
  };
  mode.wronskian = wr(zero_idx);
  double drift = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    drift = std::max(drift, std::abs(wr(i) - mode.wronskian) / std::abs(mode.wronskian));
  mode.wronskian_drift = drift;

  // Finite-difference residual of the tau ODE, 7-point stencils. Evaluated
  // in the u-variable: with T = cos^nu(tau) u the operator factorizes exactly,
  //   cos^2 T'' + (d-2) sin cos T' + (kappa^2 cos^2 + m^2) T
  //     = cos^{nu+2} [ u'' + (p^2 + c/cos^2) u ],
  // so the relative residual is identical and the cos^nu prefactor noise
  // (catastrophic near the boundary) never enters the differences.
  const double l_pub = kHalfPi - domain_eps;
  mode.residual_at.assign(ts.size(), 0.0);
  double max_rel = 0.0;
  for (std::size_t i = 3; i + 3 < ts.size(); ++i) {
    if (std::abs(ts[i]) > l_pub) continue;
    const std::span<const double> xs(&ts[i - 3], 7);
    const std::vector<double> w2 = fd_weights(ts[i], xs, 2);
    cplx d2(0, 0);
    for (int j = 0; j < 7; ++j) d2 += w2[j] * mode.u[i - 3 + j];
    const double ct = std::cos(ts[i]);
    const double q = mode.p * mode.p + mode.coef_c / (ct * ct);
    const cplx res = d2 + q * mode.u[i];
    // the p^2 |u| floor keeps the normalization meaningful at turning points
    // of q (complementary masses), where both terms vanish together
    const double scale =
        std::abs(d2) + (std::abs(q) + mode.p * mode.p) * std::abs(mode.u[i]) + 1e-300;
    const double rel = std::abs(res) / scale;
    mode.residual_at[i] = rel;
    mode.report_nodes.push_back(static_cast<int>(i));
    max_rel = std::max(max_rel, rel);
  }
  mode.max_residual = max_rel;
  if (max_rel > residual_tol) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "build_mode: ODE residual %.3e exceeds tolerance %.1e (wrong formula reading?)",
                  max_rel, residual_tol);
    throw ResidualError(msg);
  }
  return mode;
}

ModeSet::ModeSet(const ModelParams& params, int s_max, double domain_eps)
    : params_(params), domain_eps_(domain_eps) {
  if (s_max < 0) throw std::invalid_argument("ModeSet: s_max >= 0");
  modes_.reserve(s_max + 1);
  for (int s = 0; s <= s_max; ++s)
    modes_.push_back(std::make_shared<const ModeFunction>(build_mode(params_, s, domain_eps_)));
}

const ModeFunction& ModeSet::at(int s) const {
  if (s < 0 || s >= static_cast<int>(modes_.size()))
    throw std::out_of_range("ModeSet: mode degree not built");
  return *modes_[s];
}

void ModeSet::ensure(int s) {
  while (static_cast<int>(modes_.size()) <= s)
    modes_.push_back(std::make_shared<const ModeFunction>(
        build_mode(params_, static_cast<int>(modes_.size()), domain_eps_)));
}

void write_mode_csv(std::ostream& os, const ModeFunction& mode) {
  os << "tau,re_T_plus,im_T_plus,re_T_minus,im_T_minus,residual\n";
  char buf[256];
  for (std::size_t i = 0; i < mode.tau.size(); ++i) {
    const double cn = std::pow(std::cos(mode.tau[i]), mode.nu);
    const cplx Tp = cn * mode.u[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", mode.tau[i],
                  Tp.real(), Tp.imag(), Tp.real(), -Tp.imag(), mode.residual_at[i]);
    os << buf;
  }
}

double closed_form_deviation(const ModeFunction& mode, const ModelParams& params,
                             char reading) {
  const MuParameter mu = compute_mu(params);
  const cplx g1 = gamma_complex(mode.p + mu.mu);
  const cplx g2 = gamma_complex(mode.p - mu.mu + 1.0);
  const double n_p = std::sqrt((g1 * g2).real()) / gamma_complex(cplx(mode.p + 1.0, 0)).real();
  double dev = 0.0;
  double scale = 0.0;
  // series-convergent window |z| = 1/(2 cos tau) <= 0.9 and inside the domain
  const double t_max = std::min(std::acos(1.0 / 1.8), mode.tau_max());
  for (int j = -8; j <= 8; ++j) {
    const double t = t_max * j / 8.0;
    cplx z;
    if (reading == 'A')
      z = std::exp(cplx(0.0, mode.p * t)) / (2.0 * std::cos(t));
    else
      z = std::exp(cplx(0.0, t)) / (2.0 * std::cos(t));
    const cplx uref = n_p * std::exp(cplx(0.0, mode.p * t)) *
                      hyp2f1(mu.mu, 1.0 - mu.mu, mode.p + 1.0, z);
    dev = std::max(dev, std::abs(mode.u_plus(t) - uref));
    scale = std::max(scale, std::abs(uref));
  }
  return dev / (scale + 1e-300);
}

}  // namespace dsqft
