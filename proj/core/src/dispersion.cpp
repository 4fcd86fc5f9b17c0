#include "dsqft/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsqft/specfun.hpp"

namespace dsqft {

namespace {
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}

ThresholdVerdict threshold(int d, int n) {
  if (d < 3 || n < 3) throw std::invalid_argument("threshold: d >= 3, n >= 3");
  ThresholdVerdict v;
  v.d = d;
  v.n = n;
  v.exponent = 0.5 * (static_cast<double>(d) * n - 2.0 * n - 2.0 * d);
  v.boundary_power = 0.5 * n * (d - 2.0) - d;  // same number, kept for display
  v.passes = v.exponent > -1.0;
  return v;
}

const char* to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::Converges: return "Converges";
    case ScanVerdict::DivergesLog: return "DivergesLog";
    case ScanVerdict::DivergesPower: return "DivergesPower";
    case ScanVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// geometric subdivision of [pi/2 - g_hi, pi/2 - g_lo] (boundary shell)
std::vector<double> geometric_cuts(double g_hi, double g_lo) {
  std::vector<double> cuts{g_hi};
  double g = g_hi;
  while (g > g_lo * 1.4) {
    g = std::max(g / 1.5, g_lo);
    cuts.push_back(g);
  }
  if (cuts.back() != g_lo) cuts.push_back(g_lo);
  return cuts;
}

double shell_integral(const ModeFunction& mode, const ModelParams& params, int n,
                      double g_hi, double g_lo) {
  // int over g_lo <= pi/2 - |tau| <= g_hi (both signs of tau) of |T|^n cos^-d
  const std::vector<double> cuts = geometric_cuts(g_hi, g_lo);
  std::vector<double> parts;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    for (const double sgn : {1.0, -1.0}) {
      const double a = kHalfPi - cuts[c];
      const double b = kHalfPi - cuts[c + 1];
      const PanelRule rule = panel_rule(std::min(a, b), std::max(a, b), 4, 12);
      std::vector<double> acc(rule.nodes.size());
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = sgn * rule.nodes[q];
        acc[q] = rule.weights[q] * std::pow(std::abs(mode.T_plus(t)), n) *
                 volume_weight(t, params);
      }
      parts.push_back(pairwise_sum(acc));
    }
  }
  return pairwise_sum(parts);
}

double inner_integral(const ModeFunction& mode, const ModelParams& params, int n,
                      double g_hi) {
  // |tau| <= pi/2 - g_hi: uniform center + geometric approach to the cut
  std::vector<double> parts;
  const double t_cut = kHalfPi - std::max(g_hi, 0.35);
  if (t_cut > 0.0) {
    const PanelRule rule = panel_rule(-t_cut, t_cut, 24, 12);
    std::vector<double> acc(rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      acc[q] = rule.weights[q] * std::pow(std::abs(mode.T_plus(rule.nodes[q])), n) *
               volume_weight(rule.nodes[q], params);
    parts.push_back(pairwise_sum(acc));
  }
  if (g_hi < 0.35) parts.push_back(shell_integral(mode, params, n, 0.35, g_hi));
  return pairwise_sum(parts);
}

double sphere_power_factor(int s, int d, int n) {
  // int_{S^{d-1}} |Z_{s,beta}(alpha)|^n dOmega(alpha)
  const PanelRule rule = panel_rule(0.0, std::numbers::pi, 24 * (s + 1), 12);
  std::vector<double> acc(rule.nodes.size());
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double th = rule.nodes[q];
    acc[q] = rule.weights[q] * std::pow(std::abs(zonal_factor(s, d, std::cos(th))), n) *
             std::pow(std::sin(th), d - 2.0);
  }
  return sphere_area(d - 1) * pairwise_sum(acc);
}

}  // namespace

ConvergenceScan scan_In(const TestFunction& f, int n, const ModelParams& params,
                        const std::vector<double>& eps_sequence) {
  if (!f.single_harmonic()) throw std::invalid_argument("scan_In: f must be single-harmonic");
  if (n < 2) throw std::invalid_argument("scan_In: n >= 2");
  if (eps_sequence.size() < 3) throw std::invalid_argument("scan_In: need >= 3 epsilons");
  for (std::size_t i = 0; i + 1 < eps_sequence.size(); ++i)
    if (!(eps_sequence[i] > eps_sequence[i + 1]) || !(eps_sequence.back() > 0.0))
      throw std::invalid_argument("scan_In: eps sequence must be strictly decreasing, > 0");
  const double eps_min = eps_sequence.back();
  if (eps_min < 1e-7)
    throw BudgetError("scan_In: requested epsilon below the resolvable budget (1e-7)");

  const TfTerm& term = f.terms.front();
  const ModeFunction mode = build_mode(params, term.s, 0.5 * eps_min);

  // |D+(f,x)| = |coef| |I+[a]| r^{2-d} |T^-_p(tau)| |Z_s(alpha.beta)|
  cplx i_plus(0.0, 0.0);
  {
    const int panels = std::max(6, static_cast<int>(std::ceil(
                                       (term.a.hi - term.a.lo) * (mode.p + 2.0) / 2.0)));
    const PanelRule rule = panel_rule(term.a.lo, term.a.hi, panels, 12);
    std::vector<cplx> acc(rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      acc[q] = rule.weights[q] * mode.T_plus(t) * term.a(t) * volume_weight(t, params);
    }
    i_plus = pairwise_sum(acc);
  }
  const double prefactor =
      std::pow(std::abs(term.coef) * std::abs(i_plus) * std::pow(params.r, 2.0 - params.d),
               static_cast<double>(n));
  const double sphere_part = sphere_power_factor(term.s, params.d, n);

  ConvergenceScan scan;
  scan.eps = eps_sequence;
  double acc = inner_integral(mode, params, n, eps_sequence.front());
  scan.I_values.push_back(prefactor * sphere_part * acc);
  scan.increments.push_back(scan.I_values.front());
  for (std::size_t j = 0; j + 1 < eps_sequence.size(); ++j) {
    const double shell = shell_integral(mode, params, n, eps_sequence[j], eps_sequence[j + 1]);
    acc += shell;
    scan.I_values.push_back(prefactor * sphere_part * acc);
    scan.increments.push_back(prefactor * sphere_part * shell);
  }

  // fits over the tail half of the sequence
  const std::size_t half = eps_sequence.size() / 2;
  std::vector<double> lx, iy, ly;
  for (std::size_t j = half; j < eps_sequence.size(); ++j) {
    lx.push_back(std::log(1.0 / eps_sequence[j]));
    iy.push_back(scan.I_values[j]);
    ly.push_back(std::log(std::max(scan.I_values[j], 1e-300)));
  }
  const LinearFit logfit = linear_fit(lx, iy);   // I ~ a + b ln(1/eps)
  const LinearFit powfit = linear_fit(lx, ly);   // ln I ~ a + q ln(1/eps)
  scan.log_fit_r2 = logfit.r2;
  scan.log_fit_slope = logfit.slope;
  scan.power_fit_r2 = powfit.r2;
  scan.power_fit_slope = powfit.slope;
  scan.fit_residuals.assign(eps_sequence.size(), 0.0);
  for (std::size_t j = 0; j < eps_sequence.size(); ++j)
    scan.fit_residuals[j] =
        scan.I_values[j] - (logfit.intercept + logfit.slope * std::log(1.0 / eps_sequence[j]));

  scan.tail_rel_increment =
      scan.increments.back() / std::max(scan.I_values.back(), 1e-300);
  if (scan.tail_rel_increment < 1e-3) {
    scan.verdict = ScanVerdict::Converges;
  } else {
    // log vs power discrimination on per-ln(1/eps) increment ratios
    bool log_like = true;
    std::vector<double> rates;
    for (std::size_t j = half; j + 1 < eps_sequence.size(); ++j) {
      const double dl = std::log(eps_sequence[j] / eps_sequence[j + 1]);
      rates.push_back(scan.increments[j + 1] / dl);
    }
    for (std::size_t j = 0; j + 1 < rates.size(); ++j) {
      const double ratio = rates[j + 1] / std::max(rates[j], 1e-300);
      if (ratio < 0.75 || ratio > 1.35) log_like = false;
    }
    if (log_like && scan.log_fit_r2 > 0.99)
      scan.verdict = ScanVerdict::DivergesLog;
    else if (scan.power_fit_r2 > 0.99 && scan.power_fit_slope > 0.05)
      scan.verdict = ScanVerdict::DivergesPower;
    else
      scan.verdict = ScanVerdict::Inconclusive;
  }
  return scan;
}

EnvelopeFit envelope_fit(const TestFunction& f, const ModelParams& params, ModeSet& modes,
                         double x_lo, double x_hi, int n_points) {
  if (!f.single_harmonic()) throw std::invalid_argument("envelope_fit: f must be single-harmonic");
  if (!(x_lo > 0.0 && x_hi > x_lo)) throw std::invalid_argument("envelope_fit: bad window");
  if (modes.domain_eps() > 0.6 * x_lo)
    throw std::invalid_argument("envelope_fit: insufficient window (mode domain too narrow)");
  const SmearedKernel dp(KernelKind::Dplus, f, params, modes);
  const int s = f.terms.front().s;
  const double zmax = harmonic_data(s, params.d).A *
                      std::abs(gegenbauer(s, params.lambda(), 1.0));
  std::vector<double> lx, ly;
  for (int j = 0; j < n_points; ++j) {
    const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(j) / (n_points - 1));
    const double tau = kHalfPi - x;
    const double sup = std::abs(dp.tau_factor(0, tau)) * zmax;
    lx.push_back(std::log(std::cos(tau)));
    ly.push_back(std::log(sup));
  }
  const LinearFit fit = linear_fit(lx, ly);
  EnvelopeFit out;
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r2 = fit.r2;
  out.window_lo = x_lo;
  out.window_hi = x_hi;
  out.reference_exponent = 0.5 * (params.d - 2.0);
  out.indicial_exponent = out.reference_exponent + compute_mu(params).mu.real();
  return out;
}

DominatedReport dominated_convergence_probe(const TestFunction& f,
                                            const std::vector<double>& coefs, int n,
                                            const WightmanEngine& engine) {
  if (coefs.empty()) throw std::invalid_argument("dominated_convergence_probe: empty sequence");
  if (n < 3) throw std::invalid_argument("dominated_convergence_probe: n >= 3");
  DominatedReport rep;
  rep.coefs = coefs;

  std::vector<FieldSlot> slots;
  for (int l = 0; l < n; ++l) slots.push_back(loc_slot(f));

  const ModelParams& params = engine.params();
  ModeSet& modes = engine.modes();
  const SmearedKernel base(KernelKind::Dplus, f, params, modes);
  const double sup_c = std::abs(*std::max_element(
      coefs.begin(), coefs.end(),
      [](double a, double b) { return std::abs(a) < std::abs(b); }));

  // F(x) = sup_l |c_l| * |D+(f,x)|; check domination on a grid-node sweep
  rep.f_bound_holds = true;
  const QuadratureGrid& grid = engine.grid();
  std::vector<SmearedKernel> scaled_kernels;
  scaled_kernels.reserve(coefs.size());
  for (const double c : coefs)
    scaled_kernels.emplace_back(KernelKind::Dplus, scaled(f, c), params, modes);
  for (std::size_t j = 0; j < grid.tau_nodes.size() && rep.f_bound_holds; j += 4) {
    for (std::size_t m = 0; m < grid.sphere_nodes.size() && rep.f_bound_holds; m += 16) {
      const DeSitterPoint y{grid.tau_nodes[j], grid.sphere_nodes[m]};
      const double fx = sup_c * std::abs(base.eval(y));
      for (const SmearedKernel& kl : scaled_kernels) {
        if (std::abs(kl.eval(y)) > fx * (1.0 + 1e-12) + 1e-300) {
          rep.f_bound_holds = false;
          break;
        }
      }
    }
  }

  for (const double c : coefs) {
    std::vector<FieldSlot> scaled_slots = slots;
    scaled_slots[0] = loc_slot(scaled(f, c));
    const NPointResult r = engine.truncated_npoint(scaled_slots);
    rep.value_abs.push_back(std::abs(r.value));
  }
  rep.final_over_initial =
      rep.value_abs.front() > 0.0 ? rep.value_abs.back() / rep.value_abs.front() : 0.0;
  rep.converges_to_zero =
      std::abs(coefs.back()) < 1e-2 * std::abs(coefs.front()) &&
      rep.final_over_initial < 1.5e-2;
  return rep;
}

std::string ConvergenceScan::to_csv() const {
  std::string out = "epsilon,I_value,increment,fit_residual\n";
  char buf[160];
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", eps[i], I_values[i],
                  increments[i], i < fit_residuals.size() ? fit_residuals[i] : 0.0);
    out += buf;
  }
  return out;
}

}  // namespace dsqft
