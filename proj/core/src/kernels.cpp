#include "dsqft/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "dsqft/specfun.hpp"

namespace dsqft {

namespace {

// panel count for an oscillatory mode integral on [a,b]
int osc_panels(double a, double b, double p) {
  return std::max(6, static_cast<int>(std::ceil((b - a) * (p + 2.0) / 2.0)));
}

cplx mode_integral(const ModeFunction& mode, const TauProfile& prof,
                   const ModelParams& params, int order) {
  const PanelRule rule = panel_rule(prof.lo, prof.hi, osc_panels(prof.lo, prof.hi, mode.p), order);
  std::vector<cplx> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    terms[i] = rule.weights[i] * mode.T_plus(t) * prof(t) * volume_weight(t, params);
  }
  return pairwise_sum(terms);
}

}  // namespace

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Dplus: return "Dplus";
    case KernelKind::Dminus: return "Dminus";
    case KernelKind::Dcomm: return "Dcomm";
    case KernelKind::Gret: return "Gret";
    case KernelKind::Gadv: return "Gadv";
  }
  return "?";
}

SmearedKernel::SmearedKernel(KernelKind kind, TestFunction f, const ModelParams& params,
                             ModeSet& modes)
    : kind_(kind), f_(std::move(f)), params_(&params), modes_(&modes) {
  params.validate();
  norm_ = std::pow(params.r, 2.0 - params.d);
  terms_.reserve(f_.terms.size());
  for (const TfTerm& t : f_.terms) {
    modes.ensure(t.s);
    const ModeFunction& mode = modes_->at(t.s);
    Term term;
    term.coef = t.coef;
    term.s = t.s;
    term.p = mode.p;
    term.pole = t.pole;
    term.prof = t.a;
    term.I_plus = mode_integral(mode, t.a, params, 12);
    const cplx comp = mode_integral(mode, t.a, params, 10);
    term.I_err = std::abs(term.I_plus - comp) + 1e-15 * std::abs(term.I_plus);
    term.wronskian = mode.wronskian;
    double tmax = 0.0;
    for (std::size_t i = 0; i < mode.tau.size(); ++i)
      tmax = std::max(tmax, std::pow(std::cos(mode.tau[i]), mode.nu) * std::abs(mode.u[i]));
    term.T_max = tmax;
    terms_.push_back(std::move(term));

    const HarmonicData hd = harmonic_data(t.s, params.d);
    const double zmax = hd.A * std::abs(gegenbauer(t.s, params.lambda(), 1.0));
    eval_error_ += std::abs(t.coef) * terms_.back().I_err * terms_.back().T_max * zmax * norm_;
  }
}

cplx SmearedKernel::incomplete_J(const Term& t, double tau_y) const {
  const double lo = std::max(tau_y, t.prof.lo);
  if (lo >= t.prof.hi) return cplx(0.0, 0.0);
  const ModeFunction& mode = modes_->at(t.s);
  const PanelRule rule = panel_rule(lo, t.prof.hi, osc_panels(lo, t.prof.hi, t.p), 10);
  std::vector<cplx> acc(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double tt = rule.nodes[i];
    acc[i] = rule.weights[i] * mode.T_plus(tt) * t.prof(tt) * volume_weight(tt, *params_);
  }
  return pairwise_sum(acc);
}

cplx SmearedKernel::tau_factor(std::size_t i, double tau_y) const {
  const Term& t = terms_[i];
  const ModeFunction& mode = modes_->at(t.s);
  switch (kind_) {
    case KernelKind::Dplus:
      return t.coef * norm_ * t.I_plus * mode.T_minus(tau_y);
    case KernelKind::Dminus:
      return t.coef * norm_ * std::conj(t.I_plus) * mode.T_plus(tau_y);
    case KernelKind::Dcomm: {
      // literally the two sibling expressions, so that for real f the value
      // is bit-exactly the imaginary part of the Dplus factor
      const cplx w = t.coef * norm_ * t.I_plus * mode.T_minus(tau_y);
      const cplx v = t.coef * norm_ * std::conj(t.I_plus) * mode.T_plus(tau_y);
      return (w - v) * cplx(0.0, -0.5);
    }
    case KernelKind::Gret: {
      if (tau_y >= t.prof.hi) return cplx(0.0, 0.0);
      const cplx jp = incomplete_J(t, tau_y);
      const cplx br = jp * mode.T_minus(tau_y) - std::conj(jp) * mode.T_plus(tau_y);
      return -t.coef * norm_ / t.wronskian * br;
    }
    case KernelKind::Gadv: {
      if (tau_y <= t.prof.lo) return cplx(0.0, 0.0);
      const cplx jp = (tau_y >= t.prof.hi) ? cplx(0.0, 0.0) : incomplete_J(t, tau_y);
      const cplx kp = t.I_plus - jp;
      const cplx br = kp * mode.T_minus(tau_y) - std::conj(kp) * mode.T_plus(tau_y);
      return t.coef * norm_ / t.wronskian * br;
    }
  }
  return cplx(0.0, 0.0);
}

double SmearedKernel::zonal(std::size_t i, std::span<const double> alpha) const {
  const Term& t = terms_[i];
  double dot = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) dot += alpha[k] * t.pole[k];
  dot = std::max(-1.0, std::min(1.0, dot));
  return zonal_factor(t.s, params_->d, dot);
}

cplx SmearedKernel::eval(const DeSitterPoint& y) const {
  y.validate(params_->d);
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < terms_.size(); ++i)
    acc += tau_factor(i, y.tau) * zonal(i, y.alpha);
  return acc;
}

double SmearedKernel::envelope_constant(std::span<const double> taus) const {
  double best = 0.0;
  for (const double t : taus) {
    double bound = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const HarmonicData hd = harmonic_data(terms_[i].s, params_->d);
      bound += std::abs(tau_factor(i, t)) * hd.A *
               std::abs(gegenbauer(terms_[i].s, params_->lambda(), 1.0));
    }
    best = std::max(best, bound / std::pow(std::cos(t), 0.5 * (params_->d - 2.0)));
  }
  return best;
}

ValErr bismear(const SmearedKernel& K, const TestFunction& h) {
  const ModelParams& params = K.params();
  ValErr out;

  if (K.kind() == KernelKind::Dplus || K.kind() == KernelKind::Dminus) {
    // factored path: the tau part is a product of two full mode integrals.
    // Both integrals use the identical rule as the kernel construction, so
    // Hermitian pairs of bilinear forms agree bit-exactly (complex products
    // commute exactly and conjugation is exact).
    const bool plus = K.kind() == KernelKind::Dplus;
    std::vector<cplx> pieces;
    double err = 0.0;
    for (std::size_t i = 0; i < K.n_terms(); ++i) {
      for (const TfTerm& ht : h.terms) {
        if (K.term_degree(i) != ht.s) continue;
        double dot = 0.0;
        for (std::size_t k = 0; k < ht.pole.size(); ++k) dot += K.term_pole(i)[k] * ht.pole[k];
        dot = std::max(-1.0, std::min(1.0, dot));
        const double zon = zonal_factor(ht.s, params.d, dot);
        const ModeFunction& mode = K.modes().at(ht.s);
        const cplx j_plus = mode_integral(mode, ht.a, params, 12);
        const cplx j_comp = mode_integral(mode, ht.a, params, 10);
        const double j_err = std::abs(j_plus - j_comp) + 1e-15 * std::abs(j_plus);
        const cplx left = K.term_coef(i) * K.mode_norm() *
                          (plus ? K.term_I_plus(i) : std::conj(K.term_I_plus(i)));
        const cplx right = ht.coef * (plus ? std::conj(j_plus) : j_plus);
        pieces.push_back(left * right * zon);
        err += (K.term_I_err(i) * std::abs(right) + std::abs(left) * j_err) * std::abs(zon);
      }
    }
    out.value = pairwise_sum(pieces);
    out.error = err + 1e-15 * std::abs(out.value);
    return out;
  }

  cplx main(0, 0), comp(0, 0);
  for (std::size_t i = 0; i < K.n_terms(); ++i) {
    for (const TfTerm& ht : h.terms) {
      if (K.term_degree(i) != ht.s) continue;
      double dot = 0.0;
      for (std::size_t k = 0; k < ht.pole.size(); ++k) dot += K.term_pole(i)[k] * ht.pole[k];
      dot = std::max(-1.0, std::min(1.0, dot));
      const double zon = zonal_factor(ht.s, params.d, dot);
      const int panels = std::max(8, static_cast<int>(std::ceil((ht.a.hi - ht.a.lo) * 10.0)));
      for (const int order : {12, 10}) {
        const PanelRule rule = panel_rule(ht.a.lo, ht.a.hi, panels, order);
        std::vector<cplx> acc(rule.nodes.size());
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double t = rule.nodes[q];
          acc[q] = rule.weights[q] * K.tau_factor(i, t) * (ht.coef * ht.a(t)) * zon *
                   volume_weight(t, params);
        }
        const cplx part = pairwise_sum(acc);
        if (order == 12)
          main += part;
        else
          comp += part;
      }
    }
  }
  out.value = main;
  out.error = 2.0 * std::abs(main - comp) + 1e-14 * std::abs(main) +
              1e-2 * K.error_estimate();
  return out;
}

ValErr D_plus(const TestFunction& f, const TestFunction& h, const ModelParams& params,
              ModeSet& modes) {
  return bismear(SmearedKernel(KernelKind::Dplus, f, params, modes), h);
}
ValErr D_minus(const TestFunction& f, const TestFunction& h, const ModelParams& params,
               ModeSet& modes) {
  return bismear(SmearedKernel(KernelKind::Dminus, f, params, modes), h);
}
ValErr D_comm(const TestFunction& f, const TestFunction& h, const ModelParams& params,
              ModeSet& modes) {
  return bismear(SmearedKernel(KernelKind::Dcomm, f, params, modes), h);
}
ValErr G_ret(const TestFunction& f, const TestFunction& h, const ModelParams& params,
             ModeSet& modes) {
  return bismear(SmearedKernel(KernelKind::Gret, f, params, modes), h);
}
ValErr G_adv(const TestFunction& f, const TestFunction& h, const ModelParams& params,
             ModeSet& modes) {
  return bismear(SmearedKernel(KernelKind::Gadv, f, params, modes), h);
}

ValErr overlap_integral(const TestFunction& f, const TestFunction& h,
                        const ModelParams& params) {
  ValErr out;
  cplx main(0, 0), comp(0, 0);
  for (const TfTerm& ft : f.terms) {
    for (const TfTerm& ht : h.terms) {
      if (ft.s != ht.s) continue;
      const double lo = std::max(ft.a.lo, ht.a.lo);
      const double hi = std::min(ft.a.hi, ht.a.hi);
      if (!(lo < hi)) continue;
      double dot = 0.0;
      for (std::size_t k = 0; k < ht.pole.size(); ++k) dot += ft.pole[k] * ht.pole[k];
      dot = std::max(-1.0, std::min(1.0, dot));
      const double zon = zonal_factor(ht.s, params.d, dot);
      for (const int order : {12, 10}) {
        const PanelRule rule = panel_rule(lo, hi, 12, order);
        std::vector<cplx> acc(rule.nodes.size());
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double t = rule.nodes[q];
          acc[q] = rule.weights[q] * ft.coef * ft.a(t) * ht.coef * ht.a(t) * zon *
                   volume_weight(t, params);
        }
        const cplx part = pairwise_sum(acc);
        if (order == 12)
          main += part;
        else
          comp += part;
      }
    }
  }
  out.value = main;
  out.error = 2.0 * std::abs(main - comp) + 1e-15 * std::abs(main);
  return out;
}

KernelPointResult kernel_point(const ModelParams& params, ModeSet& modes,
                               const DeSitterPoint& x1, const DeSitterPoint& x2,
                               double eta, int s_max) {
  if (!(eta > 0.0)) throw std::domain_error("kernel_point: eta > 0 required (Abel damping)");
  x1.validate(params.d);
  x2.validate(params.d);
  modes.ensure(s_max);
  double dot = 0.0;
  for (int i = 0; i < params.d; ++i) dot += x1.alpha[i] * x2.alpha[i];
  dot = std::max(-1.0, std::min(1.0, dot));

  const double norm = std::pow(params.r, 2.0 - params.d);
  std::vector<cplx> terms(static_cast<std::size_t>(s_max) + 1);
  double beta = 0.0;  // measured high-s envelope of p |u(tau1) u(tau2)|
  for (int s = 0; s <= s_max; ++s) {
    const ModeFunction& mode = modes.at(s);
    const cplx term = std::exp(-mode.p * eta) * mode.T_plus(x1.tau) * mode.T_minus(x2.tau) *
                      zonal_factor(s, params.d, dot);
    terms[s] = norm * term;
    if (s >= std::max(0, s_max - 4)) {
      const double amp = mode.p * std::abs(mode.u_plus(x1.tau)) * std::abs(mode.u_plus(x2.tau));
      beta = std::max(beta, amp);
    }
  }
  KernelPointResult out;
  out.value = pairwise_sum(terms);
  out.eta = eta;
  out.s_max = s_max;

  // tail: |T T| <= cos^nu cos^nu * beta / p ; zonal bound A(s,d) C_s(1)
  const double nu = 0.5 * (params.d - 2.0);
  const double envelope = std::pow(std::cos(x1.tau) * std::cos(x2.tau), nu) * beta * norm;
  double tail = 0.0;
  for (int s = s_max + 1; s <= s_max + 200000; ++s) {
    const double p = s + nu;
    const HarmonicData hd = harmonic_data(s, params.d);
    const double t = std::exp(-p * eta) * envelope / p * hd.A *
                     std::abs(gegenbauer(s, params.lambda(), 1.0));
    tail += t;
    if (t < 1e-18 * (std::abs(out.value) + tail)) break;
  }
  out.tail_bound = tail;
  return out;
}

}  // namespace dsqft
