#pragma once

#include <span>

#include "dsqft/modes.hpp"
#include "dsqft/testfn.hpp"

namespace dsqft {

enum class KernelKind { Dplus, Dminus, Dcomm, Gret, Gadv };
const char* to_string(KernelKind kind);

struct ValErr {
  cplx value{0.0, 0.0};
  double error = 0.0;
};

// Half-smeared fundamental kernel y -> K(f, y), collapsed in harmonic degree
// (single term per test-function term, exact in s). All five kinds are built
// from the same mode data; the retarded/advanced kernels use the 1-D Green
// kernel with the measured Wronskian, so the Green identity fixes their
// normalization. The mode sum carries an overall r^{2-d}.
class SmearedKernel {
 public:
  SmearedKernel(KernelKind kind, TestFunction f, const ModelParams& params,
                ModeSet& modes);

  KernelKind kind() const { return kind_; }
  const TestFunction& f() const { return f_; }
  const ModelParams& params() const { return *params_; }
  const ModeSet& modes() const { return *modes_; }
  double mode_norm() const { return norm_; }
  std::size_t n_terms() const { return terms_.size(); }
  int term_degree(std::size_t i) const { return terms_[i].s; }
  std::span<const double> term_pole(std::size_t i) const { return terms_[i].pole; }
  cplx term_coef(std::size_t i) const { return terms_[i].coef; }
  cplx term_I_plus(std::size_t i) const { return terms_[i].I_plus; }
  double term_I_err(std::size_t i) const { return terms_[i].I_err; }

  // tau part of term i at tau_y, coefficient included
  cplx tau_factor(std::size_t i, double tau_y) const;
  // zonal part of term i at a sphere point
  double zonal(std::size_t i, std::span<const double> alpha) const;

  cplx eval(const DeSitterPoint& y) const;

  // crude per-evaluation bound from the mode-integral quadrature errors
  double error_estimate() const { return eval_error_; }

  // measured envelope constant: sup over the given taus of
  // sup_alpha |K(f,(tau,alpha))| / cos^{(d-2)/2} tau
  double envelope_constant(std::span<const double> taus) const;

 private:
  struct Term {
    cplx coef;
    int s = 0;
    double p = 0.0;
    std::vector<double> pole;
    TauProfile prof;
    cplx I_plus;   // full smeared mode integral with the volume weight
    double I_err = 0.0;
    double T_max = 0.0;  // max |T_p| over the mode samples
    cplx wronskian;
  };

  cplx incomplete_J(const Term& t, double tau_y) const;  // int_{max(tau,lo)}^{hi} T+ a rho

  KernelKind kind_;
  TestFunction f_;
  const ModelParams* params_;
  const ModeSet* modes_;
  std::vector<Term> terms_;
  double norm_ = 1.0;  // r^{2-d}
  double eval_error_ = 0.0;
};

// integral over M of K(f,.) h dV, exact in harmonic degree
ValErr bismear(const SmearedKernel& K, const TestFunction& h);

// convenience: fully smeared fundamental bilinear forms
ValErr D_plus(const TestFunction& f, const TestFunction& h, const ModelParams& params,
              ModeSet& modes);
ValErr D_minus(const TestFunction& f, const TestFunction& h, const ModelParams& params,
               ModeSet& modes);
ValErr D_comm(const TestFunction& f, const TestFunction& h, const ModelParams& params,
              ModeSet& modes);
ValErr G_ret(const TestFunction& f, const TestFunction& h, const ModelParams& params,
             ModeSet& modes);
ValErr G_adv(const TestFunction& f, const TestFunction& h, const ModelParams& params,
             ModeSet& modes);

// int_M f h dV for separable test functions (exact in s; tau part by panels)
ValErr overlap_integral(const TestFunction& f, const TestFunction& h,
                        const ModelParams& params);

// Pointwise two-point kernel with Abel damping e^{-p eta} (the undamped
// pointwise series is only distributionally convergent). Tail bound from the
// measured high-s mode envelope.
struct KernelPointResult {
  cplx value{0.0, 0.0};
  double tail_bound = 0.0;
  int s_max = 0;
  double eta = 0.0;
};
KernelPointResult kernel_point(const ModelParams& params, ModeSet& modes,
                               const DeSitterPoint& x1, const DeSitterPoint& x2,
                               double eta, int s_max);

}  // namespace dsqft
