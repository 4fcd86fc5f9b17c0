#pragma once

#include <string>
#include <vector>

#include "dsqft/wightman.hpp"

namespace dsqft {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ThresholdVerdict {
  int d = 0;
  int n = 0;
  double exponent = 0.0;        // (d n - 2n - 2d)/2
  double boundary_power = 0.0;  // n(d-2)/2 - d; identical quantity by algebra
  bool passes = false;          // exponent > -1
};
ThresholdVerdict threshold(int d, int n);

enum class ScanVerdict { Converges, DivergesLog, DivergesPower, Inconclusive };
const char* to_string(ScanVerdict v);

struct ConvergenceScan {
  std::vector<double> eps;         // strictly decreasing
  std::vector<double> I_values;    // int_{|tau|<pi/2-eps} int |D+(f,x)|^n dV
  std::vector<double> increments;  // shell contributions, nonnegative
  std::vector<double> fit_residuals;
  ScanVerdict verdict = ScanVerdict::Inconclusive;
  double tail_rel_increment = 0.0;
  double log_fit_r2 = 0.0;
  double log_fit_slope = 0.0;    // dI / d ln(1/eps)
  double power_fit_r2 = 0.0;
  double power_fit_slope = 0.0;  // d ln I / d ln(1/eps)

  std::string to_csv() const;  // epsilon, I_value, increment, fit_residual
};

// L^n scan of the half-smeared two-point kernel for a single-harmonic f.
// Shell-decomposed tau quadrature with geometric refinement toward the
// boundary; sphere factor by 1-D quadrature (exact separation).
ConvergenceScan scan_In(const TestFunction& f, int n, const ModelParams& params,
                        const std::vector<double>& eps_sequence);

struct EnvelopeFit {
  double slope = 0.0;  // d ln sup_alpha |D+(f,.)| / d ln cos(tau)
  double intercept = 0.0;
  double r2 = 0.0;
  double window_lo = 0.0;              // in x = pi/2 - |tau|
  double window_hi = 0.0;
  double reference_exponent = 0.0;     // (d-2)/2
  double indicial_exponent = 0.0;      // (d-2)/2 + Re mu
};
EnvelopeFit envelope_fit(const TestFunction& f, const ModelParams& params, ModeSet& modes,
                         double x_lo = 2e-3, double x_hi = 3e-2, int n_points = 40);

struct DominatedReport {
  std::vector<double> coefs;
  std::vector<double> value_abs;    // |n-point| along the scaling sequence
  bool f_bound_holds = false;       // sup_l |D+(f_l,x)| <= F(x) at all grid nodes
  bool converges_to_zero = false;
  double final_over_initial = 0.0;
};
DominatedReport dominated_convergence_probe(const TestFunction& f,
                                            const std::vector<double>& coefs, int n,
                                            const WightmanEngine& engine);

}  // namespace dsqft
