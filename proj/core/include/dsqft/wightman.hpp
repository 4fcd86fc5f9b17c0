#pragma once

#include <vector>

#include "dsqft/grid.hpp"
#include "dsqft/kernels.hpp"
#include "dsqft/partitions.hpp"

namespace dsqft {

enum class SlotTag { In, Loc, Out, Current };
const char* to_string(SlotTag tag);

// A Current slot carries j(g) = phi((box+m^2)g); in the truncated functions
// it enters through the profile g(y) itself (the Green identity collapses
// G_r((box+m^2)g, .) to g). The Yang-Feldman replacement produces currents
// smeared with G_{r/a} f instead of a test function; those keep f and tag
// the form.
enum class CurrentForm { Plain, RetardedSmear, AdvancedSmear };

struct FieldSlot {
  SlotTag tag = SlotTag::Loc;
  TestFunction f;
  CurrentForm current_form = CurrentForm::Plain;
};

FieldSlot in_slot(TestFunction f);
FieldSlot loc_slot(TestFunction f);
FieldSlot out_slot(TestFunction f);
FieldSlot current_slot(TestFunction f, CurrentForm form = CurrentForm::Plain);

struct NPointResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  std::vector<cplx> term_breakdown;  // contributing k-terms, ascending slot order
  std::vector<int> term_slot;        // slot index of each breakdown entry
  bool grid_warning = false;         // error estimate above 10% of |value|
  bool exact_zero = false;           // structural zero (no quadrature involved)
};

class WightmanEngine {
 public:
  WightmanEngine(const ModelParams& params, ModeSet& modes, QuadratureGrid grid);

  const ModelParams& params() const { return params_; }
  const QuadratureGrid& grid() const { return grid_; }
  ModeSet& modes() const { return *modes_; }

  // Truncated n-point function of tagged fields. n = 2 is (b^2/m^2) D+(f1,f2)
  // for every tag pair; n >= 3 runs the k-sum with G_r on Loc slots, the
  // commutator kernel on Out slots, nothing on In slots; a single Current
  // slot collapses the sum to its own term; two or more Currents vanish
  // exactly.
  NPointResult truncated_npoint(const std::vector<FieldSlot>& slots) const;

  // <phi_in(conj f_k)...phi_in(conj f_1) O, phi_out(f_{k+1})...phi_out(f_n) O>^T
  // via telescope cancellation: b_n (-i/2) [P_k - P_n] with
  // P_j = int prod_{l<=j} D^-(f_l,y) prod_{l>j} D^+(f_l,y) dV.
  NPointResult smatrix_element(const std::vector<TestFunction>& in_fns,
                               const std::vector<TestFunction>& out_fns) const;

  // all-out truncated n-point for real test functions (k-sum path)
  NPointResult out_npoint(const std::vector<TestFunction>& real_fns) const;

  // full (non-truncated) VEV through the cluster expansion over ordered
  // subsequences; empty slot list gives <O,O> = 1.
  ValErr full_vev(const std::vector<FieldSlot>& slots) const;

  struct HermiticityReport {
    cplx lhs;
    cplx rhs;  // conj of the reversed-conjugated value
    double diff = 0.0;
    double scale = 0.0;
    bool pass = false;
  };
  HermiticityReport verify_hermiticity(const std::vector<FieldSlot>& slots,
                                       double rel_tol = 1e-12) const;

  struct RotationReport {
    cplx original;
    cplx rotated;
    double diff = 0.0;
    double tol = 0.0;
    bool pass = false;
  };
  // same tau rule and weights, sphere nodes rotated: node-wise identical
  // integrands up to rounding
  RotationReport verify_rotation_invariance(const std::vector<FieldSlot>& slots,
                                            const std::vector<double>& R,
                                            double rel_tol = 1e-12) const;
  // independently seeded grid: statistical agreement within summed errors
  RotationReport verify_rotation_invariance(const std::vector<FieldSlot>& slots,
                                            const std::vector<double>& R,
                                            const QuadratureGrid& other_grid) const;

  struct LocalityReport {
    int n_samples = 0;
    int violations = 0;
    int case_count[6] = {0, 0, 0, 0, 0, 0};  // [0] unclassified, 1..5 case analysis
    double max_bracket = 0.0;
    double error_bound = 0.0;
    bool pass = false;
  };
  // bracket of Eq-4.3 type at sampled points y:
  //   K(f,y) D+(h,y) + D-(f,y) K(h,y) - K(h,y) D+(f,y) - D-(h,y) K(f,y)
  // with K = G_r (locality; requires spacelike cap-hulls) or K = D (CCR
  // variant; any supports, vanishes identically).
  LocalityReport locality_bracket(const TestFunction& f, const TestFunction& h,
                                  KernelKind k_kind, int n_samples, double cap_radius,
                                  std::uint64_t seed, bool require_spacelike) const;

  struct YangFeldmanReport {
    cplx loc_term;      // k-term of the all-Loc n-point
    cplx current_term;  // the Current(G_r f_k) replacement term
    cplx loc_others;    // remaining terms of the all-Loc n-point
    cplx in_variant;    // value with slot k tagged In
    bool exact = false; // bitwise equality of the decompositions
  };
  YangFeldmanReport yang_feldman_check(const std::vector<TestFunction>& fns, int k) const;

  struct SlotCache;  // node values per slot and kernel kind

 private:
  NPointResult mixed_product_integral(const std::vector<const SlotCache*>& factors,
                                      double prefactor) const;

  ModelParams params_;
  ModeSet* modes_;
  QuadratureGrid grid_;
};

// Effective cap hull of a separable test function: tau interval times the
// angular cap of the given radius around each pole. spacelike_hulls samples
// hull corner points pairwise.
bool spacelike_hulls(const TestFunction& f, const TestFunction& h, const ModelParams& params,
                     double cap_radius);

}  // namespace dsqft
