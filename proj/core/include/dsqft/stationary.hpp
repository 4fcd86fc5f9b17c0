#pragma once

#include <string>
#include <vector>

#include "dsqft/numeric.hpp"

namespace dsqft {

// Frequency support of the Fourier-transformed kernels in the stationary
// setting: D^- lives in (-inf,-eps], D^+ in [eps,inf), the distinguished
// kernel (G_r or D) is unconstrained. The half-line placement follows the
// reflection f_theta(E) = f(-E); the source text's set relation carries a
// sign slip that is flagged in the tests.
enum class FreqSupport { MinusHalfLine, Free, PlusHalfLine };

struct TermPattern {
  int n = 0;
  int k = 1;  // distinguished slot, 1-based
  std::vector<FreqSupport> kinds;

  // D^- ... D^- K D^+ ... D^+ with K unconstrained at position k
  static TermPattern mixed(int n, int k);
  // product of D^- only (the out-n-point bracket)
  static TermPattern all_minus(int n);
  // mirror: D^+ <-> D^- swapped (used by the reflection-duality check)
  TermPattern reflected() const;
};

struct IneqStep {
  int r = 0;            // partial sum index, r = 2..n
  std::string route;    // "tail" or "complement"
  double bound = 0.0;   // certified lower bound on sum_{l=r}^n E_l
};

struct SupportCertificate {
  bool holds = false;
  int n = 0;
  int k = 0;
  double epsilon = 0.0;
  std::vector<IneqStep> chain;
  std::vector<double> counterexample;  // E assignment with a non-positive partial sum
  std::string to_json() const;         // deterministic bytes; replayable
};

// Interval/half-line calculus on the support of
// prod_{l<k} D^-(E_l) K(E_k) prod_{l>k} D^+(E_l) delta(sum E_l):
// certifies sum_{l=r}^n E_l > 0 for every r = 2..n, or produces an explicit
// counterexample assignment.
SupportCertificate verify_spectral_support(const TermPattern& pattern, double epsilon);

struct ZeroCertificate {
  enum class Status { Zero, Inconclusive };
  Status status = Status::Inconclusive;
  int n = 0;
  double epsilon = 0.0;
  double sum_upper_bound = 0.0;  // support of prod D^- forces sum E <= -n eps
  std::string to_json() const;
};

// prod_l D^-(E_l) delta(sum E_l): the delta hyperplane and the support are
// disjoint for eps > 0, so the out-n-point bracket vanishes identically.
ZeroCertificate verify_out_in_equivalence(int n, double epsilon);

struct ContrastReport {
  ZeroCertificate certificate;
  std::string fixture_name;
  cplx fixture_value{0.0, 0.0};
  double fixture_error = 0.0;
  double ratio = 0.0;  // |value| / error
  std::string to_json() const;
};

// stationary exact zero vs the frozen de Sitter fixture value
ContrastReport contrast_report(const ZeroCertificate& cert, const std::string& fixture_name,
                               cplx fixture_value, double fixture_error);

}  // namespace dsqft
