#pragma once

#include <complex>
#include <stdexcept>

namespace dsqft {

using cplx = std::complex<double>;

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// Gamma function for complex argument (Lanczos approximation, reflection
// for Re z < 1/2). Throws PoleError at nonpositive integers.
cplx gamma_complex(cplx z);

// Gauss hypergeometric series sum_k (a)_k (b)_k / (c)_k z^k / k!.
// Contract: |z| < 1 (throws std::domain_error otherwise); throws PoleError
// when c is a nonpositive integer. Summed to relative tail < 1e-14.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx z);

struct GegenbauerIndex {
  int s;          // degree >= 0
  double lambda;  // index = (d-2)/2, > 0
};

// C_s^lambda(t) by the three-term recurrence
//   s C_s = 2 t (s+lambda-1) C_{s-1} - (s+2 lambda-2) C_{s-2}.
double gegenbauer(const GegenbauerIndex& idx, double t);
double gegenbauer(int s, double lambda, double t);

struct HarmonicData {
  int s = 0;
  int d = 0;
  double h = 0;  // dim H^s(S^{d-1})
  double A = 0;  // addition-theorem coefficient A(s,d)
};

// h(s,d) = (2s+d-2) (s+d-3)! / (s! (d-2)!) for s >= 1, h(0,d) = 1;
// A(s,d) = (2s+d-2) Gamma(1+(d-2)/2) / (2 pi^{1+(d-2)/2} (d-2)).
HarmonicData harmonic_data(int s, int d);

// surface area |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
double sphere_area(int d);

}  // namespace dsqft
