#pragma once

#include <map>
#include <vector>

#include "dsqft/numeric.hpp"

namespace dsqft {

// Model constants (d, r, m, b, {b_n}) plus the derived mass parameter
// frak_m = m r. b_n defaults to 1 for any n not present in the table.
struct ModelParams {
  int d = 4;
  double r = 1.0;
  double m = 1.0;
  double b = 1.0;
  std::map<int, double> b_n;

  double frak_m() const { return m * r; }
  double frak_m2() const { return m * m * r * r; }
  double lambda() const { return 0.5 * (d - 2); }  // Gegenbauer index
  double bn(int n) const {
    auto it = b_n.find(n);
    return it == b_n.end() ? 1.0 : it->second;
  }
  void validate() const;

  static ModelParams with_frak_m(int d, double frak_m, double r = 1.0);
  static ModelParams with_frak_m2(int d, double frak_m2, double r = 1.0);
};

// Point (tau, alpha) in global coordinates, tau in (-pi/2, pi/2), alpha a
// unit vector in R^d.
struct DeSitterPoint {
  double tau = 0.0;
  std::vector<double> alpha;

  void validate(int d) const;
};

DeSitterPoint make_point(double tau, std::vector<double> alpha, int d);

// Unit vector e_k in R^d (k in 0..d-1; e_last = paper's pole e_d).
std::vector<double> unit_vector(int d, int k);

// Ambient embedding (r tan tau, r alpha / cos tau) into R^{d+1}
// (component 0 is the Minkowski time axis).
std::vector<double> embed(const DeSitterPoint& x, const ModelParams& params);

enum class CausalRelation {
  Spacelike,
  LightlikeFuture,
  LightlikePast,
  TimelikeFuture,
  TimelikePast,
  Coincident,
};

const char* to_string(CausalRelation rel);

struct CausalResult {
  CausalRelation rel = CausalRelation::Spacelike;
  double s2 = 0.0;               // ambient Minkowski interval of the chord
  bool in_tolerance_band = false;  // |s2| within the lightlike band
};

// Classification by the sign of the ambient interval of the embedded chord;
// temporal order ("Future": second argument later) from tau. The lightlike
// band is |s2| <= 1e-9 r^2.
CausalResult causal_classify(const DeSitterPoint& x, const DeSitterPoint& y,
                             const ModelParams& params);

// cos^{-d}(tau) r^d; throws std::domain_error at |tau| >= pi/2.
double volume_weight(double tau, const ModelParams& params);

// angular distance between unit vectors
double sphere_angle(std::span<const double> a, std::span<const double> b);

}  // namespace dsqft
