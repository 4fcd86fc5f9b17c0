#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsqft/geometry.hpp"

namespace dsqft {

struct GridSpec {
  int tau_panels = 24;
  int tau_order = 12;
  int sphere_points = 2048;  // must be even (antithetic pairs)
  std::uint64_t seed = 20240811ULL;
  double epsilon_cut = 1e-3;

  std::string to_json() const;
  static GridSpec from_json(const std::string& text);
};

// Product quadrature over the tau slab (-pi/2+eps, pi/2-eps) times S^{d-1}.
// tau: composite Gauss-Legendre panels, plus a companion rule two orders
// lower on the same panels for error estimation. Sphere: seeded antithetic
// Gaussian directions with equal weights summing to |S^{d-1}| exactly.
struct QuadratureGrid {
  GridSpec spec;
  int d = 0;
  double r = 1.0;

  std::vector<double> tau_nodes;
  std::vector<double> tau_weights;
  std::vector<double> tau_nodes_c;   // companion rule (order-2)
  std::vector<double> tau_weights_c;

  std::vector<std::vector<double>> sphere_nodes;
  std::vector<double> sphere_weights;

  double tau_lo() const;
  double tau_hi() const;
};

QuadratureGrid make_grid(const GridSpec& spec, const ModelParams& params);

// Grid with every sphere node rotated by R (d x d, row-major). Weights,
// tau rule and spec are shared.
QuadratureGrid rotate_grid(const QuadratureGrid& grid, const std::vector<double>& R);

}  // namespace dsqft
