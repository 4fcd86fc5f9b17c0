#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace dsqft {

using cplx = std::complex<double>;

// Deterministic tree reduction over a fixed node order. Used for every
// quadrature sum so that results are bit-reproducible for a fixed grid.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

// Gauss-Legendre rule on [-1,1], nodes by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
GaussLegendre gauss_legendre(int order);

// Composite rule: `panels` equal panels on [a,b], Gauss-Legendre of `order`
// points on each.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
PanelRule panel_rule(double a, double b, int panels, int order);

// Finite-difference weights for the m-th derivative at x0 on arbitrary
// nodes xs (Fornberg recursion).
std::vector<double> fd_weights(double x0, std::span<const double> xs, int m);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Splitmix-style generator used for sphere sampling; fully specified here so
// node streams are reproducible independent of the standard library.
class Rng64 {
 public:
  explicit Rng64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_double();        // uniform in (0,1)
  double next_gaussian();      // standard normal, Box-Muller
 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dsqft
