#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dsqft/grid.hpp"
#include "dsqft/specfun.hpp"

using namespace dsqft;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere weights sum to |S^{d-1}|") {
  for (const int d : {3, 4, 6}) {
    ModelParams p = ModelParams::with_frak_m(d, 1.0);
    GridSpec spec;
    spec.sphere_points = 512;
    const QuadratureGrid g = make_grid(spec, p);
    double sum = 0.0;
    for (double w : g.sphere_weights) sum += w;
    CHECK(std::abs(sum - sphere_area(d)) <= 1e-10 * sphere_area(d));
  }
}

TEST_CASE("grid determinism for fixed seed") {
  ModelParams p = ModelParams::with_frak_m(4, 1.0);
  GridSpec spec;
  spec.seed = 991;
  const QuadratureGrid a = make_grid(spec, p);
  const QuadratureGrid b = make_grid(spec, p);
  REQUIRE(a.sphere_nodes.size() == b.sphere_nodes.size());
  for (std::size_t i = 0; i < a.sphere_nodes.size(); ++i)
    for (int k = 0; k < 4; ++k) CHECK(a.sphere_nodes[i][k] == b.sphere_nodes[i][k]);
  for (std::size_t i = 0; i < a.tau_nodes.size(); ++i) CHECK(a.tau_nodes[i] == b.tau_nodes[i]);
}

TEST_CASE("slab volume of the constant function, d=3") {
  // int_{|tau|<0.5} cos^{-3} dtau * |S^2|
  ModelParams p = ModelParams::with_frak_m(3, 1.0);
  GridSpec spec;
  spec.tau_panels = 16;
  spec.tau_order = 12;
  spec.sphere_points = 256;
  spec.epsilon_cut = kPi / 2 - 0.5;  // slab tau in (-0.5, 0.5)
  const QuadratureGrid g = make_grid(spec, p);

  std::vector<double> tau_terms(g.tau_nodes.size());
  for (std::size_t i = 0; i < g.tau_nodes.size(); ++i)
    tau_terms[i] = g.tau_weights[i] * volume_weight(g.tau_nodes[i], p);
  double sphere_sum = 0.0;
  for (double w : g.sphere_weights) sphere_sum += w;
  const double got = pairwise_sum(tau_terms) * sphere_sum;

  auto F = [](double t) {
    const double sec = 1.0 / std::cos(t);
    return 0.5 * (sec * std::tan(t) + std::log(sec + std::tan(t)));
  };
  const double expected = (F(0.5) - F(-0.5)) * sphere_area(3);
  CHECK(std::abs(got - expected) <= 1e-6 * expected);
}

TEST_CASE("grid spec json round trip") {
  GridSpec s;
  s.tau_panels = 7;
  s.tau_order = 9;
  s.sphere_points = 64;
  s.seed = 123456789012345ULL;
  s.epsilon_cut = 2.5e-4;
  const GridSpec t = GridSpec::from_json(s.to_json());
  CHECK(t.tau_panels == s.tau_panels);
  CHECK(t.tau_order == s.tau_order);
  CHECK(t.sphere_points == s.sphere_points);
  CHECK(t.seed == s.seed);
  CHECK(t.epsilon_cut == s.epsilon_cut);
}

TEST_CASE("invalid specs are rejected") {
  ModelParams p = ModelParams::with_frak_m(4, 1.0);
  GridSpec s;
  s.sphere_points = 3;  // odd
  CHECK_THROWS_AS(make_grid(s, p), std::invalid_argument);
  s = GridSpec{};
  s.epsilon_cut = 0.0;
  CHECK_THROWS_AS(make_grid(s, p), std::invalid_argument);
  s = GridSpec{};
  s.tau_panels = 0;
  CHECK_THROWS_AS(make_grid(s, p), std::invalid_argument);
}
