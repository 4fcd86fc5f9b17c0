#include "dsqft/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsqft/specfun.hpp"
#include "json.hpp"

namespace dsqft {

namespace {
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}

std::string GridSpec::to_json() const {
  nlohmann::json j;
  j["tau_panels"] = tau_panels;
  j["tau_order"] = tau_order;
  j["sphere_points"] = sphere_points;
  j["seed"] = seed;
  j["epsilon_cut"] = epsilon_cut;
  return j.dump();
}

GridSpec GridSpec::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  GridSpec s;
  s.tau_panels = j.at("tau_panels").get<int>();
  s.tau_order = j.at("tau_order").get<int>();
  s.sphere_points = j.at("sphere_points").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.epsilon_cut = j.at("epsilon_cut").get<double>();
  return s;
}

double QuadratureGrid::tau_lo() const { return -(kHalfPi - spec.epsilon_cut); }
double QuadratureGrid::tau_hi() const { return kHalfPi - spec.epsilon_cut; }

QuadratureGrid make_grid(const GridSpec& spec, const ModelParams& params) {
  params.validate();
  if (spec.tau_panels < 1 || spec.tau_order < 2)
    throw std::invalid_argument("make_grid: tau rule sizes invalid");
  if (spec.sphere_points < 2 || spec.sphere_points % 2 != 0)
    throw std::invalid_argument("make_grid: sphere_points must be even and >= 2");
  if (!(spec.epsilon_cut > 0.0) || !(spec.epsilon_cut < kHalfPi))
    throw std::invalid_argument("make_grid: epsilon_cut out of range");

  QuadratureGrid g;
  g.spec = spec;
  g.d = params.d;
  g.r = params.r;

  const double a = -(kHalfPi - spec.epsilon_cut);
  const double b = kHalfPi - spec.epsilon_cut;
  PanelRule main = panel_rule(a, b, spec.tau_panels, spec.tau_order);
  PanelRule comp = panel_rule(a, b, spec.tau_panels, spec.tau_order - 2);
  g.tau_nodes = std::move(main.nodes);
  g.tau_weights = std::move(main.weights);
  g.tau_nodes_c = std::move(comp.nodes);
  g.tau_weights_c = std::move(comp.weights);

  // antithetic Gaussian directions; weights sum to |S^{d-1}| exactly
  Rng64 rng(spec.seed);
  const int n = spec.sphere_points;
  g.sphere_nodes.reserve(n);
  const double w = sphere_area(params.d) / n;
  for (int j = 0; j < n / 2; ++j) {
    std::vector<double> v(params.d);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int i = 0; i < params.d; ++i) {
        v[i] = rng.next_gaussian();
        norm2 += v[i] * v[i];
      }
    } while (norm2 < 1e-24);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : v) c *= inv;
    std::vector<double> anti(params.d);
    for (int i = 0; i < params.d; ++i) anti[i] = -v[i];
    g.sphere_nodes.push_back(std::move(v));
    g.sphere_nodes.push_back(std::move(anti));
  }
  g.sphere_weights.assign(n, w);
  return g;
}

QuadratureGrid rotate_grid(const QuadratureGrid& grid, const std::vector<double>& R) {
  const int d = grid.d;
  if (static_cast<int>(R.size()) != d * d)
    throw std::invalid_argument("rotate_grid: R must be d x d row-major");
  QuadratureGrid g = grid;
  for (auto& node : g.sphere_nodes) {
    std::vector<double> out(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out[i] += R[i * d + j] * node[j];
    node = std::move(out);
  }
  return g;
}

}  // namespace dsqft
