// Command-line driver: reproducible runs of the model's verification
// commands, JSON + CSV artifacts per run directory.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dsqft/runconfig.hpp"

namespace {

void add_model_options(CLI::App* cmd, dsqft::RunConfig& cfg, double& frak_m, double& frak_m2,
                       double& b_over_m) {
  cmd->add_option("--d", cfg.params.d, "space-time dimension (>= 3)");
  cmd->add_option("--frak-m", frak_m, "mass parameter frak_m = m r");
  cmd->add_option("--frak-m2", frak_m2, "squared mass parameter frak_m^2");
  cmd->add_option("--r", cfg.params.r, "de Sitter radius");
  cmd->add_option("--b-over-m", b_over_m, "field strength ratio b/m");
  cmd->add_option("--s-max", cfg.s_max, "harmonic degree cutoff");
  cmd->add_option("--domain-eps", cfg.domain_eps, "mode sampling boundary cutoff");
}

void add_grid_options(CLI::App* cmd, dsqft::RunConfig& cfg) {
  cmd->add_option("--tau-panels", cfg.grid.tau_panels);
  cmd->add_option("--tau-order", cfg.grid.tau_order);
  cmd->add_option("--sphere-points", cfg.grid.sphere_points);
  cmd->add_option("--seed", cfg.grid.seed);
  cmd->add_option("--epsilon-cut", cfg.grid.epsilon_cut);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"indefinite-metric QFT on de Sitter space: verification runs"};
  app.require_subcommand(0, 1);

  dsqft::RunConfig cfg;
  double frak_m = 0.0, frak_m2 = 0.0, b_over_m = 1.0;
  std::string config_path;
  std::string runs_csv;

  app.add_option("--config", config_path, "run config JSON (overrides subcommand flags)");

  for (const std::string name :
       {"modes-validate", "kernel-eval", "npoint", "smatrix", "out-npoint", "gns-gram",
        "dispersion-scan", "stationary-check", "contrast", "report"}) {
    CLI::App* cmd = app.add_subcommand(name);
    add_model_options(cmd, cfg, frak_m, frak_m2, b_over_m);
    add_grid_options(cmd, cfg);
    cmd->add_option("--n", cfg.n, "number of field slots");
    cmd->add_option("--k", cfg.k_in, "in-slot count / distinguished slot");
    cmd->add_option("--epsilon", cfg.epsilon, "spectral gap");
    cmd->add_option("--eta", cfg.eta, "Abel damping for pointwise kernel sums");
    cmd->add_option("--tau1", cfg.tau1);
    cmd->add_option("--tau2", cfg.tau2);
    cmd->add_option("--angle", cfg.angle, "sphere angle between the two points");
    cmd->add_option("--eps-list", cfg.eps_sequence, "decreasing epsilon sequence");
    cmd->add_option("--tags", cfg.tags, "slot tags, e.g. LLL / ILO / C..");
    cmd->add_option("--fixture", cfg.fixture, "named fixture");
    cmd->add_option("--fixtures-dir", cfg.fixtures_dir);
    cmd->add_option("--fixture-run", cfg.fixture_run, "finished out-npoint run directory");
    cmd->add_option("--replay", cfg.replay, "stored certificate to replay against");
    cmd->add_option("--runs", runs_csv, "comma-separated run directories");
    cmd->add_option("--out", cfg.output_dir, "output directory");
    cmd->add_flag("--exploratory", cfg.exploratory,
                  "report-only mode for off-fixture masses");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) {
        std::cerr << "cannot read config " << config_path << "\n";
        return dsqft::kExitConfigError;
      }
      std::stringstream ss;
      ss << is.rdbuf();
      cfg = dsqft::RunConfig::from_json(ss.str());
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return dsqft::kExitConfigError;
      }
      cfg.command = app.get_subcommands().front()->get_name();
      if (frak_m2 > 0.0) frak_m = std::sqrt(frak_m2);
      if (frak_m > 0.0) {
        const int d = cfg.params.d;
        const double r = cfg.params.r;
        cfg.params = dsqft::ModelParams::with_frak_m(d, frak_m, r);
        cfg.params.b = b_over_m * cfg.params.m;
      }
      if (!runs_csv.empty()) {
        cfg.runs.clear();
        std::stringstream ss(runs_csv);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.runs.push_back(item);
      }
    }
    return dsqft::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsqft::kExitConfigError;
  }
}
