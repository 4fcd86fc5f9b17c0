#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dsqft/modes.hpp"
#include "dsqft/runconfig.hpp"

using namespace dsqft;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path tmpdir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("dsqft_cli_" + tag);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("run config json round trip") {
  RunConfig c;
  c.command = "npoint";
  c.params = ModelParams::with_frak_m(6, 3.0);
  c.params.b_n[3] = 2.0;
  c.grid.sphere_points = 128;
  c.n = 3;
  c.tags = "LLO";
  c.functions.push_back(make_bump(-0.3, 0.3, 1, unit_vector(6, 5), cplx(1, -2)));
  c.eps_sequence = {1e-2, 1e-3};
  c.output_dir = "runs/x";
  const RunConfig d = RunConfig::from_json(c.to_json());
  CHECK(d.command == c.command);
  CHECK(d.params.d == 6);
  CHECK(d.params.frak_m() == doctest::Approx(3.0));
  CHECK(d.params.bn(3) == 2.0);
  CHECK(d.grid.sphere_points == 128);
  CHECK(d.tags == "LLO");
  CHECK(d.functions.size() == 1);
  CHECK(d.functions[0].terms[0].coef == cplx(1, -2));
  CHECK(d.eps_sequence == c.eps_sequence);
}

TEST_CASE("stationary-check writes a certificate and replays byte-identically") {
  RunConfig c;
  c.command = "stationary-check";
  c.n = 3;
  c.epsilon = 0.1;
  c.output_dir = tmpdir("stat").string();
  std::ostringstream log;
  CHECK(run(c, log) == kExitOk);
  const std::string cert = slurp(fs::path(c.output_dir) / "certificate.json");
  CHECK(cert.find("zero") != std::string::npos);

  // replay against the stored bytes
  RunConfig c2 = c;
  c2.replay = (fs::path(c.output_dir) / "certificate.json").string();
  c2.output_dir = tmpdir("stat2").string();
  CHECK(run(c2, log) == kExitOk);

  // spectral-support variant with a distinguished slot
  RunConfig c3 = c;
  c3.k_in = 2;
  c3.n = 4;
  c3.output_dir = tmpdir("stat3").string();
  CHECK(run(c3, log) == kExitOk);
  CHECK(slurp(fs::path(c3.output_dir) / "certificate.json").find("spectral_support") !=
        std::string::npos);
}

TEST_CASE("modes-validate run: pass at the anchor mass, byte-identical rerun") {
  RunConfig c;
  c.command = "modes-validate";
  c.params = ModelParams::with_frak_m2(4, 2.0);
  c.s_max = 4;
  c.domain_eps = 1e-3;
  c.output_dir = tmpdir("modes").string();
  std::ostringstream log;
  CHECK(run(c, log) == kExitOk);
  const std::string csv1 = slurp(fs::path(c.output_dir) / "residuals.csv");

  RunConfig c2 = c;
  c2.output_dir = tmpdir("modes2").string();
  CHECK(run(c2, log) == kExitOk);
  CHECK(csv1 == slurp(fs::path(c2.output_dir) / "residuals.csv"));
  CHECK(slurp(fs::path(c.output_dir) / "summary.json").find(kHypArgumentReading) !=
        std::string::npos);
}

TEST_CASE("npoint run with inline functions emits value, terms and hermiticity") {
  RunConfig c;
  c.command = "npoint";
  c.params = ModelParams::with_frak_m(6, 3.0);
  c.s_max = 2;
  c.grid.tau_panels = 10;
  c.grid.tau_order = 8;
  c.grid.sphere_points = 64;
  c.grid.epsilon_cut = 2e-3;
  c.tags = "LLL";
  c.functions = {make_bump(-0.45, -0.05, 0, unit_vector(6, 5)),
                 make_bump(-0.2, 0.2, 0, unit_vector(6, 0)),
                 make_bump(0.05, 0.4, 0, unit_vector(6, 1))};
  c.output_dir = tmpdir("npoint").string();
  std::ostringstream log;
  CHECK(run(c, log) == kExitOk);
  const std::string summary = slurp(fs::path(c.output_dir) / "summary.json");
  CHECK(summary.find("value_re") != std::string::npos);
  CHECK(summary.find("hermiticity") != std::string::npos);
  const std::string terms = slurp(fs::path(c.output_dir) / "terms.csv");
  CHECK(terms.find("slot,re,im") == 0);

  // determinism: identical config, byte-identical numeric payloads
  RunConfig c2 = c;
  c2.output_dir = tmpdir("npoint2").string();
  CHECK(run(c2, log) == kExitOk);
  CHECK(terms == slurp(fs::path(c2.output_dir) / "terms.csv"));
}

TEST_CASE("dispersion-scan run is concordant at (4,4) and budget-guarded") {
  RunConfig c;
  c.command = "dispersion-scan";
  c.params = ModelParams::with_frak_m2(4, 2.0);
  c.n = 4;
  c.eps_sequence = {3e-2, 1.5e-2, 7.5e-3, 3.75e-3, 1.9e-3, 9.4e-4, 4.7e-4, 2.4e-4, 1.2e-4};
  c.output_dir = tmpdir("scan").string();
  std::ostringstream log;
  CHECK(run(c, log) == kExitOk);
  CHECK(slurp(fs::path(c.output_dir) / "scan.csv").find("epsilon,I_value") == 0);

  RunConfig bad = c;
  bad.eps_sequence = {1e-2, 1e-4, 1e-9};
  bad.output_dir = tmpdir("scanbad").string();
  CHECK(run(bad, log) == kExitBudgetExceeded);
}

TEST_CASE("report bundle collates runs and rejects empty input") {
  std::ostringstream log;
  RunConfig stat;
  stat.command = "stationary-check";
  stat.n = 4;
  stat.epsilon = 0.5;
  stat.output_dir = tmpdir("bundle_run").string();
  REQUIRE(run(stat, log) == kExitOk);

  const fs::path out = tmpdir("bundle_out");
  report_bundle({stat.output_dir}, out.string());
  const std::string md = slurp(out / "bundle.md");
  CHECK(md.find("threshold table") != std::string::npos);
  CHECK(md.find("stationary-check") != std::string::npos);
  const std::string csv = slurp(out / "threshold_table.csv");
  CHECK(csv.find("d,n,exponent,passes") == 0);
  // 20 cells: d in 3..7, n in 3..6
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);

  CHECK_THROWS_AS(report_bundle({}, out.string()), std::invalid_argument);
  CHECK_THROWS_AS(report_bundle({"/nonexistent/run"}, out.string()), std::invalid_argument);
}

TEST_CASE("unknown command and broken config map to the config error code") {
  RunConfig c;
  c.command = "frobnicate";
  c.output_dir = tmpdir("bad").string();
  std::ostringstream log;
  CHECK(run(c, log) == kExitConfigError);

  RunConfig miss;
  miss.command = "npoint";
  miss.tags = "LL";  // no functions
  miss.output_dir = tmpdir("bad2").string();
  CHECK(run(miss, log) == kExitConfigError);
}
