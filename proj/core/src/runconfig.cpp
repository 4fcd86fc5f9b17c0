#include "dsqft/runconfig.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dsqft/dispersion.hpp"
#include "dsqft/gns.hpp"
#include "dsqft/kernels.hpp"
#include "dsqft/modes.hpp"
#include "dsqft/stationary.hpp"
#include "dsqft/wightman.hpp"
#include "json.hpp"

namespace dsqft {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json params_to_json(const ModelParams& p) {
  json j;
  j["d"] = p.d;
  j["r"] = p.r;
  j["frak_m"] = p.frak_m();
  j["b_over_m"] = p.b / p.m;
  json bn = json::object();
  for (const auto& [k, v] : p.b_n) bn[std::to_string(k)] = v;
  j["b_n"] = bn;
  return j;
}

ModelParams params_from_json(const json& j) {
  ModelParams p = ModelParams::with_frak_m(j.at("d").get<int>(), j.at("frak_m").get<double>(),
                                           j.value("r", 1.0));
  p.b = j.value("b_over_m", 1.0) * p.m;
  if (j.contains("b_n"))
    for (const auto& [k, v] : j.at("b_n").items()) p.b_n[std::stoi(k)] = v.get<double>();
  p.validate();
  return p;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SlotTag tag_from_string(const std::string& s) {
  if (s == "in" || s == "I") return SlotTag::In;
  if (s == "loc" || s == "L") return SlotTag::Loc;
  if (s == "out" || s == "O") return SlotTag::Out;
  if (s == "current" || s == "C") return SlotTag::Current;
  throw std::invalid_argument("unknown slot tag: " + s);
}

struct Fixture {
  std::string name;
  ModelParams params;
  GridSpec grid;
  int s_max = 12;
  double domain_eps = 5e-4;
  std::vector<TestFunction> functions;
  std::string tags;
  std::vector<WordSpec> basis;
};

Fixture load_fixture(const RunConfig& cfg) {
  const fs::path path = fs::path(cfg.fixtures_dir) / (cfg.fixture + ".json");
  const json j = json::parse(read_file(path));
  Fixture fx;
  fx.name = j.value("name", cfg.fixture);
  fx.params = params_from_json(j.at("params"));
  if (j.contains("grid")) fx.grid = GridSpec::from_json(j.at("grid").dump());
  fx.s_max = j.value("s_max", 12);
  fx.domain_eps = j.value("domain_eps", 5e-4);
  for (const auto& fj : j.at("functions")) fx.functions.push_back(testfn_from_json(fj.dump()));
  fx.tags = j.value("tags", std::string());
  if (j.contains("basis")) {
    for (const auto& wj : j.at("basis")) {
      WordSpec w;
      for (const auto& sj : wj) {
        w.slots.push_back({sj.at("tag").get<std::string>(), sj.at("fn").get<int>()});
      }
      fx.basis.push_back(std::move(w));
    }
  }
  return fx;
}

struct Resolved {
  ModelParams params;
  GridSpec grid;
  int s_max;
  double domain_eps;
  std::vector<TestFunction> functions;
  std::string tags;
  std::vector<WordSpec> basis;
  std::string fixture_name;
};

Resolved resolve(const RunConfig& cfg) {
  Resolved r{cfg.params, cfg.grid, cfg.s_max, cfg.domain_eps,
             cfg.functions, cfg.tags, cfg.basis, ""};
  if (!cfg.fixture.empty()) {
    const Fixture fx = load_fixture(cfg);
    r.params = fx.params;
    r.grid = fx.grid;
    r.s_max = fx.s_max;
    r.domain_eps = fx.domain_eps;
    r.fixture_name = fx.name;
    if (r.functions.empty()) r.functions = fx.functions;
    if (r.tags.empty()) r.tags = fx.tags;
    if (r.basis.empty()) r.basis = fx.basis;
  }
  return r;
}

json npoint_summary(const NPointResult& res) {
  json j;
  j["value_re"] = res.value.real();
  j["value_im"] = res.value.imag();
  j["error"] = res.error;
  j["grid_warning"] = res.grid_warning;
  j["exact_zero"] = res.exact_zero;
  j["terms"] = json::array();
  for (std::size_t t = 0; t < res.term_breakdown.size(); ++t) {
    j["terms"].push_back({{"slot", res.term_slot.size() > t ? res.term_slot[t] : -1},
                          {"re", res.term_breakdown[t].real()},
                          {"im", res.term_breakdown[t].imag()}});
  }
  return j;
}

std::string terms_csv(const NPointResult& res) {
  std::string out = "slot,re,im\n";
  for (std::size_t t = 0; t < res.term_breakdown.size(); ++t) {
    out += std::to_string(res.term_slot.size() > t ? res.term_slot[t] : -1) + "," +
           fmt(res.term_breakdown[t].real()) + "," + fmt(res.term_breakdown[t].imag()) + "\n";
  }
  return out;
}

int cmd_modes_validate(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  std::string csv = "s,p,max_residual,wronskian_drift,wronskian_norm_dev,closed_form_dev\n";
  double worst_res = 0.0, worst_drift = 0.0, worst_dev = 0.0;
  double rejected_dev = 0.0;
  for (int s = 0; s <= r.s_max; ++s) {
    const ModeFunction mode = build_mode(r.params, s, r.domain_eps);
    const double wdev = std::abs(mode.wronskian - cplx(0.0, -2.0)) / 2.0;
    const double cdev = closed_form_deviation(mode, r.params, 'B');
    worst_res = std::max(worst_res, mode.max_residual);
    worst_drift = std::max(worst_drift, mode.wronskian_drift);
    worst_dev = std::max(worst_dev, cdev);
    if (s <= 2) rejected_dev = std::max(rejected_dev, closed_form_deviation(mode, r.params, 'A'));
    csv += std::to_string(s) + "," + fmt(mode.p) + "," + fmt(mode.max_residual) + "," +
           fmt(mode.wronskian_drift) + "," + fmt(wdev) + "," + fmt(cdev) + "\n";
    if (s == 0 || s == std::min(5, r.s_max)) {
      std::ostringstream table;
      write_mode_csv(table, mode);
      write_file(fs::path(cfg.output_dir) / ("mode_s" + std::to_string(s) + ".csv"),
                 table.str());
    }
  }
  write_file(fs::path(cfg.output_dir) / "residuals.csv", csv);
  const bool mu_zero = std::abs(compute_mu(r.params).mu) < 1e-12;
  const bool pass = worst_res < 1e-8 && worst_drift < 1e-8;
  json j;
  j["hyp_argument_reading"] = kHypArgumentReading;
  j["rejected_reading_deviation"] = rejected_dev;  // 0 when mu = 0 (readings coincide)
  j["mu_re"] = compute_mu(r.params).mu.real();
  j["mu_im"] = compute_mu(r.params).mu.imag();
  j["series"] = compute_mu(r.params).series == MuParameter::Series::Principal
                    ? "principal"
                    : "complementary";
  j["max_residual"] = worst_res;
  j["max_wronskian_drift"] = worst_drift;
  j["max_closed_form_deviation"] = worst_dev;
  j["readings_distinguishable"] = !mu_zero;
  j["pass"] = pass;
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  log << "modes-validate: max residual " << worst_res << ", drift " << worst_drift << "\n";
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_kernel_eval(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  ModeSet modes(r.params, r.s_max, r.domain_eps);
  const int d = r.params.d;
  std::vector<double> a2(d, 0.0);
  a2[d - 1] = std::cos(cfg.angle);
  a2[0] = std::sin(cfg.angle);
  const DeSitterPoint x1{cfg.tau1, unit_vector(d, d - 1)};
  const DeSitterPoint x2{cfg.tau2, a2};
  const KernelPointResult res = kernel_point(r.params, modes, x1, x2, cfg.eta, r.s_max);
  json j;
  j["value_re"] = res.value.real();
  j["value_im"] = res.value.imag();
  j["tail_bound"] = res.tail_bound;
  j["eta"] = res.eta;
  j["s_max"] = res.s_max;
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  log << "kernel-eval: value " << res.value << " tail bound " << res.tail_bound << "\n";
  return kExitOk;
}

int cmd_npoint(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  if (r.functions.empty()) throw std::invalid_argument("npoint: no test functions");
  if (r.tags.size() != r.functions.size())
    throw std::invalid_argument("npoint: tags must match the function count");
  ModeSet modes(r.params, r.s_max, r.domain_eps);
  WightmanEngine engine(r.params, modes, make_grid(r.grid, r.params));
  std::vector<FieldSlot> slots;
  for (std::size_t i = 0; i < r.functions.size(); ++i)
    slots.push_back({tag_from_string(std::string(1, r.tags[i])), r.functions[i], {}});
  const NPointResult res = engine.truncated_npoint(slots);
  const auto herm = engine.verify_hermiticity(slots);
  json j = npoint_summary(res);
  j["hermiticity"] = {{"diff", herm.diff}, {"scale", herm.scale}, {"pass", herm.pass}};
  j["fixture"] = r.fixture_name;
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  write_file(fs::path(cfg.output_dir) / "terms.csv", terms_csv(res));
  log << "npoint: value " << res.value << " +- " << res.error << "\n";
  return herm.pass ? kExitOk : kExitVerificationFailure;
}

int cmd_smatrix(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  if (cfg.k_in < 0 || cfg.k_in > static_cast<int>(r.functions.size()))
    throw std::invalid_argument("smatrix: k_in out of range");
  ModeSet modes(r.params, r.s_max, r.domain_eps);
  WightmanEngine engine(r.params, modes, make_grid(r.grid, r.params));
  std::vector<TestFunction> in_fns(r.functions.begin(), r.functions.begin() + cfg.k_in);
  std::vector<TestFunction> out_fns(r.functions.begin() + cfg.k_in, r.functions.end());
  const NPointResult res = engine.smatrix_element(in_fns, out_fns);
  json j = npoint_summary(res);
  j["k_in"] = cfg.k_in;
  j["fixture"] = r.fixture_name;
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  write_file(fs::path(cfg.output_dir) / "terms.csv", terms_csv(res));
  log << "smatrix: value " << res.value << " +- " << res.error << "\n";
  return kExitOk;
}

int cmd_out_npoint(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  ModeSet modes(r.params, r.s_max, r.domain_eps);
  WightmanEngine engine(r.params, modes, make_grid(r.grid, r.params));
  const NPointResult res = engine.out_npoint(r.functions);
  const NPointResult cross = engine.smatrix_element({}, r.functions);
  const double rel =
      std::abs(res.value - cross.value) / std::max(std::abs(res.value), 1e-300);
  json j = npoint_summary(res);
  j["fixture"] = r.fixture_name;
  j["abs_over_error"] = std::abs(res.value) / std::max(res.error, 1e-300);
  j["cross_path_rel_diff"] = rel;
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  write_file(fs::path(cfg.output_dir) / "terms.csv", terms_csv(res));
  log << "out-npoint: value " << res.value << " +- " << res.error
      << " (cross-path rel diff " << rel << ")\n";
  return rel <= 1e-10 ? kExitOk : kExitVerificationFailure;
}

int cmd_gns_gram(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  if (r.basis.empty()) throw std::invalid_argument("gns-gram: no basis");
  ModeSet modes(r.params, r.s_max, r.domain_eps);
  WightmanEngine engine(r.params, modes, make_grid(r.grid, r.params));
  std::vector<Word> words;
  for (const WordSpec& ws : r.basis) {
    Word w;
    for (const auto& ss : ws.slots) {
      if (ss.fn < 0 || ss.fn >= static_cast<int>(r.functions.size()))
        throw std::invalid_argument("gns-gram: function index out of range");
      w.slots.push_back({tag_from_string(ss.tag), r.functions[ss.fn], {}});
    }
    words.push_back(std::move(w));
  }
  const FormFactorGram g = gram(words, engine);
  const double norm = gram_norm(g);
  const double herm = (g.matrix - g.matrix.adjoint()).cwiseAbs().maxCoeff();
  const GramSignature sig = signature(g, 1e-8 * norm);

  std::string csv = "i,j,re,im,error\n";
  for (int i = 0; i < g.matrix.rows(); ++i)
    for (int jx = 0; jx < g.matrix.cols(); ++jx)
      csv += std::to_string(i) + "," + std::to_string(jx) + "," + fmt(g.matrix(i, jx).real()) +
             "," + fmt(g.matrix(i, jx).imag()) + "," + fmt(g.entry_error(i, jx)) + "\n";
  write_file(fs::path(cfg.output_dir) / "gram.csv", csv);

  json j;
  j["n_plus"] = sig.n_plus;
  j["n_zero"] = sig.n_zero;
  j["n_minus"] = sig.n_minus;
  j["tol"] = sig.tol;
  j["norm"] = norm;
  j["hermiticity_residual"] = herm;
  j["fixture"] = r.fixture_name;
  write_file(fs::path(cfg.output_dir) / "signature.json", j.dump(2));
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  log << "gns-gram: signature (" << sig.n_plus << "," << sig.n_zero << "," << sig.n_minus
      << ")\n";
  return herm <= 1e-12 * norm ? kExitOk : kExitVerificationFailure;
}

int cmd_dispersion_scan(const RunConfig& cfg, const Resolved& r, std::ostream& log) {
  TestFunction f;
  if (!r.functions.empty()) {
    f = r.functions.front();
  } else {
    f = make_bump(-0.3, 0.3, 1, unit_vector(r.params.d, r.params.d - 1));
  }
  std::vector<double> eps = cfg.eps_sequence;
  if (eps.empty()) {
    double e = 3e-2;
    while (e > 1e-4 * (1.0 + 1e-9)) {
      eps.push_back(e);
      e *= 0.5;
    }
    eps.push_back(1e-4);
  }
  const ConvergenceScan scan = scan_In(f, cfg.n, r.params, eps);
  const ThresholdVerdict tv = threshold(r.params.d, cfg.n);
  const bool concordant = (scan.verdict == ScanVerdict::Converges) == tv.passes;

  write_file(fs::path(cfg.output_dir) / "scan.csv", scan.to_csv());
  json j;
  j["verdict"] = to_string(scan.verdict);
  j["tail_rel_increment"] = scan.tail_rel_increment;
  j["log_fit_r2"] = scan.log_fit_r2;
  j["power_fit_slope"] = scan.power_fit_slope;
  j["threshold_exponent"] = tv.exponent;
  j["threshold_passes"] = tv.passes;
  j["concordant"] = concordant;
  // envelope fit alongside the scan when the window is resolvable
  try {
    ModeSet modes(r.params, std::max(r.s_max, f.terms.front().s), 1e-3);
    const EnvelopeFit env = envelope_fit(f, r.params, modes);
    j["envelope"] = {{"slope", env.slope},
                     {"r2", env.r2},
                     {"reference_exponent", env.reference_exponent},
                     {"indicial_exponent", env.indicial_exponent}};
  } catch (const std::exception& e) {
    j["envelope"] = {{"skipped", e.what()}};
  }
  write_file(fs::path(cfg.output_dir) / "verdict.json", j.dump(2));
  write_file(fs::path(cfg.output_dir) / "summary.json", j.dump(2));
  log << "dispersion-scan: verdict " << to_string(scan.verdict) << " (threshold "
      << (tv.passes ? "passes" : "fails") << ")\n";
  if (!concordant && !cfg.exploratory) return kExitVerificationFailure;
  return kExitOk;
}

int cmd_stationary_check(const RunConfig& cfg, std::ostream& log) {
  std::string cert_json;
  bool ok = false;
  if (cfg.k_in > 0) {
    const SupportCertificate cert =
        verify_spectral_support(TermPattern::mixed(cfg.n, cfg.k_in), cfg.epsilon);
    cert_json = cert.to_json();
    ok = cert.holds;
  } else {
    const ZeroCertificate cert = verify_out_in_equivalence(cfg.n, cfg.epsilon);
    cert_json = cert.to_json();
    ok = cert.status == ZeroCertificate::Status::Zero;
  }
  write_file(fs::path(cfg.output_dir) / "certificate.json", cert_json);
  write_file(fs::path(cfg.output_dir) / "summary.json", cert_json);
  if (!cfg.replay.empty()) {
    const std::string stored = read_file(cfg.replay);
    if (stored != cert_json) {
      log << "stationary-check: replay mismatch against " << cfg.replay << "\n";
      return kExitVerificationFailure;
    }
    log << "stationary-check: replay byte-identical\n";
  }
  log << "stationary-check: " << (ok ? "holds" : "violated") << "\n";
  return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_contrast(const RunConfig& cfg, std::ostream& log) {
  const fs::path run_summary = fs::path(cfg.fixture_run) / "summary.json";
  const json run = json::parse(read_file(run_summary));
  const cplx value(run.at("value_re").get<double>(), run.at("value_im").get<double>());
  const double error = run.at("error").get<double>();
  const std::string name = run.value("fixture", std::string("unnamed"));
  const ZeroCertificate cert = verify_out_in_equivalence(cfg.n, cfg.epsilon);
  const ContrastReport rep = contrast_report(cert, name.empty() ? "unnamed" : name, value, error);

  write_file(fs::path(cfg.output_dir) / "contrast.json", rep.to_json());
  write_file(fs::path(cfg.output_dir) / "summary.json", rep.to_json());
  std::string md = "| case | value | status |\n|---|---|---|\n";
  md += "| stationary, n=" + std::to_string(cfg.n) + ", eps=" + fmt(cfg.epsilon) +
        " | 0 | exact zero certificate |\n";
  md += "| de Sitter fixture " + rep.fixture_name + " | " + fmt(value.real()) +
        (value.imag() >= 0 ? "+" : "") + fmt(value.imag()) + "i +- " + fmt(error) +
        " | |value|/error = " + fmt(rep.ratio) + " |\n";
  write_file(fs::path(cfg.output_dir) / "contrast.md", md);
  log << "contrast: ratio " << rep.ratio << "\n";
  return rep.ratio > 5.0 ? kExitOk : kExitVerificationFailure;
}

}  // namespace

std::string RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["params"] = params_to_json(params);
  j["grid"] = json::parse(grid.to_json());
  j["s_max"] = s_max;
  j["domain_eps"] = domain_eps;
  j["n"] = n;
  j["k_in"] = k_in;
  j["epsilon"] = epsilon;
  j["eta"] = eta;
  j["tau1"] = tau1;
  j["tau2"] = tau2;
  j["angle"] = angle;
  j["eps_sequence"] = eps_sequence;
  j["tags"] = tags;
  j["exploratory"] = exploratory;
  j["fixture"] = fixture;
  j["fixtures_dir"] = fixtures_dir;
  j["functions"] = json::array();
  for (const TestFunction& f : functions) j["functions"].push_back(json::parse(dsqft::to_json(f)));
  j["basis"] = json::array();
  for (const WordSpec& w : basis) {
    json wj = json::array();
    for (const auto& s : w.slots) wj.push_back({{"tag", s.tag}, {"fn", s.fn}});
    j["basis"].push_back(wj);
  }
  j["fixture_run"] = fixture_run;
  j["replay"] = replay;
  j["runs"] = runs;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  if (j.contains("params")) c.params = params_from_json(j.at("params"));
  if (j.contains("grid")) c.grid = GridSpec::from_json(j.at("grid").dump());
  c.s_max = j.value("s_max", c.s_max);
  c.domain_eps = j.value("domain_eps", c.domain_eps);
  c.n = j.value("n", c.n);
  c.k_in = j.value("k_in", c.k_in);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.eta = j.value("eta", c.eta);
  c.tau1 = j.value("tau1", c.tau1);
  c.tau2 = j.value("tau2", c.tau2);
  c.angle = j.value("angle", c.angle);
  if (j.contains("eps_sequence")) c.eps_sequence = j.at("eps_sequence").get<std::vector<double>>();
  c.tags = j.value("tags", std::string());
  c.exploratory = j.value("exploratory", false);
  c.fixture = j.value("fixture", std::string());
  c.fixtures_dir = j.value("fixtures_dir", c.fixtures_dir);
  if (j.contains("functions"))
    for (const auto& fj : j.at("functions")) c.functions.push_back(testfn_from_json(fj.dump()));
  if (j.contains("basis")) {
    for (const auto& wj : j.at("basis")) {
      WordSpec w;
      for (const auto& sj : wj) w.slots.push_back({sj.at("tag").get<std::string>(), sj.at("fn").get<int>()});
      c.basis.push_back(std::move(w));
    }
  }
  c.fixture_run = j.value("fixture_run", std::string());
  c.replay = j.value("replay", std::string());
  if (j.contains("runs")) c.runs = j.at("runs").get<std::vector<std::string>>();
  c.output_dir = j.value("output_dir", c.output_dir);
  return c;
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    fs::create_directories(config.output_dir);
    write_file(fs::path(config.output_dir) / "config.json", config.to_json());
    const Resolved r = resolve(config);

    if (config.command == "modes-validate") return cmd_modes_validate(config, r, log);
    if (config.command == "kernel-eval") return cmd_kernel_eval(config, r, log);
    if (config.command == "npoint") return cmd_npoint(config, r, log);
    if (config.command == "smatrix") return cmd_smatrix(config, r, log);
    if (config.command == "out-npoint") return cmd_out_npoint(config, r, log);
    if (config.command == "gns-gram") return cmd_gns_gram(config, r, log);
    if (config.command == "dispersion-scan") return cmd_dispersion_scan(config, r, log);
    if (config.command == "stationary-check") return cmd_stationary_check(config, log);
    if (config.command == "contrast") return cmd_contrast(config, log);
    if (config.command == "report") {
      report_bundle(config.runs, config.output_dir);
      return kExitOk;
    }
    log << "unknown command: " << config.command << "\n";
    return kExitConfigError;
  } catch (const BudgetError& e) {
    log << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const ResidualError& e) {
    log << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

void report_bundle(const std::vector<std::string>& run_dirs, const std::string& out_dir) {
  if (run_dirs.empty()) throw std::invalid_argument("report_bundle: empty run list");

  std::string md = "# Verification bundle\n\n## Dispersion threshold table\n\n";
  md += "| d \\ n | 3 | 4 | 5 | 6 |\n|---|---|---|---|---|\n";
  std::string csv = "d,n,exponent,passes\n";
  for (int d = 3; d <= 7; ++d) {
    md += "| " + std::to_string(d) + " |";
    for (int n = 3; n <= 6; ++n) {
      const ThresholdVerdict tv = threshold(d, n);
      md += " " + fmt(tv.exponent) + (tv.passes ? " (pass) |" : " (fail) |");
      csv += std::to_string(d) + "," + std::to_string(n) + "," + fmt(tv.exponent) + "," +
             (tv.passes ? "1" : "0") + "\n";
    }
    md += "\n";
  }

  md += "\n## Runs\n\n";
  for (const std::string& dir : run_dirs) {
    const fs::path p(dir);
    if (!fs::exists(p / "summary.json"))
      throw std::invalid_argument("report_bundle: missing run " + dir);
    const json cfg = fs::exists(p / "config.json")
                         ? json::parse(read_file(p / "config.json"))
                         : json::object();
    const json summary = json::parse(read_file(p / "summary.json"));
    md += "### " + dir + "\n\n";
    md += "command: `" + cfg.value("command", std::string("?")) + "`\n\n";
    md += "```json\n" + summary.dump(2) + "\n```\n\n";
  }

  write_file(fs::path(out_dir) / "bundle.md", md);
  write_file(fs::path(out_dir) / "threshold_table.csv", csv);
}

}  // namespace dsqft
