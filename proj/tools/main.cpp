// ghzst: batch front end for the ideal-realization checks and the noise curves.
//
// Exit status: 0 success, 1 verification or convergence failure, 2 usage or
// contract error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghzst/curves.hpp"
#include "ghzst/npa_curve.hpp"
#include "ghzst/report_io.hpp"
#include "ghzst/robustness.hpp"
#include "ghzst/svg_plot.hpp"
#include "ghzst/swapiso.hpp"

namespace fs = std::filesystem;
using namespace ghzst;

namespace {

constexpr double kPass = 1e-8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t n = 3;
  double theta = std::numbers::pi / 4;
  EpsGrid grid;
  fs::path output = ".";
  std::set<std::string> formats = {"csv", "json", "svg"};
  npa::SolverOptions solver;
  unsigned threads = 0;
  std::optional<fs::path> g_table;
};

// Raw flag values; only the ones given on the command line override the config file.
struct Flags {
  std::string config;
  std::size_t n = 0;
  double theta = 0;
  std::string eps;
  std::string output;
  std::vector<std::string> formats;
  int max_iterations = 0;
  double feasibility_tolerance = 0;
  double gap_tolerance = 0;
  unsigned threads = 0;
  std::string g_table;
};

EpsGrid parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad noise grid '" + spec + "', expected start:stop:step");
    }
  }
  if (parts.size() == 1) return {parts[0], parts[0], 1.0};
  if (parts.size() != 3) throw UsageError("bad noise grid '" + spec + "', expected start:stop:step");
  return {parts[0], parts[1], parts[2]};
}

void apply_config_file(RunConfig& cfg, const fs::path& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
  try {
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("theta")) cfg.theta = j.at("theta").get<double>();
    if (j.contains("eps")) {
      const auto& e = j.at("eps");
      cfg.grid = e.is_string() ? parse_grid(e.get<std::string>())
                               : EpsGrid{e.at("start").get<double>(), e.at("stop").get<double>(), e.at("step").get<double>()};
    }
    if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
    if (j.contains("format")) cfg.formats = j.at("format").get<std::set<std::string>>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
    if (j.contains("g_table")) cfg.g_table = j.at("g_table").get<std::string>();
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      if (s.contains("max_iterations")) cfg.solver.max_iterations = s.at("max_iterations").get<int>();
      if (s.contains("feasibility_tolerance")) cfg.solver.feasibility_tolerance = s.at("feasibility_tolerance").get<double>();
      if (s.contains("gap_tolerance")) cfg.solver.gap_tolerance = s.at("gap_tolerance").get<double>();
    }
  } catch (const Json::exception& e) {
    throw UsageError("config " + path.string() + ": " + e.what());
  }
}

bool given(const CLI::App& sub, const char* name) {
  const auto* opt = sub.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

RunConfig resolve(const CLI::App& sub, const Flags& f, EpsGrid default_grid) {
  RunConfig cfg;
  cfg.grid = default_grid;
  if (given(sub, "--config")) apply_config_file(cfg, f.config);
  if (given(sub, "--n")) cfg.n = f.n;
  if (given(sub, "--theta")) cfg.theta = f.theta;
  if (given(sub, "--eps")) cfg.grid = parse_grid(f.eps);
  if (given(sub, "--output")) cfg.output = f.output;
  if (given(sub, "--format")) cfg.formats = {f.formats.begin(), f.formats.end()};
  if (given(sub, "--max-iterations")) cfg.solver.max_iterations = f.max_iterations;
  if (given(sub, "--feasibility-tol")) cfg.solver.feasibility_tolerance = f.feasibility_tolerance;
  if (given(sub, "--gap-tol")) cfg.solver.gap_tolerance = f.gap_tolerance;
  if (given(sub, "--threads")) cfg.threads = f.threads;
  if (given(sub, "--g-table")) cfg.g_table = f.g_table;

  if (cfg.n < 2 || cfg.n > 6) throw ContractError("n must lie in [2, 6], got " + std::to_string(cfg.n));
  TiltAngle{cfg.theta};
  for (const auto& fmt : cfg.formats)
    if (fmt != "csv" && fmt != "json" && fmt != "svg") throw UsageError("unknown format '" + fmt + "'");
  return cfg;
}

bool wants(const RunConfig& cfg, const char* fmt) { return cfg.formats.contains(fmt); }

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (flags win on conflict)");
  sub->add_option("--output", f.output, "output directory");
  sub->add_option("--format", f.formats, "subset of csv, json, svg")->delimiter(',');
}

void add_grid_options(CLI::App* sub, Flags& f) {
  sub->add_option("--eps", f.eps, "noise grid start:stop:step within [0, 0.2]");
  sub->add_option("--max-iterations", f.max_iterations, "solver iteration cap");
  sub->add_option("--feasibility-tol", f.feasibility_tolerance, "solver relative infeasibility tolerance");
  sub->add_option("--gap-tol", f.gap_tolerance, "solver relative gap tolerance");
  sub->add_option("--threads", f.threads, "worker threads for grid points (0 = all cores)");
}

std::string fixed(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

int cmd_verify_ideal(const RunConfig& cfg) {
  const TiltAngle theta(cfg.theta);
  const std::size_t n = cfg.n;
  const StarNetwork net = build_star(n, theta);
  const auto settings = ideal_settings(theta, n);
  const auto outcomes = apply_gsm(net);
  const double p_ideal = 1.0 / static_cast<double>(std::size_t{1} << n);

  Json report = make_report("verify-ideal");
  report["n"] = n;
  report["theta"] = theta.radians();
  Json blocks = Json::array();
  bool ok = true;
  for (const auto& o : outcomes) {
    const OutcomeIndex r(o.r, n);
    if (!o.state) throw ContractError("outcome " + std::to_string(o.r) + " has vanishing probability");
    const StateVector ghz = tilted_ghz(theta, n, r);
    const double fidelity = (ghz.adjoint() * *o.state * ghz)(0, 0).real();
    const auto lemma = evaluate_lemma2(*o.state, settings, r);
    const double dev = std::max({std::abs(o.probability - p_ideal), std::abs(fidelity - 1.0), lemma.max_deviation});
    ok = ok && dev <= kPass;
    Json block = to_json(lemma);
    block["probability"] = o.probability;
    block["fidelity"] = fidelity;
    blocks.push_back(block);
    std::cout << "r=" << o.r << " p=" << fixed(o.probability) << " fidelity=" << fixed(fidelity)
              << " max_deviation=" << format_number(lemma.max_deviation) << "\n";
  }
  const auto thm1 =
      theorem1_verify(net, tilted_gsm(theta, n), swap_pairs_from_settings(settings), PovmCheck::positivity_only);
  ok = ok && thm1.passed(kPass);
  report["outcomes"] = blocks;
  report["theorem1"] = to_json(thm1);
  report["passed"] = ok;
  std::cout << "theorem1 max_distance=" << format_number(thm1.max_distance)
            << " max_unitality=" << format_number(thm1.max_unitality)
            << " povm_residual=" << format_number(thm1.povm_residual) << "\n";
  if (wants(cfg, "json")) write_text_file(cfg.output / "verify_ideal.json", report.dump(2) + "\n");
  std::cout << "verify-ideal " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

std::string threshold_text(const std::optional<double>& t) { return t ? fixed(*t, 6) : std::string("none"); }

int cmd_fidelity_bound(const RunConfig& cfg) {
  const auto grid = cfg.grid.values();
  const auto curve = npa::g_curve(grid, cfg.solver, cfg.threads);
  for (const auto& p : curve.points)
    std::cout << "eps=" << format_number(p.epsilon) << " G=" << fixed(p.g) << " status=" << npa::to_string(p.status)
              << "\n";
  std::cout << "threshold eps* = " << threshold_text(curve.threshold) << "\n";

  if (wants(cfg, "csv")) write_text_file(cfg.output / "fidelity_bound.csv", npa::g_curve_csv(curve));
  if (wants(cfg, "json")) {
    Json j = make_report("fidelity-bound");
    j["curve"] = to_json(curve);
    write_text_file(cfg.output / "fidelity_bound.json", j.dump(2) + "\n");
  }
  if (wants(cfg, "svg"))
    write_text_file(cfg.output / "fidelity_bound.svg",
                    render_svg({"Minimal extraction fidelity G(eps)", "white noise eps", "G", curve.epsilons(),
                                curve.values(), 0.5}));
  if (!curve.all_converged()) {
    std::cerr << "some grid points did not converge\n";
    return 1;
  }
  return 0;
}

// G at each grid point, interpolated from an "epsilon,G,..." table.
std::vector<double> g_from_table(const fs::path& path, const std::vector<double>& grid) {
  std::stringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  if (line.rfind("epsilon,G", 0) != 0) throw UsageError("G table " + path.string() + " lacks an epsilon,G header");
  std::vector<double> xs, ys;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string a, b;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    try {
      xs.push_back(std::stod(a));
      ys.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw UsageError("G table " + path.string() + ": bad row '" + line + "'");
    }
  }
  std::vector<double> out;
  for (double e : grid) {
    std::size_t k = 0;
    while (k + 1 < xs.size() && xs[k + 1] < e - 1e-12) ++k;
    if (xs.empty() || e < xs.front() - 1e-12 || e > xs.back() + 1e-12)
      throw UsageError("G table does not cover eps = " + format_number(e));
    if (std::abs(xs[k] - e) <= 1e-12 || k + 1 == xs.size()) {
      out.push_back(ys[k]);
    } else {
      const double w = (e - xs[k]) / (xs[k + 1] - xs[k]);
      out.push_back((1.0 - w) * ys[k] + w * ys[k + 1]);
    }
  }
  return out;
}

int cmd_quality_bound(const RunConfig& cfg) {
  const auto grid = cfg.grid.values();
  std::vector<double> g;
  bool converged = true;
  if (cfg.g_table) {
    g = g_from_table(*cfg.g_table, grid);
  } else {
    const auto curve = npa::g_curve(grid, cfg.solver, cfg.threads);
    g = curve.values();
    converged = curve.all_converged();
  }
  const auto qc = quality_curve(grid, g);
  std::vector<double> xs, ys;
  for (const auto& p : qc.points) {
    std::cout << "eps=" << format_number(p.epsilon) << " q=" << fixed(p.q)
              << " bound=" << (p.bound ? fixed(p.bound->value) : std::string("nobound")) << "\n";
    if (p.bound) {
      xs.push_back(p.epsilon);
      ys.push_back(p.bound->value);
    }
  }
  std::cout << "threshold eps+ = " << threshold_text(qc.threshold) << "\n";

  if (wants(cfg, "csv")) write_text_file(cfg.output / "quality_bound.csv", quality_csv(qc));
  if (wants(cfg, "json")) {
    Json j = make_report("quality-bound");
    j["curve"] = to_json(qc);
    write_text_file(cfg.output / "quality_bound.json", j.dump(2) + "\n");
  }
  if (wants(cfg, "svg") && !xs.empty())
    write_text_file(cfg.output / "quality_bound.svg",
                    render_svg({"Measurement quality lower bound", "white noise eps", "bound", xs, ys, 0.5}));
  if (!converged) {
    std::cerr << "some grid points did not converge\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-testing of tilted GHZ-state measurements: ideal checks and noise curves"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify-ideal", "ideal-realization correlation and extraction checks");
  add_common(verify, f);
  verify->add_option("--n", f.n, "number of Alices, 2..6");
  verify->add_option("--theta", f.theta, "tilt angle in (0, pi/4]");

  auto* fidelity = app.add_subcommand("fidelity-bound", "G(eps) curve from the moment relaxation");
  add_common(fidelity, f);
  add_grid_options(fidelity, f);

  auto* quality = app.add_subcommand("quality-bound", "measurement quality bound over a noise grid");
  add_common(quality, f);
  add_grid_options(quality, f);
  quality->add_option("--g-table", f.g_table, "fidelity-bound CSV to read G from instead of solving");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify_ideal(resolve(*verify, f, {}));
    if (*fidelity) return cmd_fidelity_bound(resolve(*fidelity, f, {0.0, 0.14, 0.01}));
    return cmd_quality_bound(resolve(*quality, f, {0.0, 0.004, 0.0001}));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
