// squeezelab — sweeps, figure datasets and the verification suite.
//
// Exit codes: 0 success, 2 configuration error, 3 verification failure.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "squeezelab/errors.hpp"
#include "squeezelab/figures.hpp"
#include "squeezelab/scenario.hpp"
#include "squeezelab/verify.hpp"

namespace {

using namespace squeezelab;

constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output: cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("output: failed writing '" + path + "'");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

// Writes the sweep as CSV to `path` (stdout when empty) and, when asked,
// a gnuplot script next to it.
void emit(const SweepResult& result, const std::string& path, bool plot) {
  const std::string csv = to_csv(result);
  if (path.empty()) {
    std::cout << csv;
    if (plot) throw ConfigError("plot-script: needs --output");
    return;
  }
  write_file(path, csv);
  if (plot) write_file(path + ".gp", plot_script(result, path));
}

void add_override_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--quantity", o.quantity, "Quantity to compute");
  cmd->add_option("--port", o.port, "input | out1 | out2");
  cmd->add_option("--axis", o.axis, "Quadrature axis: x | y");
  cmd->add_option("--psi0", o.psi0, "Peak nonlinear phase psi(0)");
  cmd->add_option("--omega", o.omega, "Reduced frequency Omega = omega*tau_r");
  cmd->add_option("--omega0", o.omega0, "Use the phase optimal at this reduced frequency");
  cmd->add_option("--phase", o.phase, "Explicit SPM-arm linear phase phi1");
  cmd->add_option("--delta-phi", o.delta_phi, "Linear phase difference phi1 - phi2");
  cmd->add_option("--reflectance", o.reflectance, "Beam-splitter reflectance R");
  cmd->add_option("--t", o.t, "Time within the pulse");
  cmd->add_option("--t-over-taup", o.t_over_taup, "Measurement window T/tau_p");
  cmd->add_option("--gamma", o.gamma, "Kerr nonlinearity gamma");
  cmd->add_option("--tau-r", o.tau_r, "Relaxation time tau_r");
  cmd->add_option("--tau-p", o.tau_p, "Pulse duration tau_p");
  cmd->add_option("--grid", o.grids, "Sweep axis name=start:stop:count (repeatable)");
  cmd->add_option("--output", o.output, "CSV output path (stdout when omitted)");
}

int run_sweep(Command command, const std::string& config_path, const Overrides& o, bool plot) {
  ScenarioConfig config;
  if (!config_path.empty()) {
    nlohmann::json doc = read_json(config_path);
    if (doc.is_object() && doc.contains("command") && doc["command"] != std::string(to_string(command)))
      throw ConfigError("command: config file is for '" + doc["command"].dump() + "'");
    if (doc.is_object()) doc["command"] = std::string(to_string(command));
    config = config_from_json(doc);
  } else {
    config.command = command;
    config.quantity = default_quantity(command);
    if (command != Command::Spectrum) config.port = Port::Out1;
  }
  apply_overrides(config, o);
  emit(run_scenario(config), config.output_path, plot);
  return 0;
}

int run_figure_command(const std::string& id, Overrides o) {
  const FigureId fig = parse_figure(id);
  if (!o.output) o.output = std::string(to_string(fig)) + ".csv";
  emit(run_figure(fig, o), *o.output, true);
  return 0;
}

int run_verify_command(const VerifyOptions& options, const std::string& report_path,
                       const std::string& audit_path) {
  const VerifyReport report = run_verify(options);
  for (const CheckResult& c : report.checks) {
    std::cout << fmt::format("{:<24} {:<10} {:<32} max_abs_err={:.3e} tol={:.1e}\n", c.status,
                             c.family, c.name, c.max_abs_err, c.tolerance);
  }
  for (const CheckResult& c : report.checks)
    if (!c.ok()) std::cerr << "verification failed: " << c.name << "\n";
  if (!report_path.empty()) write_file(report_path, report.to_json().dump(2) + "\n");
  if (!audit_path.empty()) {
    const auto grid = default_paper_form_grid();
    write_file(audit_path, audit_to_json(grid, audit_paper_forms(grid)).dump(2) + "\n");
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-noise spectra and photon statistics of an SPM pulse at a beam splitter"};
  app.require_subcommand(1);

  struct SweepCommand {
    Command command;
    const char* description;
    std::string config_path;
    Overrides overrides;
    bool plot = false;
    CLI::App* app = nullptr;
  };
  SweepCommand sweeps[] = {
      {Command::Spectrum, "Quadrature noise spectra"},
      {Command::Mandel, "Extended Mandel parameter"},
      {Command::PhotonNumber, "Photon numbers at the outputs"},
  };
  for (SweepCommand& s : sweeps) {
    s.app = app.add_subcommand(std::string(to_string(s.command)), s.description);
    s.app->add_option("--config", s.config_path, "JSON scenario file")->check(CLI::ExistingFile);
    s.app->add_flag("--plot-script", s.plot, "Also write <output>.gp");
    add_override_options(s.app, s.overrides);
  }

  std::string figure_id;
  Overrides figure_overrides;
  CLI::App* figure = app.add_subcommand("figure", "Reproduce a figure dataset (fig1..fig4)");
  figure->add_option("id", figure_id, "fig1 | fig2 | fig3 | fig4")->required();
  add_override_options(figure, figure_overrides);

  VerifyOptions verify_options;
  std::string report_path;
  std::string audit_path;
  std::vector<std::string> skip;
  CLI::App* verify = app.add_subcommand("verify", "Run invariants, printed-form audit and oracle");
  verify->add_option("--ft-tol", verify_options.ft_tol, "Tolerance of FT-oracle checks");
  verify->add_option("--alg-tol", verify_options.alg_tol, "Tolerance of exact identities");
  verify->add_option("--seed", verify_options.seed, "Seed of randomized invariant grids");
  verify->add_option("--skip", skip, "Skip a family: invariants | audit | oracle");
  verify->add_option("--report", report_path, "Write the JSON report here");
  verify->add_option("--audit-report", audit_path, "Write the printed-form audit JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (const SweepCommand& s : sweeps) {
      if (s.app->parsed()) return run_sweep(s.command, s.config_path, s.overrides, s.plot);
    }
    if (figure->parsed()) return run_figure_command(figure_id, figure_overrides);
    verify_options.skip.insert(skip.begin(), skip.end());
    return run_verify_command(verify_options, report_path, audit_path);
  } catch (const AccuracyError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
