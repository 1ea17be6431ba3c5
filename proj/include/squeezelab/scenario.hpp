// Scenario configuration and grid sweeps behind the command-line tool.

#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squeezelab/photon_statistics.hpp"
#include "squeezelab/pulse_core.hpp"
#include "squeezelab/quadrature_noise.hpp"

namespace squeezelab {

enum class Command { Spectrum, Mandel, PhotonNumber, Figure, Verify };

std::string_view to_string(Command command);
Command parse_command(std::string_view text);

// Sweepable scalar inputs.
inline constexpr std::string_view kAxisNames[] = {"psi0", "omega", "delta_phi",
                                                   "R",    "t",     "T_over_taup"};

// Supported quantities.
inline constexpr std::string_view kQuantities[] = {
    "quad_spectrum", "quad_spectrum_ft", "printed_optimal_form", "photon_spectrum",
    "photon_spectrum_ft", "mandel_q", "mean_photons", "photon_sum",
    "total_photon_out1", "total_photon_out2", "total_photon_numeric"};

struct GridAxis {
  std::string name;
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;

  // count points, endpoints included.
  std::vector<double> values() const;
};

// "name=start:stop:count".
GridAxis parse_grid(std::string_view text);

// Values of every sweepable input at one grid point.
struct ScenarioPoint {
  double psi0 = 0.0;
  double omega = 0.0;
  double delta_phi = 0.0;
  double reflectance = 0.5;
  double t = 0.0;
  double t_over_taup = 0.1;

  void set(std::string_view axis, double value);
};

struct ScenarioConfig {
  Command command = Command::Spectrum;
  std::string quantity = "quad_spectrum";
  Port port = Port::Input;
  Axis axis = Axis::X;

  MediumParams medium;
  double tau_p = 100.0;
  double phi2 = 0.0;
  Envelope envelope = Envelope::Gaussian;
  // Base values of the sweepable inputs (psi0, omega, delta_phi, R, t, T/τ_p).
  ScenarioPoint base;
  // φ₁ for the quadrature quantities; unset means Explicit(phi2 + delta_phi).
  std::optional<PhaseMode> phase_mode;

  std::vector<GridAxis> grids;  // first entry is the outer (slowest) axis
  std::string output_path;
  std::string label;  // column header of the computed value; derived when empty

  // Throws ConfigError naming the offending field.
  void validate() const;
  std::string quantity_label() const;
};

// Default quantity for a sweep command.
std::string default_quantity(Command command);

// Builds a config from a JSON document (lower_snake_case field names).
// Throws ConfigError on unknown fields or bad values.
ScenarioConfig config_from_json(const nlohmann::json& doc);

// Command-line overrides; every set field replaces the config value.
struct Overrides {
  std::optional<std::string> quantity;
  std::optional<std::string> port;
  std::optional<std::string> axis;
  std::optional<double> psi0;
  std::optional<double> omega;
  std::optional<double> omega0;
  std::optional<double> phase;
  std::optional<double> delta_phi;
  std::optional<double> reflectance;
  std::optional<double> t;
  std::optional<double> t_over_taup;
  std::optional<double> gamma;
  std::optional<double> tau_r;
  std::optional<double> tau_p;
  std::vector<std::string> grids;
  std::optional<std::string> output;
};

void apply_overrides(ScenarioConfig& config, const Overrides& overrides);

Port parse_port(std::string_view text);
Axis parse_axis(std::string_view text);

struct SweepRecord {
  std::vector<double> axis_values;
  double value = 0.0;
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::string label;
  std::vector<SweepRecord> records;  // outer axis major
};

// Evaluates the configured quantity at one point.
double evaluate(const ScenarioConfig& config, const ScenarioPoint& point);

// Evaluates every grid point (in parallel); records are ordered by grid index.
SweepResult run_scenario(const ScenarioConfig& config);

// CSV: header row, comma delimiter, 9 significant digits, LF endings.
std::string to_csv(const SweepResult& result);
std::string format_number(double value);

// gnuplot script that reads only `csv_path`.
std::string plot_script(const SweepResult& result, const std::string& csv_path);

}  // namespace squeezelab
