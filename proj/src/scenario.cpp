#include "squeezelab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <set>

#include "squeezelab/errors.hpp"
#include "squeezelab/numeric_oracle.hpp"
#include "squeezelab/parallel.hpp"

namespace squeezelab {
namespace {

using nlohmann::json;

bool known_axis(std::string_view name) {
  return std::find(std::begin(kAxisNames), std::end(kAxisNames), name) != std::end(kAxisNames);
}

bool known_quantity(std::string_view name) {
  return std::find(std::begin(kQuantities), std::end(kQuantities), name) !=
         std::end(kQuantities);
}

double parse_double(std::string_view text, std::string_view field) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(fmt::format("{}: cannot parse number '{}'", field, text));
  return value;
}

double number_field(const json& obj, const std::string& key, std::string_view where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(fmt::format("{}.{}: expected a number", where, key));
  return v.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(fmt::format("{}: unknown field '{}'", where, key));
  }
}

bool is_photon_quantity(std::string_view q) {
  return q == "photon_spectrum" || q == "photon_spectrum_ft" || q == "mandel_q" ||
         q == "mean_photons";
}

bool is_quadrature_quantity(std::string_view q) {
  return q == "quad_spectrum" || q == "quad_spectrum_ft" || q == "printed_optimal_form";
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Spectrum:
      return "spectrum";
    case Command::Mandel:
      return "mandel";
    case Command::PhotonNumber:
      return "photon-number";
    case Command::Figure:
      return "figure";
    case Command::Verify:
      return "verify";
  }
  return "spectrum";
}

Command parse_command(std::string_view text) {
  for (Command c : {Command::Spectrum, Command::Mandel, Command::PhotonNumber, Command::Figure,
                    Command::Verify}) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError(fmt::format("command: unknown command '{}'", text));
}

std::string default_quantity(Command command) {
  switch (command) {
    case Command::Mandel:
      return "mandel_q";
    case Command::PhotonNumber:
      return "mean_photons";
    default:
      return "quad_spectrum";
  }
}

Port parse_port(std::string_view text) {
  if (text == "input" || text == "in") return Port::Input;
  if (text == "out1" || text == "1") return Port::Out1;
  if (text == "out2" || text == "2") return Port::Out2;
  throw ConfigError(fmt::format("port: unknown port '{}' (input, out1, out2)", text));
}

Axis parse_axis(std::string_view text) {
  if (text == "x" || text == "X") return Axis::X;
  if (text == "y" || text == "Y") return Axis::Y;
  throw ConfigError(fmt::format("axis: unknown quadrature axis '{}' (x, y)", text));
}

std::vector<double> GridAxis::values() const {
  std::vector<double> out(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

GridAxis parse_grid(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(fmt::format("grid: expected name=start:stop:count, got '{}'", text));
  GridAxis axis;
  axis.name = std::string(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos)
    throw ConfigError(fmt::format("grid: expected name=start:stop:count, got '{}'", text));
  axis.start = parse_double(rest.substr(0, c1), "grid");
  axis.stop = parse_double(rest.substr(c1 + 1, c2 - c1 - 1), "grid");
  const double count = parse_double(rest.substr(c2 + 1), "grid");
  if (!(count >= 0.0) || count != std::floor(count))
    throw ConfigError(fmt::format("grid {}: count must be a non-negative integer", axis.name));
  axis.count = static_cast<std::size_t>(count);
  return axis;
}

void ScenarioPoint::set(std::string_view axis, double value) {
  if (axis == "psi0") psi0 = value;
  else if (axis == "omega") omega = value;
  else if (axis == "delta_phi") delta_phi = value;
  else if (axis == "R") reflectance = value;
  else if (axis == "t") t = value;
  else if (axis == "T_over_taup") t_over_taup = value;
  else throw ConfigError(fmt::format("grid: unknown axis '{}'", axis));
}

void ScenarioConfig::validate() const {
  if (command == Command::Figure || command == Command::Verify)
    throw ConfigError("command: figure and verify do not run generic sweeps");
  if (!known_quantity(quantity))
    throw ConfigError(fmt::format("quantity: unknown quantity '{}'", quantity));
  if (grids.empty() || grids.size() > 2)
    throw ConfigError("grids: a sweep needs one or two axes");
  std::set<std::string> seen;
  for (const GridAxis& g : grids) {
    if (!known_axis(g.name)) throw ConfigError(fmt::format("grids: unknown axis '{}'", g.name));
    if (!seen.insert(g.name).second)
      throw ConfigError(fmt::format("grids: axis '{}' listed twice", g.name));
    if (g.count < 2) throw ConfigError(fmt::format("grids.{}: count must be >= 2", g.name));
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || !(g.start < g.stop))
      throw ConfigError(fmt::format("grids.{}: start must be < stop", g.name));
    if (g.name == "R" && (g.start < 0.0 || g.stop > 1.0))
      throw ConfigError("grids.R: reflectance must stay within [0, 1]");
    if (g.name == "psi0" && g.start < 0.0) throw ConfigError("grids.psi0: must be >= 0");
    if (g.name == "T_over_taup" && !(g.start > 0.0))
      throw ConfigError("grids.T_over_taup: must be > 0");
  }
  try {
    medium.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(tau_p > 0.0) || !(medium.tau_r / tau_p < 1.0))
    throw ConfigError("pulse.tau_p: must be > tau_r");
  if (!(base.reflectance >= 0.0 && base.reflectance <= 1.0))
    throw ConfigError("splitter.reflectance: must lie in [0, 1]");
  if (!(base.psi0 >= 0.0)) throw ConfigError("pulse.psi0: must be >= 0");
  if ((base.psi0 > 0.0 || seen.count("psi0")) && !(medium.gamma > 0.0))
    throw ConfigError("medium.gamma: psi0 > 0 requires gamma > 0");
  if (!(base.t_over_taup > 0.0)) throw ConfigError("window.t_over_taup: must be > 0");
  if (is_photon_quantity(quantity) && port == Port::Input)
    throw ConfigError(fmt::format("port: {} needs port out1 or out2", quantity));
  if (quantity == "printed_optimal_form" &&
      !(phase_mode && std::holds_alternative<OptimalAt>(*phase_mode)))
    throw ConfigError("phase_mode: printed_optimal_form needs optimal_at");
  if (quantity == "total_photon_numeric" && envelope != Envelope::Gaussian)
    throw ConfigError("pulse.envelope: total_photon_numeric needs a gaussian envelope");
}

std::string ScenarioConfig::quantity_label() const {
  if (!label.empty()) return label;
  if (is_quadrature_quantity(quantity)) {
    const char* p = port == Port::Input ? "input" : port == Port::Out1 ? "out1" : "out2";
    return fmt::format("{}_{}_{}", quantity, p, axis == Axis::X ? "x" : "y");
  }
  if (is_photon_quantity(quantity)) return fmt::format("{}_{}", quantity, port == Port::Out1 ? "out1" : "out2");
  return quantity;
}

ScenarioConfig config_from_json(const json& doc) {
  reject_unknown(doc,
                 {"command", "quantity", "port", "axis", "medium", "pulse", "splitter", "window",
                  "phase_mode", "omega", "t", "grids", "output_path", "label"},
                 "config");
  ScenarioConfig c;
  try {
    if (doc.contains("command")) c.command = parse_command(doc.at("command").get<std::string>());
    c.quantity = doc.contains("quantity") ? doc.at("quantity").get<std::string>()
                                          : default_quantity(c.command);
    if (doc.contains("port")) c.port = parse_port(doc.at("port").get<std::string>());
    else if (c.command == Command::Mandel || c.command == Command::PhotonNumber) c.port = Port::Out1;
    if (doc.contains("axis")) c.axis = parse_axis(doc.at("axis").get<std::string>());
    if (doc.contains("label")) c.label = doc.at("label").get<std::string>();
    if (doc.contains("output_path")) c.output_path = doc.at("output_path").get<std::string>();
    if (doc.contains("omega")) c.base.omega = number_field(doc, "omega", "config");
    if (doc.contains("t")) c.base.t = number_field(doc, "t", "config");

    if (doc.contains("medium")) {
      const json& m = doc.at("medium");
      reject_unknown(m, {"gamma", "tau_r"}, "medium");
      if (m.contains("gamma")) c.medium.gamma = number_field(m, "gamma", "medium");
      if (m.contains("tau_r")) c.medium.tau_r = number_field(m, "tau_r", "medium");
    }
    if (doc.contains("pulse")) {
      const json& p = doc.at("pulse");
      reject_unknown(p, {"psi0", "n0_peak", "tau_p", "phi1", "phi2", "delta_phi", "envelope"},
                     "pulse");
      if (p.contains("tau_p")) c.tau_p = number_field(p, "tau_p", "pulse");
      if (p.contains("phi2")) c.phi2 = number_field(p, "phi2", "pulse");
      if (p.contains("delta_phi")) c.base.delta_phi = number_field(p, "delta_phi", "pulse");
      if (p.contains("phi1")) c.base.delta_phi = number_field(p, "phi1", "pulse") - c.phi2;
      if (p.contains("psi0") && p.contains("n0_peak"))
        throw ConfigError("pulse: give psi0 or n0_peak, not both");
      if (p.contains("psi0")) c.base.psi0 = number_field(p, "psi0", "pulse");
      if (p.contains("n0_peak")) {
        PulseState probe;
        probe.n0_peak = number_field(p, "n0_peak", "pulse");
        c.base.psi0 = peak_nonlinear_phase(c.medium, probe);
      }
      if (p.contains("envelope")) {
        const auto env = p.at("envelope").get<std::string>();
        if (env == "gaussian") c.envelope = Envelope::Gaussian;
        else if (env == "flat") c.envelope = Envelope::Flat;
        else throw ConfigError(fmt::format("pulse.envelope: unknown envelope '{}'", env));
      }
    }
    if (doc.contains("splitter")) {
      const json& s = doc.at("splitter");
      reject_unknown(s, {"reflectance"}, "splitter");
      if (s.contains("reflectance")) c.base.reflectance = number_field(s, "reflectance", "splitter");
    }
    if (doc.contains("window")) {
      const json& w = doc.at("window");
      reject_unknown(w, {"t_meas", "t_over_taup"}, "window");
      if (w.contains("t_meas") && w.contains("t_over_taup"))
        throw ConfigError("window: give t_meas or t_over_taup, not both");
      if (w.contains("t_over_taup")) c.base.t_over_taup = number_field(w, "t_over_taup", "window");
      if (w.contains("t_meas")) c.base.t_over_taup = number_field(w, "t_meas", "window") / c.tau_p;
    }
    if (doc.contains("phase_mode")) {
      const json& pm = doc.at("phase_mode");
      reject_unknown(pm, {"explicit", "optimal_at"}, "phase_mode");
      if (pm.size() != 1) throw ConfigError("phase_mode: give exactly one of explicit, optimal_at");
      if (pm.contains("explicit"))
        c.phase_mode = ExplicitPhase{number_field(pm, "explicit", "phase_mode")};
      else
        c.phase_mode = OptimalAt{number_field(pm, "optimal_at", "phase_mode")};
    }
    if (doc.contains("grids")) {
      const json& gs = doc.at("grids");
      if (!gs.is_array()) throw ConfigError("grids: expected an array");
      for (const json& g : gs) {
        reject_unknown(g, {"name", "start", "stop", "count"}, "grids[]");
        GridAxis axis;
        axis.name = g.at("name").get<std::string>();
        axis.start = number_field(g, "start", "grids");
        axis.stop = number_field(g, "stop", "grids");
        const json& count = g.at("count");
        if (!count.is_number_integer() || count.get<long long>() < 0)
          throw ConfigError(fmt::format("grids.{}.count: expected a non-negative integer", axis.name));
        axis.count = count.get<std::size_t>();
        c.grids.push_back(axis);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  return c;
}

void apply_overrides(ScenarioConfig& c, const Overrides& o) {
  if (o.gamma) c.medium.gamma = *o.gamma;
  if (o.tau_r) c.medium.tau_r = *o.tau_r;
  if (o.tau_p) c.tau_p = *o.tau_p;
  if (o.quantity) c.quantity = *o.quantity;
  if (o.port) c.port = parse_port(*o.port);
  if (o.axis) c.axis = parse_axis(*o.axis);
  if (o.psi0) c.base.psi0 = *o.psi0;
  if (o.omega) c.base.omega = *o.omega;
  if (o.delta_phi) c.base.delta_phi = *o.delta_phi;
  if (o.reflectance) c.base.reflectance = *o.reflectance;
  if (o.t) c.base.t = *o.t;
  if (o.t_over_taup) c.base.t_over_taup = *o.t_over_taup;
  if (o.omega0 && o.phase) throw ConfigError("phase_mode: give --omega0 or --phase, not both");
  if (o.omega0) c.phase_mode = OptimalAt{*o.omega0};
  if (o.phase) c.phase_mode = ExplicitPhase{*o.phase};
  for (const std::string& text : o.grids) {
    GridAxis axis = parse_grid(text);
    auto it = std::find_if(c.grids.begin(), c.grids.end(),
                           [&](const GridAxis& g) { return g.name == axis.name; });
    if (it != c.grids.end()) *it = axis;
    else c.grids.push_back(axis);
  }
  if (o.output) c.output_path = *o.output;
}

double evaluate(const ScenarioConfig& c, const ScenarioPoint& p) {
  PulseState pulse;
  pulse.tau_p = c.tau_p;
  pulse.envelope = c.envelope;
  pulse.phi2 = c.phi2;
  pulse.phi1 = c.phi2 + p.delta_phi;
  pulse = with_peak_phase(pulse, c.medium, p.psi0);
  const BeamSplitter splitter(p.reflectance);
  const auto window = MeasurementWindow::from_ratio(p.t_over_taup, c.tau_p);
  const PhaseMode phase = c.phase_mode.value_or(PhaseMode{ExplicitPhase{pulse.phi1}});
  const std::optional<BeamSplitter> maybe_splitter(splitter);
  const QuadratureSelector sel{c.axis, c.port};
  const std::string& q = c.quantity;

  if (q == "quad_spectrum")
    return quad_spectrum(sel, p.omega, p.t, phase, c.medium, pulse, maybe_splitter).value;
  if (q == "quad_spectrum_ft")
    return spectrum_via_ft(sel, p.omega, p.t, phase, c.medium, pulse, maybe_splitter).value;
  if (q == "printed_optimal_form") {
    const double psi = nonlinear_phase(p.t, c.medium, pulse);
    return paper_optimal_forms(sel, p.omega, std::get<OptimalAt>(phase).omega0, psi,
                               maybe_splitter)
        .value;
  }
  if (q == "mandel_q") {
    // Q depends on the pulse only through ψ(t); evaluate it directly so the
    // ψ₀ = 0 edge of a sweep reads as Poissonian.
    const double psi = nonlinear_phase(p.t, c.medium, pulse);
    return mandel_q_at(c.port, p.omega, psi, pulse.delta_phi(), window.ratio);
  }
  if (q == "photon_spectrum")
    return photon_spectrum(c.port, p.omega, p.t, window, c.medium, pulse);
  if (q == "photon_spectrum_ft")
    return photon_spectrum_via_ft(c.port, p.omega, p.t, window, c.medium, pulse);
  if (q == "mean_photons")
    return mean_photons_windowed(c.port, p.t, window, c.medium, pulse, splitter);
  if (q == "photon_sum")
    return mean_photons_windowed(Port::Out1, p.t, window, c.medium, pulse, splitter) +
           mean_photons_windowed(Port::Out2, p.t, window, c.medium, pulse, splitter);
  if (q == "total_photon_out1") return total_photon_out1(p.psi0, p.delta_phi, splitter);
  if (q == "total_photon_out2") return total_photon_out2(p.psi0, p.delta_phi, splitter);
  if (q == "total_photon_numeric")
    return total_photon_numeric(p.psi0, p.delta_phi, splitter, pulse);
  throw ConfigError(fmt::format("quantity: unknown quantity '{}'", q));
}

SweepResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  SweepResult result;
  result.label = config.quantity_label();
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const GridAxis& g : config.grids) {
    result.axis_names.push_back(g.name);
    axes.push_back(g.values());
    total *= g.count;
  }
  result.records.resize(total);
  parallel_for(total, [&](std::size_t index) {
    SweepRecord& rec = result.records[index];
    rec.axis_values.resize(axes.size());
    ScenarioPoint point = config.base;
    std::size_t rem = index;
    for (std::size_t k = axes.size(); k-- > 0;) {
      const std::size_t n = axes[k].size();
      rec.axis_values[k] = axes[k][rem % n];
      rem /= n;
      point.set(config.grids[k].name, rec.axis_values[k]);
    }
    rec.value = evaluate(config, point);
  });
  return result;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of −0
  return fmt::format("{:.9g}", value);
}

std::string to_csv(const SweepResult& result) {
  std::string out;
  for (const std::string& name : result.axis_names) out += name + ",";
  out += result.label + "\n";
  for (const SweepRecord& rec : result.records) {
    for (double v : rec.axis_values) out += format_number(v) + ",";
    out += format_number(rec.value) + "\n";
  }
  return out;
}

std::string plot_script(const SweepResult& result, const std::string& csv_path) {
  std::string s;
  s += "# gnuplot script; reads " + csv_path + "\n";
  s += "set datafile separator ','\n";
  s += "set key off\n";
  s += "set xlabel '" + result.axis_names.front() + "'\n";
  if (result.axis_names.size() == 1) {
    s += "set ylabel '" + result.label + "'\n";
    s += "plot '" + csv_path + "' every ::1 using 1:2 with lines\n";
  } else {
    s += "set ylabel '" + result.axis_names[1] + "'\n";
    s += "set zlabel '" + result.label + "'\n";
    s += "splot '" + csv_path + "' every ::1 using 1:2:3 with points palette pointtype 7 pointsize 0.4\n";
  }
  s += "pause mouse close\n";
  return s;
}

}  // namespace squeezelab
