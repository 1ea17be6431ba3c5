#include "squeezelab/figures.hpp"

#include <fmt/format.h>

#include "squeezelab/errors.hpp"

namespace squeezelab {

FigureId parse_figure(std::string_view text) {
  if (text == "fig1") return FigureId::Fig1;
  if (text == "fig2") return FigureId::Fig2;
  if (text == "fig3") return FigureId::Fig3;
  if (text == "fig4") return FigureId::Fig4;
  throw ConfigError(fmt::format("figure: unknown figure '{}' (fig1..fig4)", text));
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig1:
      return "fig1";
    case FigureId::Fig2:
      return "fig2";
    case FigureId::Fig3:
      return "fig3";
    case FigureId::Fig4:
      return "fig4";
  }
  return "fig1";
}

ScenarioConfig figure_config(FigureId id) {
  ScenarioConfig c;
  c.command = Command::Spectrum;
  c.base.t = 0.0;
  switch (id) {
    case FigureId::Fig1:
      c.quantity = "quad_spectrum";
      c.port = Port::Input;
      c.axis = Axis::X;
      c.phase_mode = OptimalAt{0.0};
      c.grids = {{"psi0", 0.0, 10.0, 101}, {"omega", 0.0, 3.0, 61}};
      c.label = "S_X";
      break;
    case FigureId::Fig2:
      c.quantity = "quad_spectrum";
      c.port = Port::Out1;
      c.axis = Axis::Y;
      c.base.reflectance = 0.5;
      c.phase_mode = OptimalAt{0.0};
      c.grids = {{"psi0", 0.0, 10.0, 101}, {"omega", 0.0, 3.0, 61}};
      c.label = "S_Y1";
      break;
    case FigureId::Fig3:
      c.command = Command::Mandel;
      c.quantity = "mandel_q";
      c.port = Port::Out1;
      c.base.delta_phi = kPi / 2.0;
      c.base.t_over_taup = 0.1;
      c.grids = {{"psi0", 0.0, 6.0, 121}, {"omega", 0.0, 3.0, 61}};
      c.label = "Q_T1";
      break;
    case FigureId::Fig4:
      c.command = Command::PhotonNumber;
      c.quantity = "total_photon_out1";
      c.base.delta_phi = 0.0;
      c.base.reflectance = 0.5;
      c.grids = {{"psi0", 0.0, 30.0, 601}};
      c.label = "N1_over_N";
      break;
  }
  return c;
}

SweepResult run_figure(FigureId id, const Overrides& overrides) {
  ScenarioConfig c = figure_config(id);
  apply_overrides(c, overrides);
  return run_scenario(c);
}

}  // namespace squeezelab
