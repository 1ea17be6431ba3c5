// Figure datasets: fixed default grids for the four published plots.
//
//   fig1  S_X(Ω, ψ₀), input, phase optimal at Ω₀ = 0, t = 0   ψ₀ ∈ [0,10] × Ω ∈ [0,3], 101×61
//   fig2  S_𝒴₁(Ω, ψ₀), R = ½, otherwise as fig1
//   fig3  Q_𝒯,1(Ω, ψ₀), Δφ = π/2, 𝒯/τ_p = 0.1            ψ₀ ∈ [0,6] × Ω ∈ [0,3], 121×61
//   fig4  N̄₁/N̄ vs ψ₀, Δφ = 0, R = ½                       ψ₀ ∈ [0,30], 601 points
//
// The published figures print no axis ranges; these grids are fixed so
// the datasets are reproducible. The fig3 range may clip extrema of the
// original plot.

#pragma once

#include <string_view>

#include "squeezelab/scenario.hpp"

namespace squeezelab {

enum class FigureId { Fig1, Fig2, Fig3, Fig4 };

FigureId parse_figure(std::string_view text);
std::string_view to_string(FigureId id);

ScenarioConfig figure_config(FigureId id);

// Default config with `overrides` applied, then swept.
SweepResult run_figure(FigureId id, const Overrides& overrides = {});

}  // namespace squeezelab
