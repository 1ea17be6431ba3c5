// Mean quadratures, quadrature-fluctuation correlation functions and
// spectra for the SPM pulse and both beam-splitter outputs.
//
// Conventions: spectra are S(Ω,t) = ∫R(t,t+τ) e^{iωτ} dτ with Ω = ωτ_r, so
// the vacuum level is 1/4. Everything depends on t only through ψ(t)
// (quasi-static regime τ_r ≪ τ_p).

#pragma once

#include <optional>

#include "squeezelab/pulse_core.hpp"

namespace squeezelab {

enum class Axis { X, Y };
enum class Port { Input, Out1, Out2 };

struct QuadratureSelector {
  Axis axis = Axis::X;
  Port port = Port::Input;
};

struct NoiseSpectrumPoint {
  double omega = 0.0;
  double value = 0.0;
};

struct QuadraturePair {
  double x = 0.0;
  double y = 0.0;
};

// Correlation function split into the part proportional to δ(τ) and the
// smooth remainder (units: inverse time).
struct CorrelationValue {
  double smooth = 0.0;
  double delta_weight = 0.0;
};

// The output-port correlation functions as printed carry cos²Φ₁ on the
// g-term for 𝒴₁ and 𝒳₂; their transforms do not give the printed spectra.
// Corrected is the default everywhere; AsPrinted exists for the audit.
enum class CorrelationForm { Corrected, AsPrinted };

// Throws ConfigError when an output port is selected without a splitter.
void require_splitter(Port port, const std::optional<BeamSplitter>& splitter);

// --- evaluation at fixed (ψ, Φ) -------------------------------------------

// Φ is the total phase ψ + φ₁ of the SPM arm.
double quad_spectrum_at(QuadratureSelector sel, double omega, double psi, double total_phase,
                        const std::optional<BeamSplitter>& splitter);

CorrelationValue quad_correlation_at(QuadratureSelector sel, double tau, double psi,
                                     double total_phase, const MediumParams& medium,
                                     const std::optional<BeamSplitter>& splitter,
                                     CorrelationForm form = CorrelationForm::Corrected);

// --- evaluation at time t of a pulse ----------------------------------------

// Expectation values of the quadratures. φ₁ and φ₂ are taken from `pulse`.
QuadraturePair mean_quadratures(Port port, double t, const MediumParams& medium,
                                const PulseState& pulse,
                                const std::optional<BeamSplitter>& splitter = std::nullopt);

CorrelationValue quad_correlation(QuadratureSelector sel, double t, double tau,
                                  const PhaseMode& phase, const MediumParams& medium,
                                  const PulseState& pulse,
                                  const std::optional<BeamSplitter>& splitter = std::nullopt,
                                  CorrelationForm form = CorrelationForm::Corrected);

NoiseSpectrumPoint quad_spectrum(QuadratureSelector sel, double omega, double t,
                                 const PhaseMode& phase, const MediumParams& medium,
                                 const PulseState& pulse,
                                 const std::optional<BeamSplitter>& splitter = std::nullopt);

// Closed forms printed for the optimal phase chosen at Ω₀, evaluated
// verbatim: the Ω₀ values (√(1+ψ²L₀²) ∓ ψL₀)²/4, their output-port
// analogues with the −(2R−1)²ψ²L₀² term, and the general-Ω expansions
// around Ω₀. Kept for auditing against quad_spectrum; the output-port
// expressions do not agree with substitution of the optimal phase.
NoiseSpectrumPoint paper_optimal_forms(QuadratureSelector sel, double omega, double omega0,
                                       double psi,
                                       const std::optional<BeamSplitter>& splitter = std::nullopt);

}  // namespace squeezelab
