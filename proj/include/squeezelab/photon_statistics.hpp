// Photon-number correlations, windowed photon-number spectra, the
// frequency-resolved (extended) Mandel parameter and mean photon numbers
// at the two beam-splitter outputs. Both inputs carry the same mean
// photon rate n̄₀(t); Φ̃(t) = ψ(t) + Δφ with Δφ = φ₁ − φ₂.

#pragma once

#include <optional>

#include "squeezelab/pulse_core.hpp"
#include "squeezelab/quadrature_noise.hpp"

namespace squeezelab {

// Measurement time 𝒯 and its ratio to the pulse duration.
struct MeasurementWindow {
  double t_meas = 10.0;
  double ratio = 0.1;

  static MeasurementWindow from_ratio(double ratio, double tau_p);
  static MeasurementWindow from_time(double t_meas, double tau_p);

  // 𝒯/τ_p > 1: the short-window factorization no longer holds.
  bool long_window_warning() const noexcept { return ratio > 1.0; }
};

enum class Statistics { Sub, Poisson, Super };

// |Q| at or below this counts as Poissonian.
inline constexpr double kPoissonBand = 1e-12;

struct MandelPoint {
  double omega = 0.0;
  double q = 0.0;
  Statistics regime = Statistics::Poisson;
};

// Full keeps all three bracket terms. Monochromatic drops the ½sin2Φ̃ and
// ψL·cos²Φ̃ terms that come from the correlation between pulse modes.
enum class MandelTerms { Full, Monochromatic };

Statistics classify(double q) noexcept;

// Port must be Out1 or Out2 (ConfigError otherwise).
CorrelationValue photon_correlation(Port port, double t, double tau, const MediumParams& medium,
                                    const PulseState& pulse, const BeamSplitter& splitter);

// Q at fixed ψ and Δφ; symmetric 50 % splitter.
double mandel_q_at(Port port, double omega, double psi, double delta_phi, double window_ratio,
                   MandelTerms terms = MandelTerms::Full);

MandelPoint mandel_q(Port port, double omega, double t, const MeasurementWindow& window,
                     const MediumParams& medium, const PulseState& pulse,
                     MandelTerms terms = MandelTerms::Full);

// S_𝒯,j = N̄ + n̄₀(t)·Q_j. Symmetric splitter, as the closed form is derived.
double photon_spectrum(Port port, double omega, double t, const MeasurementWindow& window,
                       const MediumParams& medium, const PulseState& pulse);

// ⟨𝒩_𝒯,j⟩ = 𝒯 n̄₀(t)[1 ∓ 2√(RT) sin(ψ + Δφ)].
double mean_photons_windowed(Port port, double t, const MeasurementWindow& window,
                             const MediumParams& medium, const PulseState& pulse,
                             const BeamSplitter& splitter);

// N̄ = ∫n̄₀(t)dt. Gaussian: n0_peak·τ_p·√π. Flat: rate integrated over |t| ≤ τ_p.
double total_photon_input(const PulseState& pulse);

// N̄₁/N̄ = 1 − 2√(RT)·[sin(ψ₀/4)/(ψ₀/4)]·sin(ψ₀/4 + Δφ), Gaussian pulse.
double total_photon_out1(double psi0, double delta_phi, const BeamSplitter& splitter);

// N̄₂/N̄ with the opposite sign, so that N̄₁ + N̄₂ = 2N̄.
double total_photon_out2(double psi0, double delta_phi, const BeamSplitter& splitter);

}  // namespace squeezelab
