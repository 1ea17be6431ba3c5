/*
 * pulse_core.hpp — scalar building blocks of the SPM pulse model.
 *
 *   L(Ω)   = 1 / (1 + Ω²)                      Ω = ω τ_r
 *   ρ(t)   = exp(−t² / 2τ_p²) / √2             (Gaussian envelope)
 *   n̄₀(t) = n0_peak · ρ(t)                     mean photon rate
 *   ψ(t)   = 2γ n̄₀(t)                          nonlinear phase
 *   μ(t)   = γ ψ(t) / 2                        damping exponent
 *   h(τ)   = τ_r⁻¹ exp(−|τ|/τ_r)
 *   g(τ)   = τ_r⁻¹ (1 + |τ|/τ_r) exp(−|τ|/τ_r)
 *   φ₀     = ½ arctan(1 / ψL(Ω₀)) − ψ          optimal linear phase
 */

#pragma once

#include <cmath>
#include <numbers>
#include <variant>

namespace squeezelab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// Above this γ the small-nonlinearity approximation behind every
// closed form is no longer trusted.
inline constexpr double kGammaValidityLimit = 0.1;
// τ_r/τ_p above this is flagged; above 1 the pulse is rejected.
inline constexpr double kTimescaleWarnRatio = 0.1;

struct MediumParams {
  double gamma = 0.01;  // Kerr nonlinearity per photon
  double tau_r = 1.0;   // relaxation time

  // Throws DomainError on gamma < 0 or tau_r <= 0.
  void validate() const;
  // True while γ ≪ 1 holds (γ < 0.1).
  bool small_nonlinearity() const noexcept { return gamma < kGammaValidityLimit; }
};

enum class Envelope { Gaussian, Flat };

struct PulseState {
  double n0_peak = 0.0;  // amplitude of n̄₀(t) = n0_peak·ρ(t), photons per time unit
  double tau_p = 100.0;
  double phi1 = 0.0;  // SPM-arm linear phase
  double phi2 = 0.0;  // coherent-arm linear phase
  Envelope envelope = Envelope::Gaussian;

  double delta_phi() const noexcept { return phi1 - phi2; }

  // Throws DomainError on n0_peak < 0, tau_p <= 0 or tau_r/tau_p >= 1.
  void validate(const MediumParams& medium) const;
  // τ_r/τ_p > 0.1: quasi-static regime only approximately satisfied.
  bool timescale_warning(const MediumParams& medium) const noexcept {
    return medium.tau_r / tau_p > kTimescaleWarnRatio;
  }
};

class BeamSplitter {
 public:
  explicit BeamSplitter(double reflectance);

  double reflectance() const noexcept { return reflectance_; }
  double transmittance() const noexcept { return 1.0 - reflectance_; }

 private:
  double reflectance_;
};

// Linear phase φ₁ of the SPM arm: either fixed, or chosen so that the
// X-quadrature noise is minimal at reduced frequency Ω₀.
struct ExplicitPhase {
  double radians = 0.0;
};
struct OptimalAt {
  double omega0 = 0.0;
};
using PhaseMode = std::variant<ExplicitPhase, OptimalAt>;

double lorentzian(double omega);

// ρ(t) for the pulse's envelope kind.
double envelope(double t, const PulseState& pulse);

// n̄₀(t) = n0_peak·ρ(t).
double mean_photon_rate(double t, const PulseState& pulse);

// ψ(t) = 2γ n̄₀(t).
double nonlinear_phase(double t, const MediumParams& medium, const PulseState& pulse);

// μ(t) = γψ(t)/2.
double damping_mu(double t, const MediumParams& medium, const PulseState& pulse);

// Peak value ψ₀ = ψ(0).
double peak_nonlinear_phase(const MediumParams& medium, const PulseState& pulse);

// Returns a copy of `pulse` whose n0_peak yields ψ(0) = psi0.
PulseState with_peak_phase(PulseState pulse, const MediumParams& medium, double psi0);

double optimal_phase(double psi, double omega0);

// φ₁ for the given mode at nonlinear phase ψ.
double resolve_phase(const PhaseMode& mode, double psi);

double kernel_h(double tau, const MediumParams& medium);
double kernel_g(double tau, const MediumParams& medium);

}  // namespace squeezelab
