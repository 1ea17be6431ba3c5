#include "squeezelab/pulse_core.hpp"

#include <string>

#include "squeezelab/errors.hpp"

namespace squeezelab {

void MediumParams::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw DomainError("medium: gamma must be finite and >= 0");
  if (!(tau_r > 0.0) || !std::isfinite(tau_r))
    throw DomainError("medium: tau_r must be finite and > 0");
}

void PulseState::validate(const MediumParams& medium) const {
  if (!(n0_peak >= 0.0) || !std::isfinite(n0_peak))
    throw DomainError("pulse: n0_peak must be finite and >= 0");
  if (!(tau_p > 0.0) || !std::isfinite(tau_p))
    throw DomainError("pulse: tau_p must be finite and > 0");
  if (!(medium.tau_r / tau_p < 1.0))
    throw DomainError("pulse: tau_r/tau_p must be < 1");
}

BeamSplitter::BeamSplitter(double reflectance) : reflectance_(reflectance) {
  if (!(reflectance >= 0.0 && reflectance <= 1.0))
    throw DomainError("beam splitter: reflectance must lie in [0, 1], got " +
                      std::to_string(reflectance));
}

double lorentzian(double omega) {
  if (!std::isfinite(omega)) throw DomainError("lorentzian: non-finite frequency");
  return 1.0 / (1.0 + omega * omega);
}

double envelope(double t, const PulseState& pulse) {
  switch (pulse.envelope) {
    case Envelope::Flat:
      return kInvSqrt2;
    case Envelope::Gaussian:
      break;
  }
  const double x = t / pulse.tau_p;
  return std::exp(-0.5 * x * x) * kInvSqrt2;
}

double mean_photon_rate(double t, const PulseState& pulse) {
  return pulse.n0_peak * envelope(t, pulse);
}

double nonlinear_phase(double t, const MediumParams& medium, const PulseState& pulse) {
  return 2.0 * medium.gamma * mean_photon_rate(t, pulse);
}

double damping_mu(double t, const MediumParams& medium, const PulseState& pulse) {
  return 0.5 * medium.gamma * nonlinear_phase(t, medium, pulse);
}

double peak_nonlinear_phase(const MediumParams& medium, const PulseState& pulse) {
  return nonlinear_phase(0.0, medium, pulse);
}

PulseState with_peak_phase(PulseState pulse, const MediumParams& medium, double psi0) {
  if (!(psi0 >= 0.0) || !std::isfinite(psi0))
    throw DomainError("psi0 must be finite and >= 0");
  if (psi0 > 0.0 && !(medium.gamma > 0.0))
    throw ConfigError("psi0 > 0 requires gamma > 0");
  pulse.n0_peak = psi0 > 0.0 ? psi0 / (2.0 * medium.gamma * kInvSqrt2) : 0.0;
  return pulse;
}

double optimal_phase(double psi, double omega0) {
  // atan2(1, x) is the principal arctan(1/x) for x > 0 and gives the
  // π/2 limit at x = 0.
  const double x = psi * lorentzian(omega0);
  return 0.5 * std::atan2(1.0, x) - psi;
}

double resolve_phase(const PhaseMode& mode, double psi) {
  if (const auto* fixed = std::get_if<ExplicitPhase>(&mode)) return fixed->radians;
  return optimal_phase(psi, std::get<OptimalAt>(mode).omega0);
}

double kernel_h(double tau, const MediumParams& medium) {
  const double s = std::abs(tau) / medium.tau_r;
  return std::exp(-s) / medium.tau_r;
}

double kernel_g(double tau, const MediumParams& medium) {
  const double s = std::abs(tau) / medium.tau_r;
  return (1.0 + s) * std::exp(-s) / medium.tau_r;
}

}  // namespace squeezelab
