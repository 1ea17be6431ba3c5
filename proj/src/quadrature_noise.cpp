#include "squeezelab/quadrature_noise.hpp"

#include <cmath>

#include "squeezelab/errors.hpp"

namespace squeezelab {
namespace {

// 1 − 2a·sin2Φ + 4a²·sin²Φ written as a sum of squares.
double squeezed_form(double a, double s, double c) {
  const double d = 2.0 * a * s - c;
  return d * d + s * s;
}

// 1 + 2a·sin2Φ + 4a²·cos²Φ.
double antisqueezed_form(double a, double s, double c) {
  const double d = 2.0 * a * c + s;
  return d * d + c * c;
}

double port_weight(Port port, const std::optional<BeamSplitter>& splitter) {
  switch (port) {
    case Port::Input:
      return 1.0;
    case Port::Out1:
      return splitter->reflectance();
    case Port::Out2:
      return splitter->transmittance();
  }
  return 1.0;
}

// Whether the selected quadrature carries the input's X-type
// (squeezed-at-optimum) fluctuations. Reflection at output 1 swaps X and Y.
bool carries_input_x(QuadratureSelector sel) {
  const bool x = sel.axis == Axis::X;
  return sel.port == Port::Out1 ? !x : x;
}

}  // namespace

void require_splitter(Port port, const std::optional<BeamSplitter>& splitter) {
  if (port != Port::Input && !splitter)
    throw ConfigError("output ports require a beam splitter");
}

double quad_spectrum_at(QuadratureSelector sel, double omega, double psi, double total_phase,
                        const std::optional<BeamSplitter>& splitter) {
  require_splitter(sel.port, splitter);
  const double a = psi * lorentzian(omega);
  const double s = std::sin(total_phase);
  const double c = std::cos(total_phase);
  const double input = carries_input_x(sel) ? squeezed_form(a, s, c) : antisqueezed_form(a, s, c);
  const double w = port_weight(sel.port, splitter);
  if (sel.port == Port::Input) return 0.25 * input;
  return 0.25 * ((1.0 - w) + w * input);
}

CorrelationValue quad_correlation_at(QuadratureSelector sel, double tau, double psi,
                                     double total_phase, const MediumParams& medium,
                                     const std::optional<BeamSplitter>& splitter,
                                     CorrelationForm form) {
  require_splitter(sel.port, splitter);
  const double h = kernel_h(tau, medium);
  const double g = kernel_g(tau, medium);
  const double sin2 = std::sin(2.0 * total_phase);
  const double s = std::sin(total_phase);
  const double c = std::cos(total_phase);

  const bool x_type = carries_input_x(sel);
  const double linear = (x_type ? -1.0 : 1.0) * psi * h * sin2;
  double trig_sq = x_type ? s * s : c * c;
  if (form == CorrelationForm::AsPrinted && sel.port != Port::Input) trig_sq = c * c;

  const double w = port_weight(sel.port, splitter);
  return {0.25 * w * (linear + psi * psi * g * trig_sq), 0.25};
}

QuadraturePair mean_quadratures(Port port, double t, const MediumParams& medium,
                                const PulseState& pulse,
                                const std::optional<BeamSplitter>& splitter) {
  require_splitter(port, splitter);
  const double psi = nonlinear_phase(t, medium, pulse);
  const double amp = std::sqrt(mean_photon_rate(t, pulse)) * std::exp(-0.5 * medium.gamma * psi);
  const double big_phi = psi + pulse.phi1;
  if (port == Port::Input) return {amp * std::cos(big_phi), amp * std::sin(big_phi)};

  const double sr = std::sqrt(splitter->reflectance());
  const double st = std::sqrt(splitter->transmittance());
  if (port == Port::Out1) {
    return {amp * (st * std::cos(pulse.phi2) - sr * std::sin(big_phi)),
            amp * (st * std::sin(pulse.phi2) + sr * std::cos(big_phi))};
  }
  return {amp * (st * std::cos(big_phi) - sr * std::sin(pulse.phi2)),
          amp * (st * std::sin(big_phi) + sr * std::cos(pulse.phi2))};
}

CorrelationValue quad_correlation(QuadratureSelector sel, double t, double tau,
                                  const PhaseMode& phase, const MediumParams& medium,
                                  const PulseState& pulse,
                                  const std::optional<BeamSplitter>& splitter,
                                  CorrelationForm form) {
  if (!std::isfinite(tau)) throw DomainError("quad_correlation: non-finite tau");
  const double psi = nonlinear_phase(t, medium, pulse);
  return quad_correlation_at(sel, tau, psi, psi + resolve_phase(phase, psi), medium, splitter,
                             form);
}

NoiseSpectrumPoint quad_spectrum(QuadratureSelector sel, double omega, double t,
                                 const PhaseMode& phase, const MediumParams& medium,
                                 const PulseState& pulse,
                                 const std::optional<BeamSplitter>& splitter) {
  const double psi = nonlinear_phase(t, medium, pulse);
  return {omega, quad_spectrum_at(sel, omega, psi, psi + resolve_phase(phase, psi), splitter)};
}

NoiseSpectrumPoint paper_optimal_forms(QuadratureSelector sel, double omega, double omega0,
                                       double psi,
                                       const std::optional<BeamSplitter>& splitter) {
  require_splitter(sel.port, splitter);
  const double l = lorentzian(omega);
  const double l0 = lorentzian(omega0);
  const double a0 = psi * l0;
  const double root = std::sqrt(1.0 + a0 * a0);
  const double bracket = 1.0 + (l + l0) * l0 * psi * psi;
  // X on the input and at output 2, Y at output 1: minus sign in front of
  // the bracket term.
  const double sign = carries_input_x(sel) ? -1.0 : 1.0;

  if (sel.port == Port::Input) {
    const double base = 0.25 * std::pow(root + sign * a0, 2);
    const double shift = 0.5 * psi * (l - l0) *
                         ((l + l0) * psi + sign * bracket / std::sqrt(1.0 + psi * psi * l * l));
    return {omega, base + shift};
  }

  const double w = port_weight(sel.port, splitter);
  const double mix = 2.0 * w - 1.0;
  const double base = 0.25 * (std::pow(root + sign * w * a0, 2) - mix * mix * a0 * a0);
  const double shift =
      0.5 * w * psi * (l - l0) * ((l + l0) * psi + sign * bracket / (1.0 + a0 * a0));
  return {omega, base + shift};
}

}  // namespace squeezelab
