#include "squeezelab/photon_statistics.hpp"

#include <cmath>

#include "squeezelab/errors.hpp"

namespace squeezelab {
namespace {

// −1 at output 1, +1 at output 2.
double port_sign(Port port) {
  switch (port) {
    case Port::Out1:
      return -1.0;
    case Port::Out2:
      return 1.0;
    case Port::Input:
      break;
  }
  throw ConfigError("photon statistics are defined for output ports 1 and 2 only");
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

MeasurementWindow MeasurementWindow::from_ratio(double ratio, double tau_p) {
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw DomainError("measurement window: T/tau_p must be finite and > 0");
  return {ratio * tau_p, ratio};
}

MeasurementWindow MeasurementWindow::from_time(double t_meas, double tau_p) {
  if (!(t_meas > 0.0) || !std::isfinite(t_meas))
    throw DomainError("measurement window: t_meas must be finite and > 0");
  return {t_meas, t_meas / tau_p};
}

Statistics classify(double q) noexcept {
  if (q < -kPoissonBand) return Statistics::Sub;
  if (q > kPoissonBand) return Statistics::Super;
  return Statistics::Poisson;
}

CorrelationValue photon_correlation(Port port, double t, double tau, const MediumParams& medium,
                                    const PulseState& pulse, const BeamSplitter& splitter) {
  const double sign = port_sign(port);
  const double r = splitter.reflectance();
  const double tr = splitter.transmittance();
  const double rt = r * tr;
  const double own = port == Port::Out1 ? r : tr;

  const double n0 = mean_photon_rate(t, pulse);
  const double psi = nonlinear_phase(t, medium, pulse);
  const double phase = psi + pulse.delta_phi();
  const double h = kernel_h(tau, medium);
  const double g = kernel_g(tau, medium);
  const double c = std::cos(phase);

  const double smooth = sign * 2.0 * own * std::sqrt(rt) * psi * h * c +
                        rt * psi * h * std::sin(2.0 * phase) + rt * psi * psi * g * c * c;
  return {n0 * smooth, n0};
}

double mandel_q_at(Port port, double omega, double psi, double delta_phi, double window_ratio,
                   MandelTerms terms) {
  const double sign = port_sign(port);
  const double a = psi * lorentzian(omega);
  const double phase = psi + delta_phi;
  const double c = std::cos(phase);
  double bracket = sign * c;
  if (terms == MandelTerms::Full) bracket += 0.5 * std::sin(2.0 * phase) + a * c * c;
  return a * window_ratio * bracket;
}

MandelPoint mandel_q(Port port, double omega, double t, const MeasurementWindow& window,
                     const MediumParams& medium, const PulseState& pulse, MandelTerms terms) {
  if (!(mean_photon_rate(t, pulse) > 0.0))
    throw UndefinedStatisticsError("mandel_q: mean photon rate vanishes at this time");
  const double psi = nonlinear_phase(t, medium, pulse);
  const double q = mandel_q_at(port, omega, psi, pulse.delta_phi(), window.ratio, terms);
  return {omega, q, classify(q)};
}

double photon_spectrum(Port port, double omega, double t, const MeasurementWindow& window,
                       const MediumParams& medium, const PulseState& pulse) {
  const double psi = nonlinear_phase(t, medium, pulse);
  const double q = mandel_q_at(port, omega, psi, pulse.delta_phi(), window.ratio);
  return total_photon_input(pulse) + mean_photon_rate(t, pulse) * q;
}

double mean_photons_windowed(Port port, double t, const MeasurementWindow& window,
                             const MediumParams& medium, const PulseState& pulse,
                             const BeamSplitter& splitter) {
  const double sign = port_sign(port);
  const double psi = nonlinear_phase(t, medium, pulse);
  const double rt = splitter.reflectance() * splitter.transmittance();
  return window.t_meas * mean_photon_rate(t, pulse) *
         (1.0 + sign * 2.0 * std::sqrt(rt) * std::sin(psi + pulse.delta_phi()));
}

double total_photon_input(const PulseState& pulse) {
  switch (pulse.envelope) {
    case Envelope::Flat:
      return 2.0 * pulse.tau_p * mean_photon_rate(0.0, pulse);
    case Envelope::Gaussian:
      break;
  }
  return pulse.n0_peak * pulse.tau_p * std::sqrt(kPi);
}

double total_photon_out1(double psi0, double delta_phi, const BeamSplitter& splitter) {
  const double rt = splitter.reflectance() * splitter.transmittance();
  const double x = 0.25 * psi0;
  return 1.0 - 2.0 * std::sqrt(rt) * sinc(x) * std::sin(x + delta_phi);
}

double total_photon_out2(double psi0, double delta_phi, const BeamSplitter& splitter) {
  return 2.0 - total_photon_out1(psi0, delta_phi, splitter);
}

}  // namespace squeezelab
