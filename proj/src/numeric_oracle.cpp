#include "squeezelab/numeric_oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "squeezelab/errors.hpp"
#include "squeezelab/parallel.hpp"

namespace squeezelab {
namespace {

constexpr int kMaxSimpsonDepth = 40;
constexpr std::size_t kMaxGaussPanels = std::size_t{1} << 16;

struct SimpsonState {
  const std::function<double(double)>& f;
  double residual = 0.0;  // unresolved error from regions that hit max depth
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // The second test stops refinement once the difference is rounding noise.
  if (std::abs(delta) <= 15.0 * tol ||
      std::abs(delta) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(whole))
    return left + right + delta / 15.0;
  if (depth >= kMaxSimpsonDepth) {
    st.residual += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        std::size_t panels, double tol) {
  SimpsonState st{f};
  const double width = (b - a) / static_cast<double>(panels);
  const double panel_tol = tol / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = k + 1 == panels ? b : lo + width;
    const double flo = f(lo);
    const double fmid = f(0.5 * (lo + hi));
    const double fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    sum += simpson_step(st, lo, hi, flo, fmid, fhi, whole, panel_tol, 0);
  }
  if (st.residual > tol)
    throw AccuracyError("adaptive Simpson: tolerance not reached", st.residual);
  return sum;
}

double gauss_panels(const std::function<double(double)>& f, double a, double b,
                    std::size_t panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double width = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = k + 1 == panels ? b : lo + width;
    sum += Rule::integrate(f, lo, hi);
  }
  return sum;
}

double gauss_legendre_composite(const std::function<double(double)>& f, double a, double b,
                                std::size_t panels, double tol) {
  double coarse = gauss_panels(f, a, b, panels);
  for (;;) {
    panels *= 2;
    const double fine = gauss_panels(f, a, b, panels);
    const double diff = std::abs(fine - coarse);
    if (diff <= tol) return fine;
    if (panels >= kMaxGaussPanels)
      throw AccuracyError("composite Gauss-Legendre: tolerance not reached", diff);
    coarse = fine;
  }
}

// Panel width in reduced time s = τ/τ_r for a cos(Ωs) factor.
double oscillation_panel(double omega) {
  const double w = std::abs(omega);
  return w > 0.5 * kPi ? 0.5 * kPi / w : 1.0;
}

// ∫_{|s|>Λ} of the g-type envelope (1+s)e^{−s}, both sides; bounds the
// h-type tail as well.
double kernel_tail(double truncation) {
  return 2.0 * (2.0 + truncation) * std::exp(-truncation);
}

// Twice the integral over s ∈ [0, Λ] of smooth(s·τ_r)·cos(Ωs), times τ_r.
// `tail_weight` bounds |smooth| in units of the g-type envelope.
double even_transform(const std::function<double(double)>& smooth, double omega, double tau_r,
                      double tail_weight, const QuadratureScheme& scheme) {
  scheme.validate();
  const double tail = tail_weight * kernel_tail(scheme.truncation);
  if (tail > scheme.tol)
    throw AccuracyError("kernel tail beyond truncation exceeds tolerance", tail);
  const auto integrand = [&](double s) { return smooth(s * tau_r) * std::cos(omega * s); };
  // Halve the budget: the integral is doubled afterwards.
  QuadratureScheme half = scheme;
  half.tol = 0.5 * (scheme.tol - tail);
  return 2.0 * tau_r *
         integrate(integrand, 0.0, scheme.truncation, oscillation_panel(omega), half);
}

// Unit-rate pulse at ψ(0) = psi used by the audit grids.
struct GridPulse {
  MediumParams medium{0.01, 1.0};
  PulseState pulse;
  explicit GridPulse(double psi) {
    pulse.tau_p = 100.0;
    pulse = with_peak_phase(pulse, medium, psi);
  }
};

struct Sample {
  double err = 0.0;
  AuditLocation where;
};

AuditReport reduce(std::string family, Expectation expectation, double tolerance,
                   const std::vector<Sample>& samples) {
  AuditReport report;
  report.family = std::move(family);
  report.expectation = expectation;
  report.tolerance = tolerance;
  report.points = samples.size();
  for (const Sample& s : samples) {
    if (s.err > report.max_abs_err || std::isnan(s.err)) {
      report.max_abs_err = s.err;
      report.argmax = s.where;
      if (std::isnan(s.err)) break;
    }
  }
  report.pass = report.max_abs_err <= tolerance;
  return report;
}

}  // namespace

void QuadratureScheme::validate() const {
  if (!(truncation >= 20.0)) throw DomainError("quadrature scheme: truncation must be >= 20");
  if (!(tol > 0.0 && tol <= 1e-3)) throw DomainError("quadrature scheme: tol must lie in (0, 1e-3]");
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width, const QuadratureScheme& scheme) {
  if (!(b > a)) return 0.0;
  const auto panels = static_cast<std::size_t>(
      std::max(1.0, std::ceil((b - a) / std::max(panel_width, 1e-12))));
  switch (scheme.rule) {
    case QuadratureRule::GaussLegendreComposite:
      return gauss_legendre_composite(f, a, b, panels, scheme.tol);
    case QuadratureRule::AdaptiveSimpson:
      break;
  }
  return adaptive_simpson(f, a, b, panels, scheme.tol);
}

double ft_kernel(KernelKind kernel, double omega, const QuadratureScheme& scheme) {
  if (!std::isfinite(omega)) throw DomainError("ft_kernel: non-finite frequency");
  const MediumParams unit{0.0, 1.0};
  switch (kernel) {
    case KernelKind::Delta:
      return 1.0;
    case KernelKind::H:
      return even_transform([&](double tau) { return kernel_h(tau, unit); }, omega, 1.0, 1.0,
                            scheme);
    case KernelKind::G:
      break;
  }
  return even_transform([&](double tau) { return kernel_g(tau, unit); }, omega, 1.0, 1.0,
                        scheme);
}

NoiseSpectrumPoint spectrum_via_ft(QuadratureSelector sel, double omega, double t,
                                   const PhaseMode& phase, const MediumParams& medium,
                                   const PulseState& pulse,
                                   const std::optional<BeamSplitter>& splitter,
                                   const QuadratureScheme& scheme, CorrelationForm form) {
  if (!std::isfinite(omega)) throw DomainError("spectrum_via_ft: non-finite frequency");
  const auto at = [&](double tau) {
    return quad_correlation(sel, t, tau, phase, medium, pulse, splitter, form);
  };
  const double psi = nonlinear_phase(t, medium, pulse);
  const double tail_weight = 0.25 * (psi + psi * psi);
  const double smooth =
      even_transform([&](double tau) { return at(tau).smooth; }, omega, medium.tau_r,
                     tail_weight, scheme);
  return {omega, at(0.0).delta_weight + smooth};
}

double photon_spectrum_via_ft(Port port, double omega, double t,
                              const MeasurementWindow& window, const MediumParams& medium,
                              const PulseState& pulse, const QuadratureScheme& scheme) {
  if (!std::isfinite(omega)) throw DomainError("photon_spectrum_via_ft: non-finite frequency");
  const BeamSplitter symmetric(0.5);
  const double psi = nonlinear_phase(t, medium, pulse);
  const double n0 = mean_photon_rate(t, pulse);
  const double tail_weight = n0 * (psi + psi * psi);
  const double smooth = even_transform(
      [&](double tau) {
        return photon_correlation(port, t, tau, medium, pulse, symmetric).smooth;
      },
      omega, medium.tau_r, tail_weight, scheme);
  return total_photon_input(pulse) + window.ratio * smooth;
}

double total_photon_numeric(double psi0, double delta_phi, const BeamSplitter& splitter,
                            const PulseState& pulse, const QuadratureScheme& scheme) {
  if (pulse.envelope != Envelope::Gaussian)
    throw DomainError("total_photon_numeric: Gaussian envelope required");
  scheme.validate();
  PulseState unit = pulse;
  unit.n0_peak = 1.0;
  const double rt = splitter.reflectance() * splitter.transmittance();
  const double tau_p = pulse.tau_p;
  const auto integrand = [&](double t) {
    const double x = t / tau_p;
    const double shape = std::exp(-0.5 * x * x);
    return mean_photon_rate(t, unit) *
           (1.0 - 2.0 * std::sqrt(rt) * std::sin(psi0 * shape + delta_phi));
  };
  // Even integrand: fold onto [0, 8τ_p].
  const double panel = tau_p / std::max(2.0, std::abs(psi0));
  QuadratureScheme half = scheme;
  half.tol = 0.5 * scheme.tol * total_photon_input(unit);
  const double total = 2.0 * integrate(integrand, 0.0, 8.0 * tau_p, panel, half);
  return total / total_photon_input(unit);
}

std::string AuditReport::status() const {
  if (expectation == Expectation::Agree) return pass ? "pass" : "fail";
  return pass ? "fail" : "documented-discrepancy";
}

std::vector<AuditReport> audit_paper_forms(const PaperFormGrid& grid, double tolerance) {
  struct Family {
    const char* name;
    Port port;
    bool at_omega0_only;
    Expectation expectation;
  };
  const Family families[] = {
      {"input-optimal", Port::Input, true, Expectation::Agree},
      {"input-general", Port::Input, false, Expectation::Discrepancy},
      {"out1", Port::Out1, false, Expectation::Discrepancy},
      {"out2", Port::Out2, false, Expectation::Discrepancy},
  };

  std::vector<AuditReport> reports;
  for (const Family& fam : families) {
    const std::vector<double> unit_r{1.0};
    const auto& rs = fam.port == Port::Input ? unit_r : grid.reflectance;
    std::vector<Sample> samples;
    for (double r : rs) {
      std::optional<BeamSplitter> splitter;
      if (fam.port != Port::Input) splitter.emplace(r);
      for (double omega0 : grid.omega0) {
        const std::vector<double> only{omega0};
        const auto& omegas = fam.at_omega0_only ? only : grid.omega;
        for (double psi : grid.psi) {
          const double phase = psi + optimal_phase(psi, omega0);
          for (double omega : omegas) {
            for (Axis axis : {Axis::X, Axis::Y}) {
              const QuadratureSelector sel{axis, fam.port};
              const double printed = paper_optimal_forms(sel, omega, omega0, psi, splitter).value;
              const double substituted = quad_spectrum_at(sel, omega, psi, phase, splitter);
              samples.push_back(
                  {std::abs(printed - substituted), {omega, psi, phase, r, omega0}});
            }
          }
        }
      }
    }
    reports.push_back(reduce(fam.name, fam.expectation, tolerance, samples));
  }
  return reports;
}

namespace {

struct OraclePoint {
  double psi, omega, r;
  const PhaseMode* phase;
};

std::vector<OraclePoint> expand(const OracleGrid& grid, const std::vector<double>& rs) {
  std::vector<OraclePoint> points;
  for (double r : rs)
    for (const PhaseMode& phase : grid.phases)
      for (double psi : grid.psi)
        for (double omega : grid.omega) points.push_back({psi, omega, r, &phase});
  return points;
}

}  // namespace

std::vector<AuditReport> audit_oracle(const OracleGrid& grid, double tolerance,
                                      const QuadratureScheme& scheme) {
  std::vector<AuditReport> reports;

  for (Port port : {Port::Input, Port::Out1, Port::Out2}) {
    const std::vector<double> unit_r{1.0};
    const auto points = expand(grid, port == Port::Input ? unit_r : grid.reflectance);
    std::vector<Sample> samples(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const OraclePoint& p = points[i];
      const GridPulse gp(p.psi);
      std::optional<BeamSplitter> splitter;
      if (port != Port::Input) splitter.emplace(p.r);
      double err = 0.0;
      for (Axis axis : {Axis::X, Axis::Y}) {
        const QuadratureSelector sel{axis, port};
        const double closed =
            quad_spectrum(sel, p.omega, 0.0, *p.phase, gp.medium, gp.pulse, splitter).value;
        const double numeric = spectrum_via_ft(sel, p.omega, 0.0, *p.phase, gp.medium, gp.pulse,
                                               splitter, scheme)
                                   .value;
        err = std::max(err, std::abs(closed - numeric));
      }
      samples[i] = {err, {p.omega, p.psi, p.psi + resolve_phase(*p.phase, p.psi), p.r, 0.0}};
    });
    const char* name = port == Port::Input ? "input" : port == Port::Out1 ? "out1" : "out2";
    reports.push_back(reduce(name, Expectation::Agree, tolerance, samples));
  }

  for (Port port : {Port::Out1, Port::Out2}) {
    const auto points = expand(grid, {0.5});
    std::vector<Sample> samples(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const OraclePoint& p = points[i];
      GridPulse gp(p.psi);
      const double delta_phi = resolve_phase(*p.phase, p.psi);
      gp.pulse.phi1 = delta_phi;
      gp.pulse.phi2 = 0.0;
      const auto window = MeasurementWindow::from_ratio(grid.window_ratio, gp.pulse.tau_p);
      const double closed = photon_spectrum(port, p.omega, 0.0, window, gp.medium, gp.pulse);
      const double numeric =
          photon_spectrum_via_ft(port, p.omega, 0.0, window, gp.medium, gp.pulse, scheme);
      samples[i] = {std::abs(closed - numeric), {p.omega, p.psi, p.psi + delta_phi, 0.5, 0.0}};
    });
    reports.push_back(reduce(port == Port::Out1 ? "photon1" : "photon2", Expectation::Agree,
                             tolerance, samples));
  }
  return reports;
}

AuditReport audit_printed_correlations(const OracleGrid& grid, double tolerance,
                                       const QuadratureScheme& scheme) {
  const auto points = expand(grid, grid.reflectance);
  std::vector<Sample> samples(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const OraclePoint& p = points[i];
    const GridPulse gp(p.psi);
    const std::optional<BeamSplitter> splitter(std::in_place, p.r);
    double err = 0.0;
    for (QuadratureSelector sel : {QuadratureSelector{Axis::Y, Port::Out1},
                                   QuadratureSelector{Axis::X, Port::Out2}}) {
      const double closed =
          quad_spectrum(sel, p.omega, 0.0, *p.phase, gp.medium, gp.pulse, splitter).value;
      const double numeric = spectrum_via_ft(sel, p.omega, 0.0, *p.phase, gp.medium, gp.pulse,
                                             splitter, scheme, CorrelationForm::AsPrinted)
                                 .value;
      err = std::max(err, std::abs(closed - numeric));
    }
    samples[i] = {err, {p.omega, p.psi, p.psi + resolve_phase(*p.phase, p.psi), p.r, 0.0}};
  });
  return reduce("printed-correlations", Expectation::Discrepancy, tolerance, samples);
}

}  // namespace squeezelab
