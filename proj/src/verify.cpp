#include "squeezelab/verify.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "squeezelab/errors.hpp"

namespace squeezelab {
namespace {

using nlohmann::json;

CheckResult make_check(std::string name, std::string family, double err, double tol,
                       json detail = json::object()) {
  CheckResult c;
  c.name = std::move(name);
  c.family = std::move(family);
  c.max_abs_err = err;
  c.tolerance = tol;
  c.status = err <= tol ? "pass" : "fail";
  c.detail = std::move(detail);
  return c;
}

CheckResult from_audit(const AuditReport& r, std::string family) {
  CheckResult c;
  c.name = r.family;
  c.family = std::move(family);
  c.max_abs_err = r.max_abs_err;
  c.tolerance = r.tolerance;
  c.status = r.status();
  c.detail = to_json(r);
  return c;
}

struct Sampler {
  std::mt19937_64 rng;
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

// Maximum of err(sampler) over n random draws.
double max_over(std::size_t n, Sampler& s, const std::function<double(Sampler&)>& err) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, err(s));
  return worst;
}

void invariant_checks(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const double tol = opt.alg_tol;
  Sampler s{std::mt19937_64(opt.seed)};
  const std::size_t n = opt.random_samples;

  {
    double worst = 0.0;
    for (double omega0 : {0.0, 1.0}) {
      for (int k = 0; k <= 100; ++k) {
        const double psi = 0.1 * k;
        const double phase = psi + optimal_phase(psi, omega0);
        const double sx = quad_spectrum_at({Axis::X, Port::Input}, omega0, psi, phase, {});
        const double sy = quad_spectrum_at({Axis::Y, Port::Input}, omega0, psi, phase, {});
        worst = std::max(worst, std::abs(sx * sy - 1.0 / 16.0));
      }
    }
    out.push_back(make_check("minimum-uncertainty-product", "invariants", worst, tol));
  }

  out.push_back(make_check("vacuum-mixing", "invariants", max_over(n, s, [](Sampler& r) {
    const double psi = r.uniform(0, 10), phase = r.uniform(-kPi, kPi);
    const double omega = r.uniform(0, 10);
    const std::optional<BeamSplitter> bs(std::in_place, r.uniform(0, 1));
    const double R = bs->reflectance(), T = bs->transmittance();
    const auto S = [&](Axis a, Port p) { return quad_spectrum_at({a, p}, omega, psi, phase, bs); };
    const double dx = S(Axis::X, Port::Input) - 0.25, dy = S(Axis::Y, Port::Input) - 0.25;
    return std::max({std::abs(S(Axis::Y, Port::Out1) - 0.25 - R * dx),
                     std::abs(S(Axis::X, Port::Out1) - 0.25 - R * dy),
                     std::abs(S(Axis::X, Port::Out2) - 0.25 - T * dx),
                     std::abs(S(Axis::Y, Port::Out2) - 0.25 - T * dy)});
  }), tol));

  out.push_back(make_check("excess-noise", "invariants", max_over(n, s, [](Sampler& r) {
    const double psi = r.uniform(0, 10), phase = r.uniform(-kPi, kPi);
    const double omega = r.uniform(0, 10);
    const std::optional<BeamSplitter> bs(std::in_place, r.uniform(0, 1));
    const double a2 = std::pow(psi * lorentzian(omega), 2);
    const auto sum = [&](Port p) {
      return quad_spectrum_at({Axis::X, p}, omega, psi, phase, bs) +
             quad_spectrum_at({Axis::Y, p}, omega, psi, phase, bs);
    };
    return std::max({std::abs(sum(Port::Input) - 0.5 - a2),
                     std::abs(sum(Port::Out1) - 0.5 - bs->reflectance() * a2),
                     std::abs(sum(Port::Out2) - 0.5 - bs->transmittance() * a2)});
  }), tol));

  out.push_back(make_check("geometric-phase-rotation", "invariants", max_over(n, s, [](Sampler& r) {
    const double psi = r.uniform(0, 10), phase = r.uniform(-kPi, kPi);
    const double omega = r.uniform(0, 10);
    const std::optional<BeamSplitter> full(std::in_place, 1.0);
    return std::max(
        std::abs(quad_spectrum_at({Axis::X, Port::Out1}, omega, psi, phase, full) -
                 quad_spectrum_at({Axis::Y, Port::Input}, omega, psi, phase, {})),
        std::abs(quad_spectrum_at({Axis::Y, Port::Out1}, omega, psi, phase, full) -
                 quad_spectrum_at({Axis::X, Port::Input}, omega, psi, phase, {})));
  }), tol));

  {
    double lowest = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double psi = s.uniform(0, 10), phase = s.uniform(-kPi, kPi);
      const double omega = s.uniform(0, 10);
      const std::optional<BeamSplitter> bs(std::in_place, s.uniform(0, 1));
      for (Port p : {Port::Input, Port::Out1, Port::Out2})
        for (Axis a : {Axis::X, Axis::Y})
          lowest = std::min(lowest, quad_spectrum_at({a, p}, omega, psi, phase, bs));
    }
    out.push_back(make_check("spectrum-nonnegative", "invariants", std::max(0.0, -lowest), 0.0,
                             {{"min_value", lowest}}));
  }

  out.push_back(make_check("windowed-photon-conservation", "invariants", max_over(n, s, [](Sampler& r) {
    const MediumParams medium{0.01, 1.0};
    PulseState pulse;
    pulse.tau_p = 100.0;
    pulse.phi1 = r.uniform(-kPi, kPi);
    pulse = with_peak_phase(pulse, medium, r.uniform(0, 10));
    const BeamSplitter bs(r.uniform(0, 1));
    const double t = r.uniform(-100, 100);
    const auto w = MeasurementWindow::from_ratio(0.1, pulse.tau_p);
    const double sum = mean_photons_windowed(Port::Out1, t, w, medium, pulse, bs) +
                       mean_photons_windowed(Port::Out2, t, w, medium, pulse, bs);
    const double expected = 2.0 * w.t_meas * mean_photon_rate(t, pulse);
    return std::abs(sum - expected) / std::max(1.0, expected);
  }), tol));

  out.push_back(make_check("total-photon-antisymmetry", "invariants", max_over(n, s, [](Sampler& r) {
    const double psi0 = r.uniform(0, 30), dphi = r.uniform(-kPi, kPi);
    const BeamSplitter bs(r.uniform(0, 1));
    return std::abs(total_photon_out1(psi0, dphi, bs) + total_photon_out1(psi0, dphi + kPi, bs) - 2.0);
  }), tol));

  out.push_back(make_check("mandel-spectrum-consistency", "invariants", max_over(n, s, [](Sampler& r) {
    const MediumParams medium{0.01, 1.0};
    PulseState pulse;
    pulse.tau_p = 100.0;
    pulse.phi1 = r.uniform(-kPi, kPi);
    pulse = with_peak_phase(pulse, medium, r.uniform(0.01, 10));
    const double omega = r.uniform(0, 10);
    const auto w = MeasurementWindow::from_ratio(r.uniform(0.01, 1), pulse.tau_p);
    double worst = 0.0;
    for (Port p : {Port::Out1, Port::Out2}) {
      const double q = mandel_q(p, omega, 0.0, w, medium, pulse).q;
      const double eps = photon_spectrum(p, omega, 0.0, w, medium, pulse) - total_photon_input(pulse);
      // ε is a difference of numbers of size N̄; compare relative to it.
      worst = std::max(worst, std::abs(eps - mean_photon_rate(0.0, pulse) * q) /
                                  total_photon_input(pulse));
    }
    return worst;
  }), tol));

  out.push_back(make_check("mean-quadrature-norm", "invariants", max_over(n, s, [](Sampler& r) {
    const MediumParams medium{0.01, 1.0};
    PulseState pulse;
    pulse.tau_p = 100.0;
    pulse.phi1 = r.uniform(-kPi, kPi);
    pulse.phi2 = r.uniform(-kPi, kPi);
    pulse = with_peak_phase(pulse, medium, r.uniform(0, 10));
    const std::optional<BeamSplitter> bs(std::in_place, r.uniform(0, 1));
    const double t = r.uniform(-100, 100);
    const auto q1 = mean_quadratures(Port::Out1, t, medium, pulse, bs);
    const auto q2 = mean_quadratures(Port::Out2, t, medium, pulse, bs);
    const double a2 = mean_photon_rate(t, pulse) * std::exp(-medium.gamma * nonlinear_phase(t, medium, pulse));
    const double lhs = q1.x * q1.x + q1.y * q1.y + q2.x * q2.x + q2.y * q2.y;
    return std::abs(lhs - 2.0 * a2) / std::max(1.0, a2);
  }), tol));
}

void audit_checks(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const auto grid = default_paper_form_grid();
  for (const AuditReport& r : audit_paper_forms(grid, opt.alg_tol)) out.push_back(from_audit(r, "audit"));

  // The single point where the output-port discrepancy is pinned.
  const PaperFormGrid pin{{1.0}, {0.0}, {0.0}, {1.0}};
  const auto pinned = audit_paper_forms(pin, opt.alg_tol);
  CheckResult c = from_audit(pinned[2], "audit");
  c.name = "out1-pinned-deviation";
  c.detail["expected_deviation"] = 0.25;
  if (std::abs(pinned[2].max_abs_err - 0.25) > opt.alg_tol) c.status = "fail";
  out.push_back(c);
}

void oracle_checks(const VerifyOptions& opt, std::vector<CheckResult>& out) {
  const QuadratureScheme scheme;
  {
    const double tol = std::min(1e-9, opt.ft_tol);
    double worst = 0.0;
    json where;
    for (double omega : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const double l = lorentzian(omega);
      const double eh = std::abs(ft_kernel(KernelKind::H, omega, scheme) - 2.0 * l);
      const double eg = std::abs(ft_kernel(KernelKind::G, omega, scheme) - 4.0 * l * l);
      if (std::max(eh, eg) >= worst) {
        worst = std::max(eh, eg);
        where = {{"omega", omega}};
      }
    }
    out.push_back(make_check("kernel-self-test", "oracle", worst, tol, {{"argmax_location", where}}));
  }

  const OracleGrid grid = default_oracle_grid();
  for (const AuditReport& r : audit_oracle(grid, opt.ft_tol, scheme)) {
    CheckResult c = from_audit(r, "oracle");
    c.name = "ft-" + r.family;
    out.push_back(c);
  }
  out.push_back(from_audit(audit_printed_correlations(grid, opt.ft_tol, scheme), "oracle"));

  // Closed-form total photon number against direct time integration. The
  // two are known to differ; the curve is reported, not judged.
  PulseState pulse;
  pulse.tau_p = 100.0;
  const BeamSplitter half(0.5);
  json curve = json::array();
  double worst_small = 0.0;
  for (double dphi : {0.0, kPi / 6.0, kPi / 2.0}) {
    for (int k = 0; k <= 60; ++k) {
      const double psi0 = 0.5 * k;
      const double closed = total_photon_out1(psi0, dphi, half);
      const double numeric = total_photon_numeric(psi0, dphi, half, pulse, scheme);
      curve.push_back({{"delta_phi", dphi}, {"psi0", psi0}, {"closed", closed}, {"numeric", numeric}});
    }
    for (double psi0 : {0.01, 0.05, 0.1}) {
      const double closed = total_photon_out1(psi0, dphi, half);
      const double numeric = total_photon_numeric(psi0, dphi, half, pulse, scheme);
      worst_small = std::max(worst_small, std::abs(numeric - closed) / std::abs(closed));
    }
  }
  CheckResult c = make_check("total-photon-closed-vs-numeric", "oracle", worst_small, 1e-3,
                             {{"curve", curve}, {"measure", "relative difference at psi0 <= 0.1"}});
  if (c.status == "fail") c.status = "documented-discrepancy";
  out.push_back(c);
}

}  // namespace

bool VerifyReport::passed() const {
  for (const CheckResult& c : checks)
    if (!c.ok()) return false;
  return true;
}

json VerifyReport::to_json() const {
  json doc;
  doc["passed"] = passed();
  doc["exit_code"] = exit_code();
  json list = json::array();
  for (const CheckResult& c : checks) {
    list.push_back({{"name", c.name},
                    {"family", c.family},
                    {"status", c.status},
                    {"max_abs_err", c.max_abs_err},
                    {"tolerance", c.tolerance},
                    {"detail", c.detail}});
  }
  doc["checks"] = list;
  return doc;
}

OracleGrid default_oracle_grid() {
  OracleGrid g;
  g.psi = {0.5, 1.0, 2.0, 5.0};
  g.omega = {0.0, 0.5, 1.0, 2.0, 5.0};
  g.phases = {ExplicitPhase{0.0}, ExplicitPhase{kPi / 8.0}, ExplicitPhase{1.0}, OptimalAt{0.0}};
  g.reflectance = {0.0, 0.3, 0.5, 1.0};
  g.window_ratio = 0.1;
  return g;
}

PaperFormGrid default_paper_form_grid() {
  PaperFormGrid g;
  for (int k = 0; k <= 20; ++k) g.psi.push_back(0.5 * k);
  for (int k = 0; k <= 12; ++k) g.omega.push_back(0.25 * k);
  g.omega0 = {0.0, 1.0};
  g.reflectance = {0.0, 0.25, 0.5, 2.0 / 3.0, 0.75, 1.0};
  return g;
}

json to_json(const AuditLocation& w) {
  return {{"omega", w.omega}, {"psi", w.psi}, {"phase", w.phase}, {"R", w.reflectance},
          {"omega0", w.omega0}};
}

json to_json(const AuditReport& r) {
  return {{"family", r.family},
          {"expectation", r.expectation == Expectation::Agree ? "agree" : "discrepancy"},
          {"status", r.status()},
          {"pass", r.pass},
          {"tolerance", r.tolerance},
          {"max_abs_err", r.max_abs_err},
          {"argmax_location", to_json(r.argmax)},
          {"points", r.points}};
}

json audit_to_json(const PaperFormGrid& grid, const std::vector<AuditReport>& reports) {
  json doc;
  doc["grid"] = {{"psi", grid.psi}, {"omega", grid.omega}, {"omega0", grid.omega0},
                 {"R", grid.reflectance}};
  double worst = 0.0;
  AuditLocation where;
  json families = json::object();
  for (const AuditReport& r : reports) {
    if (r.max_abs_err > worst) {
      worst = r.max_abs_err;
      where = r.argmax;
    }
    families[r.family] = to_json(r);
  }
  doc["max_abs_err"] = worst;
  doc["argmax_location"] = to_json(where);
  doc["families"] = families;
  return doc;
}

VerifyReport run_verify(const VerifyOptions& opt) {
  for (const std::string& name : opt.skip) {
    if (std::find(std::begin(kVerifyFamilies), std::end(kVerifyFamilies), name) ==
        std::end(kVerifyFamilies))
      throw ConfigError("skip: unknown check family '" + name + "'");
  }
  if (!(opt.ft_tol > 0.0) || !(opt.alg_tol > 0.0))
    throw ConfigError("tolerances must be > 0");
  VerifyReport report;
  if (!opt.skip.count("invariants")) invariant_checks(opt, report.checks);
  if (!opt.skip.count("audit")) audit_checks(opt, report.checks);
  if (!opt.skip.count("oracle")) oracle_checks(opt, report.checks);
  return report;
}

}  // namespace squeezelab
