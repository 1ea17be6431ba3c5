#include <doctest.h>

#include <cmath>

#include "squeezelab/errors.hpp"
#include "squeezelab/numeric_oracle.hpp"

using namespace squeezelab;

namespace {

const MediumParams kMedium{0.01, 1.0};

PulseState pulse_at(double psi0, double phi1 = 0.0) {
  PulseState p;
  p.tau_p = 100.0;
  p.phi1 = phi1;
  return with_peak_phase(p, kMedium, psi0);
}

QuadratureScheme gauss() {
  QuadratureScheme s;
  s.rule = QuadratureRule::GaussLegendreComposite;
  return s;
}

const AuditReport& family(const std::vector<AuditReport>& reports, const std::string& name) {
  for (const auto& r : reports)
    if (r.family == name) return r;
  FAIL("missing audit family " << name);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("scheme validation") {
  QuadratureScheme s;
  CHECK_NOTHROW(s.validate());
  s.truncation = 19.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.tol = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.tol = 1e-2;
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("integrate") {
  for (const QuadratureScheme& s : {QuadratureScheme{}, gauss()}) {
    CHECK(integrate([](double x) { return std::cos(x); }, 0.0, kPi / 2.0, 1.0, s) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 40.0, 1.0, s) ==
          doctest::Approx(1.0 - std::exp(-40.0)).epsilon(1e-10));
    CHECK(integrate([](double x) { return x * x; }, -1.0, 2.0, 0.7, s) ==
          doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("kernel transforms") {
  for (const QuadratureScheme& s : {QuadratureScheme{}, gauss()}) {
    for (double omega : {0.0, 0.3, 1.0, 2.0, 5.0, 10.0}) {
      const double l = lorentzian(omega);
      CHECK(std::abs(ft_kernel(KernelKind::H, omega, s) - 2.0 * l) <= 1e-9);
      CHECK(std::abs(ft_kernel(KernelKind::G, omega, s) - 4.0 * l * l) <= 1e-9);
      CHECK(ft_kernel(KernelKind::Delta, omega, s) == 1.0);
    }
  }
  double prev = ft_kernel(KernelKind::H, 10.0);
  for (double omega : {30.0, 100.0, 300.0}) {
    const double v = ft_kernel(KernelKind::H, omega);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-4);

  QuadratureScheme short_range;
  short_range.truncation = 20.0;  // tail e^{−20}·44 ≈ 9e−8 > 1e−9
  CHECK_THROWS_AS(ft_kernel(KernelKind::G, 0.0, short_range), AccuracyError);
  short_range.tol = 1e-6;
  CHECK_NOTHROW(ft_kernel(KernelKind::G, 0.0, short_range));
}

TEST_CASE("spectrum via transform") {
  const PulseState p = pulse_at(2.0);
  const auto opt = OptimalAt{1.0};
  CHECK(spectrum_via_ft({Axis::X, Port::Input}, 1.0, 0.0, opt, kMedium, p, {}).value ==
        doctest::Approx(0.0428932188134525).epsilon(1e-9));

  for (Port port : {Port::Input, Port::Out1, Port::Out2}) {
    for (Axis axis : {Axis::X, Axis::Y}) {
      const QuadratureSelector sel{axis, port};
      const std::optional<BeamSplitter> bs =
          port == Port::Input ? std::nullopt : std::optional<BeamSplitter>(BeamSplitter(0.3));
      for (double omega : {0.0, 0.5, 2.0}) {
        const PhaseMode phase = ExplicitPhase{0.7};
        const double closed = quad_spectrum(sel, omega, 0.0, phase, kMedium, p, bs).value;
        CHECK(std::abs(spectrum_via_ft(sel, omega, 0.0, phase, kMedium, p, bs).value - closed) <= 1e-8);
        CHECK(std::abs(spectrum_via_ft(sel, omega, 0.0, phase, kMedium, p, bs, gauss()).value - closed) <= 1e-8);
      }
    }
  }

  SUBCASE("refining the scheme never worsens agreement") {
    const QuadratureSelector sel{Axis::Y, Port::Out2};
    const BeamSplitter bs(0.3);
    const PhaseMode phase = ExplicitPhase{0.7};
    QuadratureScheme coarse, fine;
    coarse.tol = 1e-8;
    fine.tol = 5e-9;
    for (double omega : {0.0, 0.5, 1.0, 3.0}) {
      const double closed = quad_spectrum(sel, omega, 0.0, phase, kMedium, p, bs).value;
      const double e1 = std::abs(spectrum_via_ft(sel, omega, 0.0, phase, kMedium, p, bs, coarse).value - closed);
      const double e2 = std::abs(spectrum_via_ft(sel, omega, 0.0, phase, kMedium, p, bs, fine).value - closed);
      CHECK(e2 <= e1 + 1e-12);
      CHECK(e1 <= 1e-8);
    }
  }

  SUBCASE("printed output correlation forms do not reproduce the spectra") {
    const QuadratureSelector sel{Axis::Y, Port::Out1};
    const BeamSplitter bs(0.5);
    const double closed = quad_spectrum(sel, 0.5, 0.0, ExplicitPhase{0.0}, kMedium, p, bs).value;
    const double printed = spectrum_via_ft(sel, 0.5, 0.0, ExplicitPhase{0.0}, kMedium, p, bs, {},
                                           CorrelationForm::AsPrinted).value;
    CHECK(std::abs(printed - closed) > 1e-3);
  }
}

TEST_CASE("photon spectrum via transform") {
  const PulseState p = pulse_at(3.5, kPi / 2.0);
  const auto window = MeasurementWindow::from_ratio(0.1, p.tau_p);
  for (Port port : {Port::Out1, Port::Out2}) {
    for (double omega : {0.0, 1.0, 3.0}) {
      const double closed = photon_spectrum(port, omega, 0.0, window, kMedium, p);
      const double ft = photon_spectrum_via_ft(port, omega, 0.0, window, kMedium, p);
      CHECK(std::abs(ft - closed) <= 1e-6 * std::max(1.0, mean_photon_rate(0.0, p)));
    }
  }
}

TEST_CASE("total photon number by integration") {
  const BeamSplitter half(0.5);
  const PulseState p = pulse_at(0.0);
  CHECK(total_photon_numeric(0.1, 0.0, half, p) == doctest::Approx(0.929372621201002).epsilon(1e-8));
  CHECK(total_photon_numeric(0.1, kPi / 6.0, half, p) == doctest::Approx(0.440277339997779).epsilon(1e-8));
  CHECK(total_photon_numeric(0.01, 0.0, half, p) == doctest::Approx(0.992929015521128).epsilon(1e-8));
  CHECK(total_photon_numeric(5.0, 0.3, BeamSplitter(0.2), p) ==
        doctest::Approx(1.30979876857508).epsilon(1e-8));
  CHECK(total_photon_numeric(0.0, 0.4, half, p) == doctest::Approx(1.0 - std::sin(0.4)).epsilon(1e-10));

  // The sinc closed form does not describe a Gaussian pulse; the gap stays
  // visible even for a tiny phase.
  CHECK(std::abs(total_photon_numeric(0.1, 0.0, half, p) - total_photon_out1(0.1, 0.0, half)) > 0.04);

  PulseState flat = p;
  flat.envelope = Envelope::Flat;
  CHECK_THROWS_AS(total_photon_numeric(1.0, 0.0, half, flat), DomainError);
}

TEST_CASE("audit of printed optimal-phase forms") {
  PaperFormGrid grid;
  grid.psi = {0.0, 0.5, 1.0, 3.0};
  grid.omega = {0.0, 0.5, 1.0, 2.0};
  grid.reflectance = {0.0, 0.5, 1.0};
  const auto reports = audit_paper_forms(grid);

  const auto& optimal = family(reports, "input-optimal");
  CHECK(optimal.expectation == Expectation::Agree);
  CHECK(optimal.max_abs_err <= 1e-12);
  CHECK(optimal.status() == "pass");

  const auto& out1 = family(reports, "out1");
  CHECK(out1.expectation == Expectation::Discrepancy);
  CHECK(out1.status() == "documented-discrepancy");
  CHECK(out1.max_abs_err > 0.1);
  CHECK(family(reports, "input-general").status() == "documented-discrepancy");

  SUBCASE("agreement boundaries") {
    PaperFormGrid r0 = grid;
    r0.reflectance = {0.0};
    CHECK(family(audit_paper_forms(r0), "out1").max_abs_err <= 1e-12);
    PaperFormGrid r1 = grid;
    r1.reflectance = {1.0};
    CHECK(family(audit_paper_forms(r1), "out2").max_abs_err <= 1e-12);
  }

  SUBCASE("pinned deviation") {
    PaperFormGrid pin;
    pin.psi = {1.0};
    pin.omega = {0.0};
    pin.omega0 = {0.0};
    pin.reflectance = {1.0};
    const auto& r = family(audit_paper_forms(pin), "out1");
    CHECK(r.max_abs_err == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.argmax.psi == 1.0);
    CHECK(r.argmax.reflectance == 1.0);
  }
}

TEST_CASE("oracle audit") {
  OracleGrid grid;
  grid.psi = {0.5, 2.0};
  grid.omega = {0.0, 1.0};
  grid.phases = {ExplicitPhase{0.2}, OptimalAt{0.0}};
  grid.reflectance = {0.0, 0.5, 1.0};
  const auto reports = audit_oracle(grid);
  CHECK(reports.size() >= 5);
  for (const auto& r : reports) {
    INFO(r.family);
    CHECK(r.status() == "pass");
    CHECK(r.points > 0);
    CHECK(r.max_abs_err <= 1e-6);
  }
  const auto printed = audit_printed_correlations(grid);
  CHECK(printed.status() == "documented-discrepancy");
  CHECK(printed.ok());

  // A tolerance below the quadrature error turns the families red.
  bool any_fail = false;
  for (const auto& r : audit_oracle(grid, 1e-14)) any_fail |= r.status() == "fail";
  CHECK(any_fail);
}
