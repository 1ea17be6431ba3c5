#include <doctest.h>

#include <cmath>
#include <random>

#include "squeezelab/errors.hpp"
#include "squeezelab/quadrature_noise.hpp"

using namespace squeezelab;

namespace {

const QuadratureSelector kInX{Axis::X, Port::Input};
const QuadratureSelector kInY{Axis::Y, Port::Input};
const QuadratureSelector kOut1X{Axis::X, Port::Out1};
const QuadratureSelector kOut1Y{Axis::Y, Port::Out1};
const QuadratureSelector kOut2X{Axis::X, Port::Out2};
const QuadratureSelector kOut2Y{Axis::Y, Port::Out2};

std::optional<BeamSplitter> splitter(double r) { return BeamSplitter(r); }

// Spectra written term by term exactly as printed (no rearrangement).
double printed_spectrum(QuadratureSelector sel, double omega, double psi, double phase,
                        double r) {
  const double a = psi / (1.0 + omega * omega);
  const double s2 = std::sin(2.0 * phase);
  const double ss = std::pow(std::sin(phase), 2);
  const double cc = std::pow(std::cos(phase), 2);
  const double t = 1.0 - r;
  if (sel.port == Port::Input)
    return sel.axis == Axis::X ? 0.25 * (1 - 2 * a * s2 + 4 * a * a * ss)
                               : 0.25 * (1 + 2 * a * s2 + 4 * a * a * cc);
  if (sel.port == Port::Out1)
    return sel.axis == Axis::X ? 0.25 * (1 + 2 * r * a * s2 + 4 * r * a * a * cc)
                               : 0.25 * (1 - 2 * r * a * s2 + 4 * r * a * a * ss);
  return sel.axis == Axis::X ? 0.25 * (1 - 2 * t * a * s2 + 4 * t * a * a * ss)
                             : 0.25 * (1 + 2 * t * a * s2 + 4 * t * a * a * cc);
}

// General-frequency expansion around Ω₀ with the square root taken at Ω₀
// (what substituting the optimal phase actually gives).
double expansion_at_omega0_root(Axis axis, double omega, double omega0, double psi) {
  const double l = 1.0 / (1.0 + omega * omega);
  const double l0 = 1.0 / (1.0 + omega0 * omega0);
  const double a0 = psi * l0;
  const double root = std::sqrt(1.0 + a0 * a0);
  const double sign = axis == Axis::X ? -1.0 : 1.0;
  const double base = 0.25 * std::pow(root + sign * a0, 2);
  return base + 0.5 * psi * (l - l0) *
                    ((l + l0) * psi + sign * (1.0 + (l + l0) * l0 * psi * psi) / root);
}

struct Draw {
  double psi, phase, omega, r;
};

template <typename F>
void for_random(F&& f, int n = 2000) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    f(Draw{10.0 * u(rng), kPi * (2.0 * u(rng) - 1.0), 10.0 * u(rng), u(rng)});
}

}  // namespace

TEST_CASE("mean quadratures") {
  const MediumParams linear{0.0, 1.0};
  PulseState pulse;
  pulse.n0_peak = std::sqrt(2.0);  // |α₀(0)| = 1
  pulse.tau_p = 10.0;

  const auto in = mean_quadratures(Port::Input, 0.0, linear, pulse);
  CHECK(in.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(in.y == doctest::Approx(0.0));

  const auto out1 = mean_quadratures(Port::Out1, 0.0, linear, pulse, splitter(0.5));
  CHECK(out1.x == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(out1.y == doctest::Approx(kInvSqrt2).epsilon(1e-15));

  CHECK_THROWS_AS(mean_quadratures(Port::Out2, 0.0, linear, pulse), ConfigError);

  SUBCASE("output norm") {
    const MediumParams medium{0.05, 1.0};
    for_random([&](const Draw& d) {
      PulseState p = with_peak_phase(pulse, medium, d.psi);
      p.phi1 = d.phase;
      p.phi2 = d.omega;
      const auto bs = splitter(d.r);
      const auto a = mean_quadratures(Port::Out1, 1.0, medium, p, bs);
      const auto b = mean_quadratures(Port::Out2, 1.0, medium, p, bs);
      const double amp2 = mean_photon_rate(1.0, p) * std::exp(-medium.gamma * nonlinear_phase(1.0, medium, p));
      CHECK(a.x * a.x + a.y * a.y + b.x * b.x + b.y * b.y ==
            doctest::Approx(2.0 * amp2).epsilon(1e-12));
    });
  }
}

TEST_CASE("quadrature correlation") {
  const MediumParams unit{0.01, 1.0};
  const auto at_zero = quad_correlation_at(kInX, 0.3, 2.0, 0.0, unit, {});
  CHECK(at_zero.smooth == doctest::Approx(0.0));
  CHECK(at_zero.delta_weight == 0.25);

  CHECK(quad_correlation_at(kInX, 0.0, 1.0, kPi / 4.0, unit, {}).smooth ==
        doctest::Approx(-0.125).epsilon(1e-15));

  for_random([&](const Draw& d) {
    const double tau = d.omega - 5.0;
    CHECK(quad_correlation_at(kOut1X, tau, d.psi, d.phase, unit, splitter(1.0)).smooth ==
          doctest::Approx(quad_correlation_at(kInY, tau, d.psi, d.phase, unit, {}).smooth)
              .epsilon(1e-13));
    CHECK(quad_correlation_at(kOut2X, tau, d.psi, d.phase, unit, splitter(d.r)).smooth ==
          doctest::Approx((1.0 - d.r) * quad_correlation_at(kInX, tau, d.psi, d.phase, unit, {}).smooth)
              .epsilon(1e-12));
  });

  SUBCASE("printed output forms differ only in the g-term") {
    const double psi = 1.5, phase = 0.4, tau = 0.2;
    const auto bs = splitter(0.5);
    const auto fixed = quad_correlation_at(kOut1Y, tau, psi, phase, unit, bs);
    const auto printed =
        quad_correlation_at(kOut1Y, tau, psi, phase, unit, bs, CorrelationForm::AsPrinted);
    const double g_term = 0.25 * 0.5 * psi * psi * kernel_g(tau, unit);
    CHECK(printed.smooth - fixed.smooth ==
          doctest::Approx(g_term * std::cos(2.0 * phase)).epsilon(1e-12));
    CHECK(quad_correlation_at(kOut1X, tau, psi, phase, unit, bs, CorrelationForm::AsPrinted).smooth ==
          quad_correlation_at(kOut1X, tau, psi, phase, unit, bs).smooth);
  }
}

TEST_CASE("quadrature spectra: examples") {
  for (QuadratureSelector sel : {kInX, kInY, kOut1X, kOut1Y, kOut2X, kOut2Y})
    CHECK(quad_spectrum_at(sel, 0.7, 0.0, 1.3, splitter(0.4)) == doctest::Approx(0.25).epsilon(1e-15));

  // ψL(Ω₀) = 1 at the optimal phase.
  const MediumParams medium{0.01, 1.0};
  PulseState pulse;
  pulse.tau_p = 100.0;
  pulse = with_peak_phase(pulse, medium, 2.0);
  const PhaseMode opt = OptimalAt{1.0};
  const double sx = quad_spectrum(kInX, 1.0, 0.0, opt, medium, pulse).value;
  const double sy = quad_spectrum(kInY, 1.0, 0.0, opt, medium, pulse).value;
  CHECK(sx == doctest::Approx(0.0428932188134525).epsilon(1e-13));
  CHECK(sy == doctest::Approx(1.4571067811865475).epsilon(1e-13));
  CHECK(sx * sy == doctest::Approx(1.0 / 16.0).epsilon(1e-14));

  PulseState one = with_peak_phase(pulse, medium, 1.0);
  CHECK(quad_spectrum(kOut1Y, 0.0, 0.0, OptimalAt{0.0}, medium, one, splitter(0.5)).value ==
        doctest::Approx(0.1464466094067262).epsilon(1e-13));

  // Independent high-precision values.
  CHECK(quad_spectrum_at(kOut2Y, 0.5, 2.0, 0.7, splitter(0.3)) ==
        doctest::Approx(1.85014240883215358).epsilon(1e-14));
  CHECK(quad_spectrum_at(kInX, 0.5, 2.0, 0.7, {}) ==
        doctest::Approx(0.524082273096923454).epsilon(1e-14));

  CHECK_THROWS_AS(quad_spectrum_at(kOut1X, 0.0, 1.0, 0.0, {}), ConfigError);
  CHECK_THROWS_AS(quad_spectrum_at(kInX, std::nan(""), 1.0, 0.0, {}), DomainError);
}

TEST_CASE("quadrature spectra: invariants") {
  for_random([&](const Draw& d) {
    const auto bs = splitter(d.r);
    const double r = d.r, t = 1.0 - d.r;
    const auto S = [&](QuadratureSelector sel) { return quad_spectrum_at(sel, d.omega, d.psi, d.phase, bs); };

    // Rearranged evaluation equals the printed polynomial.
    for (QuadratureSelector sel : {kInX, kInY, kOut1X, kOut1Y, kOut2X, kOut2Y}) {
      const double ref = printed_spectrum(sel, d.omega, d.psi, d.phase, r);
      CHECK(std::abs(S(sel) - ref) <= 1e-12 * std::max(1.0, ref));
      CHECK(S(sel) >= 0.0);
    }

    const double dx = S(kInX) - 0.25, dy = S(kInY) - 0.25;
    CHECK(std::abs(S(kOut1Y) - 0.25 - r * dx) <= 1e-12);
    CHECK(std::abs(S(kOut1X) - 0.25 - r * dy) <= 1e-12);
    CHECK(std::abs(S(kOut2X) - 0.25 - t * dx) <= 1e-12);
    CHECK(std::abs(S(kOut2Y) - 0.25 - t * dy) <= 1e-12);

    const double a2 = std::pow(d.psi * lorentzian(d.omega), 2);
    CHECK(std::abs(S(kInX) + S(kInY) - 0.5 - a2) <= 1e-12);
    CHECK(std::abs(S(kOut1X) + S(kOut1Y) - 0.5 - r * a2) <= 1e-12);
    CHECK(std::abs(S(kOut2X) + S(kOut2Y) - 0.5 - t * a2) <= 1e-12);

    const auto full = splitter(1.0);
    CHECK(quad_spectrum_at(kOut1X, d.omega, d.psi, d.phase, full) == doctest::Approx(S(kInY)).epsilon(1e-14));
    CHECK(quad_spectrum_at(kOut1Y, d.omega, d.psi, d.phase, full) == doctest::Approx(S(kInX)).epsilon(1e-14));
  });

  SUBCASE("minimum uncertainty at the optimal phase") {
    for (double omega0 : {0.0, 1.0, 2.5}) {
      for (double psi = 0.0; psi <= 10.0; psi += 0.1) {
        const double phase = psi + optimal_phase(psi, omega0);
        const double p = quad_spectrum_at(kInX, omega0, psi, phase, {}) *
                         quad_spectrum_at(kInY, omega0, psi, phase, {});
        CHECK(std::abs(p - 1.0 / 16.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("printed optimal-phase forms") {
  const double x_opt = 0.0428932188134525;
  CHECK(paper_optimal_forms(kInX, 1.0, 1.0, 2.0).value == doctest::Approx(x_opt).epsilon(1e-13));
  CHECK(paper_optimal_forms(kInY, 0.0, 0.0, 1.0).value ==
        doctest::Approx(1.4571067811865475).epsilon(1e-13));

  // Output 1 at R = 1: printed form goes negative, substitution does not.
  const double printed = paper_optimal_forms(kOut1Y, 0.0, 0.0, 1.0, splitter(1.0)).value;
  CHECK(printed == doctest::Approx(-0.2071067811865475).epsilon(1e-13));
  const double substituted =
      quad_spectrum_at(kOut1Y, 0.0, 1.0, 1.0 + optimal_phase(1.0, 0.0), splitter(1.0));
  CHECK(substituted == doctest::Approx(x_opt).epsilon(1e-13));
  CHECK(std::abs(printed - substituted) == doctest::Approx(0.25).epsilon(1e-13));

  for (QuadratureSelector sel : {kInX, kInY, kOut1X, kOut1Y, kOut2X, kOut2Y})
    CHECK(paper_optimal_forms(sel, 0.8, 0.3, 0.0, splitter(0.6)).value ==
          doctest::Approx(0.25).epsilon(1e-15));

  SUBCASE("agreement set of the output forms at Omega0") {
    // printed − substituted = −R(3R − 2)(ψL₀)²/4 at output 1.
    for (double r : {0.0, 0.2, 0.5, 2.0 / 3.0, 0.9, 1.0}) {
      for (double psi : {0.5, 1.0, 3.0}) {
        const double phase = psi + optimal_phase(psi, 0.0);
        const double dev = paper_optimal_forms(kOut1Y, 0.0, 0.0, psi, splitter(r)).value -
                           quad_spectrum_at(kOut1Y, 0.0, psi, phase, splitter(r));
        CHECK(dev == doctest::Approx(-r * (3.0 * r - 2.0) * psi * psi / 4.0).epsilon(1e-12));
        const double dev2 = paper_optimal_forms(kOut2X, 0.0, 0.0, psi, splitter(1.0 - r)).value -
                            quad_spectrum_at(kOut2X, 0.0, psi, phase, splitter(1.0 - r));
        CHECK(dev2 == doctest::Approx(dev).epsilon(1e-12));
      }
    }
  }

  SUBCASE("input expansion differs from substitution only through the root argument") {
    for (double psi : {0.5, 2.0, 6.0}) {
      for (double omega0 : {0.0, 1.0}) {
        const double phase = psi + optimal_phase(psi, omega0);
        for (double omega : {0.0, 0.5, 1.0, 2.0, 3.0}) {
          for (Axis axis : {Axis::X, Axis::Y}) {
            const QuadratureSelector sel{axis, Port::Input};
            const double sub = quad_spectrum_at(sel, omega, psi, phase, {});
            CHECK(expansion_at_omega0_root(axis, omega, omega0, psi) ==
                  doctest::Approx(sub).epsilon(1e-12));
            if (omega != omega0)
              CHECK(std::abs(paper_optimal_forms(sel, omega, omega0, psi).value - sub) > 1e-6);
          }
        }
      }
    }
  }
}
