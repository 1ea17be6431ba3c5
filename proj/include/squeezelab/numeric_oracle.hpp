// Brute-force verification layer. Spectra are recomputed by numerically
// Fourier-transforming the correlation functions; photon totals by
// integrating the windowed means over the pulse. Nothing here calls the
// closed-form spectra except the audit routines that compare against them.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "squeezelab/photon_statistics.hpp"
#include "squeezelab/quadrature_noise.hpp"

namespace squeezelab {

enum class QuadratureRule { AdaptiveSimpson, GaussLegendreComposite };

struct QuadratureScheme {
  double truncation = 50.0;  // half-range of the τ integral, in units of τ_r
  double tol = 1e-9;         // absolute tolerance per integral
  QuadratureRule rule = QuadratureRule::AdaptiveSimpson;

  // Throws DomainError unless truncation >= 20 and tol in (0, 1e-3].
  void validate() const;
};

// ∫_a^b f with absolute tolerance scheme.tol. The interval is first cut
// into panels no wider than `panel_width` (pass ~a quarter period for
// oscillatory integrands). Throws AccuracyError with the residual estimate
// when the rule cannot reach the tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width, const QuadratureScheme& scheme);

enum class KernelKind { H, G, Delta };

// ∫kernel(τ) e^{iωτ} dτ, dimensionless (independent of τ_r). Analytic
// values: 2L(Ω) for h, 4L²(Ω) for g, 1 for δ.
double ft_kernel(KernelKind kernel, double omega, const QuadratureScheme& scheme = {});

// δ-weight plus the numerical transform of the smooth correlation part.
NoiseSpectrumPoint spectrum_via_ft(QuadratureSelector sel, double omega, double t,
                                   const PhaseMode& phase, const MediumParams& medium,
                                   const PulseState& pulse,
                                   const std::optional<BeamSplitter>& splitter,
                                   const QuadratureScheme& scheme = {},
                                   CorrelationForm form = CorrelationForm::Corrected);

// Windowed photon-number spectrum from the photon correlation function of a
// symmetric splitter: N̄ + (𝒯/τ_p)·∫R_N,smooth(τ) e^{iωτ} dτ.
double photon_spectrum_via_ft(Port port, double omega, double t,
                              const MeasurementWindow& window, const MediumParams& medium,
                              const PulseState& pulse, const QuadratureScheme& scheme = {});

// N̄₁/N̄ by direct time integration of n̄₀(t)[1 − 2√(RT) sin(ψ(t) + Δφ)] over
// |t| ≤ 8τ_p with ψ(t) = ψ₀ e^{−t²/2τ_p²}. Gaussian pulse only.
double total_photon_numeric(double psi0, double delta_phi, const BeamSplitter& splitter,
                            const PulseState& pulse, const QuadratureScheme& scheme = {});

// --- audits ---------------------------------------------------------------

enum class Expectation { Agree, Discrepancy };

struct AuditLocation {
  double omega = 0.0;
  double psi = 0.0;
  double phase = 0.0;  // total phase Φ
  double reflectance = 0.0;
  double omega0 = 0.0;
};

struct AuditReport {
  std::string family;
  Expectation expectation = Expectation::Agree;
  double tolerance = 0.0;
  double max_abs_err = 0.0;
  AuditLocation argmax;
  std::size_t points = 0;
  bool pass = true;  // max_abs_err <= tolerance

  // "pass", "fail" or "documented-discrepancy". A family expected to
  // disagree fails when the disagreement vanishes.
  std::string status() const;
  bool ok() const { return expectation == Expectation::Agree ? pass : !pass; }
};

struct PaperFormGrid {
  std::vector<double> psi;
  std::vector<double> omega;
  std::vector<double> omega0{0.0, 1.0};
  std::vector<double> reflectance;
};

// |paper_optimal_forms − quad_spectrum at the optimal phase| over the grid.
// Families: input-optimal (Ω = Ω₀ only), input-general, out1, out2.
std::vector<AuditReport> audit_paper_forms(const PaperFormGrid& grid, double tolerance = 1e-12);

struct OracleGrid {
  std::vector<double> psi;
  std::vector<double> omega;
  std::vector<PhaseMode> phases;  // φ₁ for quadratures; Δφ for photon families
  std::vector<double> reflectance;
  double window_ratio = 0.1;
};

// |closed form − FT of correlation| per family: input, out1, out2 (both
// axes each, all reflectances) and photon1, photon2 (symmetric splitter).
std::vector<AuditReport> audit_oracle(const OracleGrid& grid, double tolerance = 1e-6,
                                      const QuadratureScheme& scheme = {});

// Transforms of the output-port correlation functions as printed (𝒴₁, 𝒳₂)
// against the printed spectra. Expected to disagree.
AuditReport audit_printed_correlations(const OracleGrid& grid, double tolerance = 1e-6,
                                       const QuadratureScheme& scheme = {});

}  // namespace squeezelab
