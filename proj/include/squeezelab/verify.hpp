// Verification suite: algebraic invariants of the closed forms, the
// printed-form audit and the quadrature oracle, collected into one report.

#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "squeezelab/numeric_oracle.hpp"

namespace squeezelab {

struct VerifyOptions {
  double ft_tol = 1e-6;    // closed form vs Fourier transform of correlation
  double alg_tol = 1e-12;  // exact identities
  std::uint64_t seed = 20000626;
  std::size_t random_samples = 10000;
  std::set<std::string> skip;  // any of "invariants", "audit", "oracle"
};

inline constexpr std::string_view kVerifyFamilies[] = {"invariants", "audit", "oracle"};

struct CheckResult {
  std::string name;
  std::string family;
  std::string status;  // pass, fail, documented-discrepancy
  double max_abs_err = 0.0;
  double tolerance = 0.0;
  nlohmann::json detail = nlohmann::json::object();

  bool ok() const { return status != "fail"; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 3; }
  nlohmann::json to_json() const;
};

// The oracle grid of the acceptance suite: ψ ∈ {0.5,1,2,5}, Ω ∈ {0,0.5,1,2,5},
// four phases, R ∈ {0,0.3,0.5,1}.
OracleGrid default_oracle_grid();
PaperFormGrid default_paper_form_grid();

nlohmann::json to_json(const AuditLocation& where);
nlohmann::json to_json(const AuditReport& report);
// Audit report document: grid spec, overall max error and location,
// per-family pass flags.
nlohmann::json audit_to_json(const PaperFormGrid& grid, const std::vector<AuditReport>& reports);

VerifyReport run_verify(const VerifyOptions& options = {});

}  // namespace squeezelab
