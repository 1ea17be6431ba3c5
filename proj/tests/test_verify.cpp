#include <doctest.h>

#include <algorithm>

#include "squeezelab/errors.hpp"
#include "squeezelab/verify.hpp"

using namespace squeezelab;

namespace {

const CheckResult* find(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("default verification is green") {
  const VerifyReport report = run_verify();
  CHECK(report.passed());
  CHECK(report.exit_code() == 0);
  for (const auto& c : report.checks) {
    INFO(c.name);
    CHECK(c.ok());
    CHECK((c.status == "pass" || c.status == "documented-discrepancy"));
  }

  for (const char* name : {"minimum-uncertainty-product", "vacuum-mixing", "excess-noise",
                           "kernel-self-test", "ft-input", "ft-out1", "ft-out2", "ft-photon1",
                           "ft-photon2"}) {
    INFO(std::string(name));
    const CheckResult* c = find(report, name);
    REQUIRE(c != nullptr);
    CHECK(c->status == "pass");
    CHECK(c->max_abs_err <= c->tolerance);
  }

  const CheckResult* pinned = find(report, "out1-pinned-deviation");
  REQUIRE(pinned != nullptr);
  CHECK(pinned->status == "documented-discrepancy");
  CHECK(pinned->max_abs_err == doctest::Approx(0.25).epsilon(1e-12));

  const CheckResult* total = find(report, "total-photon-closed-vs-numeric");
  REQUIRE(total != nullptr);
  CHECK(total->status == "documented-discrepancy");

  const auto j = report.to_json();
  CHECK(j.contains("checks"));
  CHECK(j.at("checks").size() == report.checks.size());
  for (const auto& c : j.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("family"));
    CHECK(c.contains("status"));
    CHECK(c.contains("max_abs_err"));
    CHECK(c.contains("tolerance"));
  }
}

TEST_CASE("impossible tolerance fails with exit code 3") {
  VerifyOptions o;
  o.ft_tol = 1e-14;
  o.skip = {"invariants", "audit"};
  const VerifyReport report = run_verify(o);
  CHECK_FALSE(report.passed());
  CHECK(report.exit_code() == 3);
}

TEST_CASE("skipping families") {
  VerifyOptions o;
  o.skip = {"oracle"};
  const VerifyReport report = run_verify(o);
  CHECK(report.passed());
  CHECK(std::none_of(report.checks.begin(), report.checks.end(),
                     [](const CheckResult& c) { return c.family == "oracle"; }));
  CHECK(std::any_of(report.checks.begin(), report.checks.end(),
                    [](const CheckResult& c) { return c.family == "invariants"; }));

  o.skip = {"invariant"};
  CHECK_THROWS_AS(run_verify(o), ConfigError);
}

TEST_CASE("seed changes samples, not the verdict") {
  VerifyOptions a, b;
  a.skip = b.skip = {"audit", "oracle"};
  a.random_samples = b.random_samples = 2000;
  b.seed = 1;
  CHECK(run_verify(a).to_json() == run_verify(a).to_json());
  CHECK(run_verify(b).passed());
}

TEST_CASE("audit json") {
  const auto grid = default_paper_form_grid();
  const auto j = audit_to_json(grid, audit_paper_forms(grid));
  CHECK(j.contains("grid"));
  CHECK(j.contains("families"));
  CHECK(j.at("families").size() == 4);
}
