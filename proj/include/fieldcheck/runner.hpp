#pragma once

// Scenario execution: each run_* function performs one subcommand's work
// and returns a machine-readable JSON report plus, where meaningful, a
// plain-text summary and a CSV table. Reports carry no timestamps and all
// reductions are order-fixed, so identical scenarios produce identical
// bytes.

#include <string>

#include "fieldcheck/scenario.hpp"
#include "json.hpp"

namespace fieldcheck {

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 condition failure
  nlohmann::ordered_json report;
  std::string text;  // human summary (verify, flux, charge, convergence)
  std::string csv;   // tabular output (sample, flux, charge)
};

// Boundary-condition verification along every ladder direction, plus any
// configured flux and Gauss-charge evaluations. exit_code 0 iff every
// condition passes.
RunResult run_verify(const Scenario& s);

// Solution samples along the ladder as CSV (scenario sample.what selects
// potential | gradient | field | stress | psi).
RunResult run_sample(const Scenario& s);

// Exact-integrand and asymptotic-amplitude fluxes on the scenario's
// (radius, u0) grid.
RunResult run_flux(const Scenario& s);

// Gauss-law charge on the scenario's (radius, time) grid; maxwell only.
RunResult run_charge(const Scenario& s);

// The scenario's primary observable at quadrature orders x1, x1.5, x2;
// flags non-convergence when the deltas stop shrinking.
RunResult run_convergence(const Scenario& s);

}  // namespace fieldcheck
