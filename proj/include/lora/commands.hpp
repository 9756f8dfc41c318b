#pragma once

#include <iosfwd>
#include <string>

#include "lora/scenario.hpp"

namespace lora {

/// Analytic curves over the d1 grid: d1_km,h1,q1,q1_approx,joint. A row
/// whose quadrature fails gets ERROR markers in the affected fields and the
/// command returns 2; otherwise 0.
int run_analyze(const ScenarioFile& sc, std::ostream& csv);

/// Monte Carlo estimates: d1_km,metric,estimate,ci95,trials,seed with one
/// row per metric (h1, q1, joint). Per-distance on the d1 grid, or
/// disk-averaged rows labelled "disk" when sc.disk is set.
int run_simulate(const ScenarioFile& sc, std::ostream& csv);

/// Coverage vs mean device count: nbar,coverage_h1,coverage_q1,
/// coverage_joint plus Monte Carlo columns when sc.with_mc is set. Writes
/// the scalability crossover (where coverage[Q1] first falls below
/// coverage[H1], bisected to +/-0.5 devices) to `summary`.
int run_sweep(const ScenarioFile& sc, std::ostream& csv, std::ostream& summary);

/// Human-readable SF table and derived scenario quantities.
int run_table(const ScenarioFile& sc, std::ostream& out);

/// Runs a command by name, routing CSV output to sc.output_path (stdout if
/// empty) and any summary to stdout/stderr. Throws std::ios_base::failure
/// when the output cannot be opened or written.
int dispatch(const std::string& command, const ScenarioFile& sc);

}  // namespace lora
