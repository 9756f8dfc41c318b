#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lora/phy.hpp"
#include "lora/quadrature.hpp"

namespace lora {

/// A full scenario: network parameters plus run controls. Defaults
/// reproduce the reference setup (R = 12 km, eta = 2.7, p0 = 1%,
/// P = 19 dBm, NF = 6 dB, BW = 125 kHz, 868 MHz, boundaries l_i = 2i,
/// 1e5 trials).
struct ScenarioFile {
  NetworkConfig cfg;
  QuadratureSettings quad;
  long trials = 100000;
  std::uint64_t seed = 1;

  /// Explicit evaluation grid; when empty the grid is generated from
  /// d1_min/d1_max/d1_points (d1_max <= 0 means the disk radius).
  std::vector<double> d1_grid;
  double d1_min = 0.1;
  double d1_max = 0.0;
  int d1_points = 60;

  std::vector<double> nbar_sweep;
  std::string output_path;  ///< empty: stdout

  bool disk = false;     ///< simulate: disk-averaged instead of per-distance
  bool with_mc = false;  ///< sweep: add Monte Carlo columns
  int threads = 0;       ///< 0: hardware concurrency
};

/// Applies one key/value pair (config-file line or command-line override).
/// Throws std::invalid_argument for unknown keys or unparsable values.
void apply_key(ScenarioFile& sc, const std::string& key, const std::string& value);

/// Loads a flat key = value file with '#' comments over the defaults.
/// Throws std::invalid_argument on parse errors, std::ios_base::failure if
/// the file cannot be read.
ScenarioFile load_scenario(const std::string& path);

/// The evaluation grid: the explicit list verbatim if given, otherwise
/// d1_points uniform points on [d1_min, d1_max]. Generated points landing
/// exactly on an annulus boundary are nudged 1 m outward (same SF under the
/// half-open convention, unambiguous under any).
std::vector<double> d1_grid(const ScenarioFile& sc);

/// Sweep grid; defaults to 1 and 100..2000 step 100 when unset.
std::vector<double> nbar_grid(const ScenarioFile& sc);

/// Locale-independent formatting with 9 significant digits (%.9g shape),
/// so identical scenarios produce byte-identical files.
std::string format_sig9(double x);

}  // namespace lora
